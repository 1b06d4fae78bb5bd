#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cgeom/cli.hpp"

using namespace cgeom;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run geom(std::vector<std::string> args) {
  args.insert(args.begin(), "geom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& file) {
  const char* dir = std::getenv("CGEOM_DATA_DIR");
  return std::string(dir ? dir : "data/surfaces") + "/" + file;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

/// Data rows of a CSV document (header and '#' lines dropped).
std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(split(line, ','));
  return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content = "") {
  const auto p = std::filesystem::temp_directory_path() / name;
  if (!content.empty()) std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("angles of the built-in tori") {
  struct Case {
    const char* name;
    double beta;
  };
  for (Case c : {Case{"clifford", 0.0}, Case{"generalized-clifford", 0.339837}, Case{"legendrian-torus", 1.570796}}) {
    const Run r = geom({"angles", "--surface", c.name, "--grid", "16"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("u1,u2,beta,alpha\n", 0) == 0);
    const auto table = rows(r.out);
    CHECK(table.size() == 256);
    for (const auto& row : table) {
      REQUIRE(row.size() == 4);
      CHECK(std::abs(std::stod(row[2]) - c.beta) < 1e-6);
      if (std::string(c.name) == "clifford") CHECK(row[3].empty());
    }
    CHECK(r.out.find("# beta min=") != std::string::npos);
  }
}

TEST_CASE("degrees affect display only") {
  const Run r = geom({"angles", "--surface", "legendrian-torus", "--grid", "8", "--degrees"});
  REQUIRE(r.code == 0);
  for (const auto& row : rows(r.out)) CHECK(std::abs(std::stod(row[2]) - 90.0) < 1e-9);
}

TEST_CASE("angles json") {
  const Run r = geom({"angles", "--surface", "clifford", "--grid", "8", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema"] == "1");
  CHECK(doc["cells"].size() == 64);
  CHECK(doc["cells"][0]["alpha"].is_null());
  CHECK(doc["summary"]["alpha"]["undefined"] == 64);
}

TEST_CASE("verify") {
  SUBCASE("identities that hold on the generalized clifford torus") {
    const Run r = geom({"verify", "--surface", "generalized-clifford", "--grid", "64", "--identities",
                        "gauss-beta,theta21,gauss-equation,null-kahler-w12"});
    CHECK(r.code == cli::exit_ok);
  }
  SUBCASE("the full set fails on the full Gauss and Laplacian formulas") {
    const Run r = geom({"verify", "--surface", "generalized-clifford", "--grid", "64", "--format", "json"});
    CHECK(r.code == cli::exit_tolerance);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["pass"] == false);
    for (const auto& rep : doc["reports"]) {
      const bool expected_fail = rep["identity"] == "gauss-full" || rep["identity"] == "laplacian";
      CHECK(rep["pass"] == !expected_fail);
    }
  }
  SUBCASE("skip-only reports pass but are flagged") {
    const Run r = geom({"verify", "--surface", "clifford", "--identities", "laplacian", "--format", "json"});
    CHECK(r.code == cli::exit_ok);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["reports"].size() == 1);
    CHECK(doc["reports"][0]["vacuous"] == true);
    CHECK(doc["reports"][0]["skipped"]["alpha-undefined"] == 64 * 64);
    CHECK(doc["config"]["grid"] == 64);
    CHECK(doc.contains("version"));
    CHECK(r.err.find("vacuous") != std::string::npos);
  }
  SUBCASE("csv reports") {
    const Run r = geom({"verify", "--surface", "legendrian-torus", "--grid", "32", "--identities", "gauss-full"});
    CHECK(r.code == 0);
    const auto table = rows(r.out);
    REQUIRE(table.size() == 1);
    CHECK(table[0][0] == "gauss-full");
    CHECK(table[0].back() == "false");
  }
  SUBCASE("tolerance override") {
    const Run r = geom({"verify", "--surface", "generalized-clifford", "--grid", "16", "--tolerance", "0.5"});
    CHECK(r.code == 0);
  }
}

TEST_CASE("configuration errors exit 2") {
  CHECK(geom({"verify", "--surface", "clifford", "--grid", "4"}).code == cli::exit_config);
  CHECK(geom({"verify", "--surface", "clifford", "--grid", "5000"}).code == cli::exit_config);
  CHECK(geom({"angles", "--surface", "no-such-surface"}).code == cli::exit_config);
  CHECK(geom({"verify", "--surface", "clifford", "--identities", "nope"}).code == cli::exit_config);
  CHECK(geom({"angles", "--surface", "clifford", "--format", "xml"}).code == cli::exit_config);
  CHECK(geom({"angles"}).code == cli::exit_config);
  CHECK(geom({}).code == cli::exit_config);
  CHECK(geom({"angles", "--surface", "clifford", "--n", "1"}).code == cli::exit_config);

  const auto bad = temp_file("cgeom_bad.surf", "# comment\nexp(i*u1), 0, (\n");
  const Run r = geom({"angles", "--surface", bad.string()});
  CHECK(r.code == cli::exit_config);
  CHECK(r.err.find(":2:") != std::string::npos);
}

TEST_CASE("validation failures exit 3") {
  const Run r = geom({"angles", "--surface", data("great-sphere.surf"), "--grid", "16"});
  CHECK(r.code == cli::exit_validation);
  CHECK(r.err.find("first failure at u1=0") != std::string::npos);

  const auto off = temp_file("cgeom_off.surf", "2*exp(i*u1), exp(i*u2), 0\n");
  CHECK(geom({"angles", "--surface", off.string(), "--grid", "16"}).code == cli::exit_validation);
}

TEST_CASE("export frames") {
  const Run r = geom({"export-frames", "--surface", "clifford", "--grid", "8"});
  REQUIRE(r.code == 0);
  const auto table = rows(r.out);
  CHECK(table.size() == 64);
  double worst = 0.0;
  for (const auto& row : table) {
    REQUIRE(row.size() == 7 + 5 * 3 * 2);
    std::vector<std::vector<double>> e(5);
    for (int v = 0; v < 5; ++v)
      for (int k = 0; k < 6; ++k) e[v].push_back(std::stod(row[7 + v * 6 + k]));
    for (int a = 0; a < 5; ++a) {
      for (int b = 0; b < 5; ++b) {
        double dot = 0.0;
        for (int k = 0; k < 6; ++k) dot += e[a][k] * e[b][k];
        worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
      }
    }
  }
  CHECK(worst <= 1e-9);

  const Run lt = geom({"export-frames", "--surface", "legendrian-torus", "--grid", "8"});
  for (const auto& row : rows(lt.out)) CHECK(row[3] == "true");

  const Run js = geom({"export-frames", "--surface", "generalized-clifford", "--grid", "8", "--format", "json"});
  const auto doc = nlohmann::json::parse(js.out);
  CHECK(doc["cells"].size() == 64);
  CHECK(doc["cells"][0]["darboux"].size() == 5);
}

TEST_CASE("output is byte-stable and goes to --out") {
  const auto path = temp_file("cgeom_angles.csv");
  std::filesystem::remove(path);
  const Run a = geom({"angles", "--surface", "generalized-clifford", "--grid", "16", "--out", path.string()});
  CHECK(a.code == 0);
  CHECK(a.out.empty());
  std::ifstream in(path);
  std::stringstream file;
  file << in.rdbuf();
  const Run b = geom({"angles", "--surface", "generalized-clifford", "--grid", "16"});
  CHECK(file.str() == b.out);
  CHECK(geom({"angles", "--surface", "generalized-clifford", "--grid", "16"}).out == b.out);
  CHECK(b.out.find(',') != std::string::npos);
}

TEST_CASE("surface files reproduce the built-ins") {
  for (const char* name : {"legendrian-torus", "generalized-clifford", "clifford"}) {
    const Run a = geom({"verify", "--surface", name, "--grid", "32", "--format", "json"});
    const Run b = geom({"verify", "--surface", data(std::string(name) + ".surf"), "--grid", "32", "--format", "json"});
    CHECK(a.code == b.code);
    const auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
    REQUIRE(ja["reports"].size() == jb["reports"].size());
    for (std::size_t k = 0; k < ja["reports"].size(); ++k) {
      CHECK(std::abs(ja["reports"][k]["max_abs"].get<double>() - jb["reports"][k]["max_abs"].get<double>()) < 1e-10);
      CHECK(ja["reports"][k]["skipped"] == jb["reports"][k]["skipped"]);
    }
  }
}

TEST_CASE("S^3 surface files") {
  const Run r = geom({"verify", "--surface", data("clifford-s3.surf"), "--n", "1", "--grid", "32"});
  CHECK(r.code == 0);
  CHECK(geom({"angles", "--surface", data("clifford-s3.surf"), "--grid", "16"}).code == cli::exit_config);
}

TEST_CASE("list surfaces") {
  const Run r = geom({"list-surfaces"});
  CHECK(r.code == 0);
  CHECK(rows(r.out).size() == 3);
  const Run j = geom({"list-surfaces", "--format", "json"});
  CHECK(nlohmann::json::parse(j.out)["surfaces"].size() == 3);
}

TEST_CASE("number formatting") {
  CHECK(cli::format_number(0.1) == "0.1");
  CHECK(cli::format_number(std::acos(2 * std::sqrt(2.0) / 3)) == "0.339836909454");
  CHECK(cli::format_number(NAN).empty());
  CHECK(cli::format_number(1e-20) == "1e-20");
}
