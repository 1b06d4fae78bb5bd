#include "cgeom/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "cgeom/dsl.hpp"

namespace cgeom::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* schema_version = "1";

std::string_view command_name(Command c) {
  switch (c) {
    case Command::angles: return "angles";
    case Command::verify: return "verify";
    case Command::export_frames: return "export-frames";
    case Command::list_surfaces: return "list-surfaces";
  }
  return "unknown";
}

json number_or_null(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

json config_echo(const RunConfig& cfg) {
  json ids = json::array();
  for (Identity id : cfg.identities) ids.push_back(identity_name(id));
  json c{{"command", command_name(cfg.command)},
         {"surface", cfg.surface},
         {"grid", cfg.grid},
         {"n", complex_dim(cfg.dimension)},
         {"format", cfg.format == Format::csv ? "csv" : "json"},
         {"degrees", cfg.degrees},
         {"identities", ids}};
  c["tolerance"] = cfg.tolerance ? json(*cfg.tolerance) : json(nullptr);
  return c;
}

json envelope(const RunConfig& cfg) {
  return json{{"schema", schema_version}, {"version", CGEOM_VERSION}, {"config", config_echo(cfg)}};
}

/// Runs `body` with the configured sink, translating errors into exit codes.
int guarded(const RunConfig& cfg, std::ostream& out, std::ostream& err,
            const std::function<int(std::ostream&)>& body) {
  try {
    check_config(cfg);
    if (cfg.out.empty()) return body(out);
    std::ostringstream buffer;
    const int code = body(buffer);
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file: " + cfg.out);
    file << buffer.str();
    if (!file) throw ConfigError("failed writing output file: " + cfg.out);
    return code;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const ValidationFailure& e) {
    err << "error: " << e.what() << '\n';
    return exit_validation;
  }
}

double display_angle(const RunConfig& cfg, double radians) {
  return cfg.degrees ? radians * (180.0 / std::numbers::pi) : radians;
}

struct Stats {
  double min = INFINITY, max = -INFINITY, sum = 0.0;
  int count = 0, undefined = 0;

  void add(double x) {
    if (std::isnan(x)) {
      ++undefined;
      return;
    }
    min = std::min(min, x);
    max = std::max(max, x);
    sum += x;
    ++count;
  }
  double mean() const { return count ? sum / count : NAN; }
  double lo() const { return count ? min : NAN; }
  double hi() const { return count ? max : NAN; }
};

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return {};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void check_config(const RunConfig& cfg) {
  if (cfg.grid < min_grid || cfg.grid > max_grid)
    throw ConfigError("grid must be in [" + std::to_string(min_grid) + ", " + std::to_string(max_grid) +
                      "], got " + std::to_string(cfg.grid));
  if (cfg.command != Command::list_surfaces && cfg.surface.empty()) throw ConfigError("--surface is required");
  if (cfg.tolerance && !(*cfg.tolerance >= 0.0)) throw ConfigError("tolerance must be non-negative");
}

Immersion load_surface(const RunConfig& cfg) {
  std::optional<Immersion> imm = builtin_by_name(cfg.surface, cfg.dimension);
  if (!imm) {
    std::ifstream in(cfg.surface, std::ios::binary);
    if (!in || std::filesystem::is_directory(cfg.surface))
      throw ConfigError("unknown surface '" + cfg.surface + "': not a built-in name or a readable file");
    std::stringstream text;
    text << in.rdbuf();
    try {
      imm = dsl::immersion_from_dsl(text.str(), cfg.dimension, std::filesystem::path(cfg.surface).stem().string());
    } catch (const dsl::ParseError& e) {
      std::string msg = cfg.surface + ":" + std::to_string(e.position().line) + ":" +
                        std::to_string(e.position().column) + ": " + e.message();
      throw ConfigError(msg);
    }
  }
  const ValidationReport report = validate_immersion(*imm, cfg.grid);
  if (!report.ok()) {
    std::string msg = "surface '" + imm->label() + "' failed validation";
    if (report.first_failure)
      msg += " (first failure at u1=" + format_number(report.first_failure->u1) +
             ", u2=" + format_number(report.first_failure->u2) + ")";
    for (const auto& m : report.messages) msg += "\n  " + m;
    throw ValidationFailure(msg);
  }
  return *imm;
}

// ------------------------------------------------------------------ angles

int cmd_angles(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&](std::ostream& sink) {
    const Immersion imm = load_surface(cfg);
    const FrameGrid frames(imm, cfg.grid);
    const int n = frames.resolution();
    Stats beta, alpha;

    json cells = json::array();
    if (cfg.format == Format::csv) sink << "u1,u2,beta,alpha\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Param u = frames.param(i, j);
        const auto& s = frames.sample(i, j);
        const double b = s ? display_angle(cfg, s->beta) : NAN;
        const double a = s && s->alpha ? display_angle(cfg, *s->alpha) : NAN;
        beta.add(b);
        alpha.add(a);
        if (cfg.format == Format::csv) {
          sink << format_number(u.u1) << ',' << format_number(u.u2) << ',' << format_number(b) << ','
               << format_number(a) << '\n';
        } else {
          cells.push_back(json{{"u1", u.u1}, {"u2", u.u2}, {"beta", number_or_null(b)}, {"alpha", number_or_null(a)}});
        }
      }
    }

    if (cfg.format == Format::csv) {
      auto line = [&](const char* name, const Stats& st) {
        sink << "# " << name << " min=" << format_number(st.lo()) << " max=" << format_number(st.hi())
             << " mean=" << format_number(st.mean()) << " undefined=" << st.undefined << '\n';
      };
      line("beta", beta);
      line("alpha", alpha);
    } else {
      auto summary = [](const Stats& st) {
        return json{{"min", number_or_null(st.lo())},
                    {"max", number_or_null(st.hi())},
                    {"mean", number_or_null(st.mean())},
                    {"undefined", st.undefined}};
      };
      json doc = envelope(cfg);
      doc["unit"] = cfg.degrees ? "degrees" : "radians";
      doc["cells"] = std::move(cells);
      doc["summary"] = json{{"beta", summary(beta)}, {"alpha", summary(alpha)}};
      sink << doc.dump(2) << '\n';
    }
    for (const auto& w : imm.warnings()) err << "warning: " << w << '\n';
    return exit_ok;
  });
}

// ------------------------------------------------------------------ verify

namespace {

json report_json(const ResidualReport& r) {
  json skipped = json::object();
  for (int k = 0; k < skip_reason_count; ++k)
    skipped[std::string(skip_reason_name(static_cast<SkipReason>(k)))] = r.skipped[k];
  json j{{"identity", r.name},   {"resolution", r.resolution}, {"max_abs", r.max_abs}, {"mean_abs", r.mean_abs},
         {"rms", r.rms},         {"evaluated", r.evaluated},   {"skipped", skipped},   {"tolerance", r.tolerance},
         {"pass", r.pass},       {"vacuous", r.vacuous}};
  j["worst"] = r.worst ? json{{"u1", r.worst->u1}, {"u2", r.worst->u2}} : json(nullptr);
  return j;
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&](std::ostream& sink) {
    const Immersion imm = load_surface(cfg);
    const FrameGrid frames(imm, cfg.grid);
    const GeometryFields geometry = compute_geometry(frames);

    std::vector<Identity> ids = cfg.identities;
    if (ids.empty()) ids.assign(all_identities.begin(), all_identities.end());

    IdentityOptions opts;
    opts.tolerance_override = cfg.tolerance;
    std::vector<ResidualReport> reports;
    for (Identity id : ids) reports.push_back(evaluate_identity(id, geometry, opts));

    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.pass;

    if (cfg.format == Format::csv) {
      sink << "identity,resolution,evaluated";
      for (int k = 0; k < skip_reason_count; ++k) sink << ",skipped_" << skip_reason_name(static_cast<SkipReason>(k));
      sink << ",max_abs,mean_abs,rms,tolerance,pass,vacuous\n";
      for (const auto& r : reports) {
        sink << r.name << ',' << r.resolution << ',' << r.evaluated;
        for (int s : r.skipped) sink << ',' << s;
        sink << ',' << format_number(r.max_abs) << ',' << format_number(r.mean_abs) << ',' << format_number(r.rms)
             << ',' << format_number(r.tolerance) << ',' << (r.pass ? "true" : "false") << ','
             << (r.vacuous ? "true" : "false") << '\n';
      }
    } else {
      json doc = envelope(cfg);
      doc["surface"] = imm.label();
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(report_json(r));
      doc["reports"] = std::move(arr);
      doc["pass"] = all_pass;
      sink << doc.dump(2) << '\n';
    }

    for (const auto& r : reports) {
      err << r.name << ": " << (r.pass ? "pass" : "FAIL") << " max_abs=" << format_number(r.max_abs)
          << " tol=" << format_number(r.tolerance) << " evaluated=" << r.evaluated << '/'
          << r.resolution * r.resolution << (r.vacuous ? " (vacuous: every cell skipped)" : "") << '\n';
    }
    for (const auto& w : imm.warnings()) err << "warning: " << w << '\n';
    return all_pass ? exit_ok : exit_tolerance;
  });
}

// ----------------------------------------------------------- export-frames

int cmd_export_frames(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&](std::ostream& sink) {
    const Immersion imm = load_surface(cfg);
    const FrameGrid frames(imm, cfg.grid);
    const int n = frames.resolution();
    const int vectors = 2 * complex_dim(cfg.dimension) + 1;
    const auto comps = ambient_size(cfg.dimension);

    auto status_name = [](CellStatus s) {
      switch (s) {
        case CellStatus::ok: return "ok";
        case CellStatus::degenerate: return "degenerate";
        case CellStatus::evaluation_failed: return "evaluation-failed";
      }
      return "unknown";
    };

    json cells = json::array();
    if (cfg.format == Format::csv) {
      sink << "u1,u2,status,legendrian,kind,beta,alpha";
      for (int v = 1; v <= vectors; ++v)
        for (std::size_t m = 0; m < comps; ++m) sink << ",e" << v << '_' << m << "_re,e" << v << '_' << m << "_im";
      sink << '\n';
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Param u = frames.param(i, j);
        const auto& s = frames.sample(i, j);
        const char* status = status_name(frames.status(i, j));
        if (cfg.format == Format::csv) {
          sink << format_number(u.u1) << ',' << format_number(u.u2) << ',' << status << ',';
          if (!s) {
            sink << ",,,";
            for (int k = 0; k < vectors * static_cast<int>(comps) * 2; ++k) sink << ',';
            sink << '\n';
            continue;
          }
          sink << (s->legendrian ? "true" : "false") << ',' << (s->kind == FrameKind::interior ? "interior" : "fallback")
               << ',' << format_number(display_angle(cfg, s->beta)) << ','
               << format_number(s->alpha ? display_angle(cfg, *s->alpha) : NAN);
          for (const auto& e : s->darboux)
            for (std::size_t m = 0; m < comps; ++m)
              sink << ',' << format_number(e[m].real()) << ',' << format_number(e[m].imag());
          sink << '\n';
        } else {
          json c{{"u1", u.u1}, {"u2", u.u2}, {"status", status}};
          if (s) {
            c["legendrian"] = s->legendrian;
            c["kind"] = s->kind == FrameKind::interior ? "interior" : "fallback";
            c["beta"] = display_angle(cfg, s->beta);
            c["alpha"] = s->alpha ? json(display_angle(cfg, *s->alpha)) : json(nullptr);
            json frame = json::array();
            for (const auto& e : s->darboux) {
              json vec = json::array();
              for (std::size_t m = 0; m < comps; ++m) vec.push_back(json::array({e[m].real(), e[m].imag()}));
              frame.push_back(std::move(vec));
            }
            c["darboux"] = std::move(frame);
          }
          cells.push_back(std::move(c));
        }
      }
    }
    if (cfg.format == Format::json) {
      json doc = envelope(cfg);
      doc["unit"] = cfg.degrees ? "degrees" : "radians";
      doc["cells"] = std::move(cells);
      sink << doc.dump(2) << '\n';
    }
    for (const auto& w : imm.warnings()) err << "warning: " << w << '\n';
    return exit_ok;
  });
}

// ----------------------------------------------------------- list-surfaces

int cmd_list_surfaces(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(cfg, out, err, [&](std::ostream& sink) {
    if (cfg.format == Format::csv) {
      sink << "name,formula\n";
      for (const auto& b : builtin_surfaces()) sink << b.name << ",\"" << b.formula << "\"\n";
    } else {
      json arr = json::array();
      for (const auto& b : builtin_surfaces()) arr.push_back(json{{"name", b.name}, {"formula", b.formula}});
      json doc{{"schema", schema_version}, {"version", CGEOM_VERSION}, {"surfaces", arr}};
      sink << doc.dump(2) << '\n';
    }
    return exit_ok;
  });
}

// --------------------------------------------------------------------- run

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contact and Kahler angles, curvature and identity residuals of surfaces in S^3 / S^5", "geom"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CGEOM_VERSION));

  RunConfig cfg;
  std::string format = "csv";
  std::vector<std::string> identity_names;
  int n = 2;
  std::optional<double> tolerance;

  auto common = [&](CLI::App* sub, bool needs_surface) {
    if (needs_surface) {
      sub->add_option("--surface", cfg.surface, "built-in name or surface file")->required();
      sub->add_option("--grid", cfg.grid, "cells per axis")->capture_default_str();
      sub->add_option("--n", n, "complex dimension: 1 for S^3, 2 for S^5")->check(CLI::IsMember({1, 2}))->capture_default_str();
      sub->add_flag("--degrees", cfg.degrees, "print angles in degrees");
    }
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  };

  auto* angles = app.add_subcommand("angles", "per-cell contact and Kahler angles");
  common(angles, true);
  auto* verify = app.add_subcommand("verify", "identity residual reports");
  common(verify, true);
  verify->add_option("--identities", identity_names, "comma separated identity names")->delimiter(',');
  verify->add_option("--tolerance", tolerance, "override every identity tolerance");
  auto* exp = app.add_subcommand("export-frames", "per-cell Darboux frames");
  common(exp, true);
  auto* list = app.add_subcommand("list-surfaces", "built-in surfaces");
  common(list, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << CGEOM_VERSION << '\n';
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  }

  cfg.format = format == "json" ? Format::json : Format::csv;
  cfg.dimension = n == 1 ? Dimension::S3 : Dimension::S5;
  cfg.tolerance = tolerance;
  for (const auto& name : identity_names) {
    if (name == "all") {
      cfg.identities.clear();
      break;
    }
    const auto id = identity_by_name(name);
    if (!id) {
      err << "error: unknown identity '" << name << "'\n";
      return exit_config;
    }
    cfg.identities.push_back(*id);
  }

  if (angles->parsed()) {
    cfg.command = Command::angles;
    return cmd_angles(cfg, out, err);
  }
  if (verify->parsed()) {
    cfg.command = Command::verify;
    return cmd_verify(cfg, out, err);
  }
  if (exp->parsed()) {
    cfg.command = Command::export_frames;
    return cmd_export_frames(cfg, out, err);
  }
  cfg.command = Command::list_surfaces;
  return cmd_list_surfaces(cfg, out, err);
}

}  // namespace cgeom::cli
