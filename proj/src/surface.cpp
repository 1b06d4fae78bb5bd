#include "cgeom/surface.hpp"

#include <cmath>
#include <sstream>

namespace cgeom {

namespace {

Complex cis(double t) { return {std::cos(t), std::sin(t)}; }

constexpr Complex I{0.0, 1.0};

void require_s5(Dimension dim, const char* name) {
  if (dim != Dimension::S5) {
    throw DimensionError(std::string(name) + " lives in S^5 and needs n = 2");
  }
}

std::string describe(Param u) {
  std::ostringstream os;
  os.precision(6);
  os << "(u1=" << u.u1 << ", u2=" << u.u2 << ")";
  return os.str();
}

}  // namespace

Immersion::Immersion(std::string label, Dimension dim, JetFunction jet, bool periodic)
    : label_(std::move(label)), dim_(dim), jet_(std::move(jet)), periodic_(periodic) {}

Jet Immersion::jet(Param u) const {
  Jet j = jet_(u);
  const std::size_t m = ambient_size(dim_);
  if (j.position.size() != m || j.d_u1.size() != m || j.d_u2.size() != m) {
    throw DimensionError("immersion '" + label_ + "' returned vectors of the wrong dimension");
  }
  return j;
}

Immersion builtin_legendrian_torus(Dimension dim) {
  require_s5(dim, "legendrian-torus");
  return Immersion("legendrian-torus", dim, [](Param u) {
    const double r = std::sqrt(3.0) / 3.0;
    const Complex a = r * cis(u.u1), b = r * cis(u.u2), c = r * cis(-(u.u1 + u.u2));
    return Jet{{a, b, c}, {I * a, 0.0, -I * c}, {0.0, I * b, -I * c}};
  });
}

Immersion builtin_generalized_clifford_torus(Dimension dim) {
  require_s5(dim, "generalized-clifford");
  return Immersion("generalized-clifford", dim, [](Param u) {
    const double r = std::sqrt(3.0) / 3.0;
    const Complex a = r * cis(u.u1), b = r * cis(u.u2), c = r * cis(u.u2 - u.u1);
    return Jet{{a, b, c}, {I * a, 0.0, -I * c}, {0.0, I * b, I * c}};
  });
}

Immersion builtin_clifford_torus(Dimension dim) {
  require_s5(dim, "clifford");
  return Immersion("clifford", dim, [](Param u) {
    const double r = std::sqrt(2.0) / 2.0;
    const Complex a = r * cis(u.u1), b = r * cis(u.u2);
    return Jet{{a, b, 0.0}, {I * a, 0.0, 0.0}, {0.0, I * b, 0.0}};
  });
}

const std::vector<BuiltinInfo>& builtin_surfaces() {
  static const std::vector<BuiltinInfo> list{
      {"legendrian-torus", "(sqrt3/3)(e^{iu1}, e^{iu2}, e^{-i(u1+u2)})"},
      {"generalized-clifford", "(sqrt3/3)(e^{iu1}, e^{iu2}, e^{i(u2-u1)})"},
      {"clifford", "(sqrt2/2)(e^{iu1}, e^{iu2}, 0)"},
  };
  return list;
}

std::optional<Immersion> builtin_by_name(const std::string& name, Dimension dim) {
  if (name == "legendrian-torus") return builtin_legendrian_torus(dim);
  if (name == "generalized-clifford") return builtin_generalized_clifford_torus(dim);
  if (name == "clifford") return builtin_clifford_torus(dim);
  return std::nullopt;
}

MetricTensor metric_from_jet(const Jet& jet) {
  return {real_inner(jet.d_u1, jet.d_u1), real_inner(jet.d_u1, jet.d_u2), real_inner(jet.d_u2, jet.d_u2)};
}

MetricTensor induced_metric(const Immersion& imm, Param u) {
  const MetricTensor g = metric_from_jet(imm.jet(u));
  if (!(g.det() > immersion_floor)) {
    throw DegeneratePointError("degenerate induced metric at " + describe(u), u);
  }
  return g;
}

ValidationReport validate_immersion(const Immersion& imm, int resolution, ValidationOptions opts) {
  ValidationReport rep;
  rep.resolution = resolution;
  rep.min_det.value = std::numeric_limits<double>::infinity();
  const double h = two_pi / resolution;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const Param u{i * h, j * h};
      Jet jet;
      try {
        jet = imm.jet(u);
      } catch (const std::exception& e) {
        if (rep.evaluation_failures++ == 0) {
          rep.messages.push_back("evaluation failed at " + describe(u) + ": " + e.what());
          if (!rep.first_failure) rep.first_failure = u;
        }
        continue;
      }
      const double sphere = std::abs(real_inner(jet.position, jet.position) - 1.0);
      if (sphere > rep.sphere.value) rep.sphere = {sphere, u};
      const double tang = std::max(std::abs(real_inner(jet.d_u1, jet.position)),
                                   std::abs(real_inner(jet.d_u2, jet.position)));
      if (tang > rep.tangency.value) rep.tangency = {tang, u};
      const double det = metric_from_jet(jet).det();
      if (det < rep.min_det.value) rep.min_det = {det, u};

      const bool bad = sphere > opts.sphere_tolerance || tang > opts.tangency_tolerance ||
                       !(det > opts.metric_floor);
      if (bad && !rep.first_failure) rep.first_failure = u;
    }
  }
  rep.sphere_ok = rep.sphere.value <= opts.sphere_tolerance;
  rep.tangency_ok = rep.tangency.value <= opts.tangency_tolerance;
  rep.nondegenerate = rep.min_det.value > opts.metric_floor;
  if (!rep.sphere_ok) {
    rep.messages.push_back("not on the unit sphere: ||f|^2 - 1| = " + std::to_string(rep.sphere.value) +
                           " at " + describe(rep.sphere.at));
  }
  if (!rep.tangency_ok) {
    rep.messages.push_back("derivatives not tangent to the sphere: " + std::to_string(rep.tangency.value) +
                           " at " + describe(rep.tangency.at));
  }
  if (!rep.nondegenerate) {
    rep.messages.push_back("degenerate metric: det g = " + std::to_string(rep.min_det.value) + " at " +
                           describe(rep.min_det.at));
  }
  return rep;
}

}  // namespace cgeom
