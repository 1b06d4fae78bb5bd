#include "cgeom/ambient.hpp"

#include <cmath>
#include <string>

namespace cgeom {

namespace {

void require_same_size(const AmbientVector& a, const AmbientVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("ambient vectors of different dimension: " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
  }
}

}  // namespace

AmbientVector::AmbientVector(std::size_t size) : size_(size) {
  if (size == 0 || size > max_size) {
    throw DimensionError("ambient dimension must be 1.." + std::to_string(max_size));
  }
}

AmbientVector::AmbientVector(std::initializer_list<Complex> components)
    : AmbientVector(std::span<const Complex>(components.begin(), components.size())) {}

AmbientVector::AmbientVector(std::span<const Complex> components) : AmbientVector(components.size()) {
  for (std::size_t k = 0; k < size_; ++k) data_[k] = components[k];
}

AmbientVector& AmbientVector::operator+=(const AmbientVector& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < size_; ++k) data_[k] += other.data_[k];
  return *this;
}

AmbientVector& AmbientVector::operator-=(const AmbientVector& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < size_; ++k) data_[k] -= other.data_[k];
  return *this;
}

AmbientVector& AmbientVector::operator*=(Complex s) {
  for (std::size_t k = 0; k < size_; ++k) data_[k] *= s;
  return *this;
}

bool operator==(const AmbientVector& a, const AmbientVector& b) {
  if (a.size_ != b.size_) return false;
  for (std::size_t k = 0; k < a.size_; ++k) {
    if (a.data_[k] != b.data_[k]) return false;
  }
  return true;
}

Complex hermitian_product(const AmbientVector& z, const AmbientVector& w) {
  require_same_size(z, w);
  Complex sum{};
  for (std::size_t k = 0; k < z.size(); ++k) sum += z[k] * std::conj(w[k]);
  return sum;
}

double real_inner(const AmbientVector& z, const AmbientVector& w) {
  require_same_size(z, w);
  double sum = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    sum += z[k].real() * w[k].real() + z[k].imag() * w[k].imag();
  }
  return sum;
}

double norm(const AmbientVector& z) { return std::sqrt(real_inner(z, z)); }

AmbientVector normalized(const AmbientVector& z) { return z / norm(z); }

AmbientVector complex_structure(const AmbientVector& x) {
  AmbientVector out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = Complex(-x[k].imag(), x[k].real());
  return out;
}

AmbientVector conjugate(const AmbientVector& x) {
  AmbientVector out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = std::conj(x[k]);
  return out;
}

AmbientVector hermitian_cross(const AmbientVector& a, const AmbientVector& b) {
  require_same_size(a, b);
  if (a.size() != 3) throw DimensionError("hermitian_cross needs C^3");
  return AmbientVector{std::conj(a[1] * b[2] - a[2] * b[1]), std::conj(a[2] * b[0] - a[0] * b[2]),
                       std::conj(a[0] * b[1] - a[1] * b[0])};
}

SpherePoint::SpherePoint(AmbientVector position) : position_(std::move(position)) {
  const double r2 = real_inner(position_, position_);
  if (std::abs(r2 - 1.0) > sphere_tolerance) {
    throw std::domain_error("point is not on the unit sphere: |z|^2 = " + std::to_string(r2));
  }
}

SpherePoint SpherePoint::unchecked(AmbientVector position) { return {std::move(position), Unchecked{}}; }

AmbientVector reeb(const SpherePoint& p) { return complex_structure(p.position()); }

AmbientVector project_contact(const SpherePoint& p, const AmbientVector& x) {
  const AmbientVector& z = p.position();
  const AmbientVector xi = reeb(p);
  return x - real_inner(x, z) * z - real_inner(x, xi) * xi;
}

AmbientVector project_tangent(const AmbientVector& position, const AmbientVector& x) {
  return x - real_inner(x, position) * position;
}

}  // namespace cgeom
