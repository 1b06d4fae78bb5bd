#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>

namespace cgeom {

using Complex = std::complex<double>;

/// Complex dimension parameter n of the ambient sphere S^{2n+1} in C^{n+1}.
enum class Dimension { S3 = 1, S5 = 2 };

constexpr int complex_dim(Dimension d) { return static_cast<int>(d); }
constexpr std::size_t ambient_size(Dimension d) { return static_cast<std::size_t>(d) + 1; }

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Point or tangent vector of C^{n+1}, n+1 <= 3. Fixed capacity, value type.
class AmbientVector {
 public:
  static constexpr std::size_t max_size = 3;

  AmbientVector() = default;
  explicit AmbientVector(std::size_t size);
  AmbientVector(std::initializer_list<Complex> components);
  explicit AmbientVector(std::span<const Complex> components);

  static AmbientVector zero(Dimension d) { return AmbientVector(ambient_size(d)); }

  std::size_t size() const { return size_; }
  Complex& operator[](std::size_t k) { return data_[k]; }
  const Complex& operator[](std::size_t k) const { return data_[k]; }
  std::span<const Complex> components() const { return {data_.data(), size_}; }

  AmbientVector& operator+=(const AmbientVector& other);
  AmbientVector& operator-=(const AmbientVector& other);
  AmbientVector& operator*=(Complex s);

  friend AmbientVector operator+(AmbientVector a, const AmbientVector& b) { return a += b; }
  friend AmbientVector operator-(AmbientVector a, const AmbientVector& b) { return a -= b; }
  friend AmbientVector operator*(Complex s, AmbientVector a) { return a *= s; }
  friend AmbientVector operator*(AmbientVector a, Complex s) { return a *= s; }
  friend AmbientVector operator*(double s, AmbientVector a) { return a *= Complex(s); }
  friend AmbientVector operator/(AmbientVector a, double s) { return a *= Complex(1.0 / s); }
  friend AmbientVector operator-(AmbientVector a) { return a *= Complex(-1.0); }

  friend bool operator==(const AmbientVector& a, const AmbientVector& b);

 private:
  std::array<Complex, max_size> data_{};
  std::size_t size_ = 0;
};

/// (z, w) = sum_j z^j conj(w^j).
Complex hermitian_product(const AmbientVector& z, const AmbientVector& w);

/// <z, w> = Re (z, w), the Euclidean inner product of R^{2n+2}.
double real_inner(const AmbientVector& z, const AmbientVector& w);

double norm(const AmbientVector& z);
AmbientVector normalized(const AmbientVector& z);

/// Multiplication by i.
AmbientVector complex_structure(const AmbientVector& x);

/// Componentwise conjugate.
AmbientVector conjugate(const AmbientVector& x);

/// conj(a x b) for n = 2: the unique (up to the null case) vector Hermitian-orthogonal to a and b.
AmbientVector hermitian_cross(const AmbientVector& a, const AmbientVector& b);

inline constexpr double sphere_tolerance = 1e-12;

/// A position on the unit sphere; construction checks |z| = 1 to sphere_tolerance.
class SpherePoint {
 public:
  explicit SpherePoint(AmbientVector position);

  /// Skips the membership check; for points already normalized by construction.
  static SpherePoint unchecked(AmbientVector position);

  const AmbientVector& position() const { return position_; }
  std::size_t size() const { return position_.size(); }

 private:
  struct Unchecked {};
  SpherePoint(AmbientVector position, Unchecked) : position_(std::move(position)) {}
  AmbientVector position_;
};

/// Reeb field xi(z) = i z.
AmbientVector reeb(const SpherePoint& p);

/// Orthogonal projection of X onto the contact plane Delta_p.
AmbientVector project_contact(const SpherePoint& p, const AmbientVector& x);

/// Removes the radial component so the result is tangent to the sphere at p.
AmbientVector project_tangent(const AmbientVector& position, const AmbientVector& x);

}  // namespace cgeom
