#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace sg {

// Exact rational with 64-bit numerator/denominator. Arithmetic that would
// overflow throws ResourceError instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

class RationalMatrix3 {
 public:
  RationalMatrix3() = default;
  explicit RationalMatrix3(const std::array<std::array<Rational, 3>, 3>& e) : e_(e) {}

  static RationalMatrix3 identity();
  /// Integer matrix scaled by 1/denominator.
  static RationalMatrix3 scaled(const std::array<std::array<std::int64_t, 3>, 3>& m, std::int64_t denominator);

  const Rational& operator()(int r, int c) const { return e_[r][c]; }
  Rational& operator()(int r, int c) { return e_[r][c]; }

  Rational determinant() const;
  /// Exact inverse via the adjugate. Throws DomainError when singular.
  RationalMatrix3 inverse() const;
  Eigen::Matrix3d to_double() const;

  friend RationalMatrix3 operator*(const RationalMatrix3& a, const RationalMatrix3& b);
  friend bool operator==(const RationalMatrix3& a, const RationalMatrix3& b) = default;

 private:
  std::array<std::array<Rational, 3>, 3> e_{};
};

}  // namespace sg
