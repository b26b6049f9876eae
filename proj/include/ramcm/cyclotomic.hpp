#pragma once

// Exact arithmetic in Q(zeta72), stored as rational polynomials in zeta72
// reduced modulo the 72nd cyclotomic polynomial x^24 - x^12 + 1.

#include <gmpxx.h>

#include <array>
#include <string>

#include "ramcm/numerics.hpp"

namespace ramcm {

class CycloElement {
 public:
  static constexpr int kDegree = 24;

  CycloElement() = default;
  explicit CycloElement(const mpq_class& rational);
  /// zeta72^e for any integer e.
  static CycloElement zeta(long long e);

  const mpq_class& coeff(int i) const { return c_[i]; }
  bool is_zero() const;
  /// True when the element is a rational number.
  bool is_rational() const;

  CycloElement operator-() const;
  CycloElement& operator+=(const CycloElement& rhs);
  CycloElement& operator-=(const CycloElement& rhs);
  friend CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
  friend CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }
  friend CycloElement operator*(const CycloElement& a, const CycloElement& b);
  CycloElement& operator*=(const CycloElement& rhs) { return *this = *this * rhs; }
  friend bool operator==(const CycloElement& a, const CycloElement& b);

  /// Image under zeta72 -> zeta72^a, gcd(a, 72) = 1.
  CycloElement galois(int a) const;
  /// Product of all 24 conjugates; a rational number.
  mpq_class norm() const;
  CycloElement inverse() const;

  ApComplex value(long prec) const;
  std::string to_string() const;

 private:
  std::array<mpq_class, kDegree> c_{};
};

class CycloMatrix6 {
 public:
  static constexpr int kSize = 6;

  CycloMatrix6() = default;
  static CycloMatrix6 identity();

  CycloElement& at(int i, int j) { return m_[i * kSize + j]; }
  const CycloElement& at(int i, int j) const { return m_[i * kSize + j]; }

  friend CycloMatrix6 operator*(const CycloMatrix6& a, const CycloMatrix6& b);
  friend bool operator==(const CycloMatrix6& a, const CycloMatrix6& b);

  /// Gauss-Jordan inverse; throws MatrixContract if singular.
  CycloMatrix6 inverse() const;
  /// M^e; negative exponents use the inverse.
  CycloMatrix6 pow(long long e) const;

  int nonzero_in_row(int i) const;
  /// Every row has exactly one nonzero entry.
  bool is_row_monomial() const;

 private:
  std::array<CycloElement, kSize * kSize> m_{};
};

}  // namespace ramcm
