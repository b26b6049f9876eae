#pragma once

// Arbitrary-precision real and complex arithmetic on top of MPFR, and the
// modular functions evaluated by the class polynomial builders.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <string>
#include <utility>

namespace ramcm {

/// Internal guard bits added to every modular-function evaluation.
inline constexpr long kGuardBits = 64;
/// Smallest working precision accepted anywhere in the library.
inline constexpr long kMinPrec = 64;

/// MPFR real with an explicit precision; results of binary operations carry
/// the smaller precision of the two operands.
class ApReal {
 public:
  explicit ApReal(long prec = kMinPrec);
  ApReal(double value, long prec);
  ApReal(const mpz_class& value, long prec);
  ApReal(const mpq_class& value, long prec);
  ApReal(const ApReal& other);
  ApReal(ApReal&& other) noexcept;
  ApReal& operator=(const ApReal& other);
  ApReal& operator=(ApReal&& other) noexcept;
  ~ApReal();

  static ApReal pi(long prec);

  long prec() const { return static_cast<long>(mpfr_get_prec(value_)); }
  /// Copy rounded to a different precision.
  ApReal with_prec(long prec) const;

  mpfr_ptr raw() { return value_; }
  mpfr_srcptr raw() const { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// log2 |x|; -inf for zero.
  double log2_abs() const;
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  /// Nearest integer.
  mpz_class round() const;
  std::string to_string(int digits = 20) const;

  ApReal operator-() const;
  ApReal& operator+=(const ApReal& rhs);
  ApReal& operator-=(const ApReal& rhs);
  ApReal& operator*=(const ApReal& rhs);
  ApReal& operator/=(const ApReal& rhs);

  friend ApReal operator+(ApReal lhs, const ApReal& rhs);
  friend ApReal operator-(ApReal lhs, const ApReal& rhs);
  friend ApReal operator*(ApReal lhs, const ApReal& rhs);
  friend ApReal operator/(ApReal lhs, const ApReal& rhs);
  friend bool operator<(const ApReal& a, const ApReal& b) {
    return mpfr_less_p(a.value_, b.value_) != 0;
  }

  friend ApReal sqrt(const ApReal& x);
  friend ApReal exp(const ApReal& x);
  friend ApReal abs(const ApReal& x);

 private:
  mpfr_t value_;
};

class ApComplex {
 public:
  explicit ApComplex(long prec = kMinPrec) : re_(prec), im_(prec) {}
  ApComplex(ApReal re, ApReal im);
  ApComplex(double re, double im, long prec)
      : re_(re, prec), im_(im, prec) {}

  /// exp(2*pi*i*x).
  static ApComplex unit(const ApReal& x);
  /// exp(2*pi*i*num/den), exact rational angle.
  static ApComplex root_of_unity(long num, long den, long prec);

  long prec() const { return std::min(re_.prec(), im_.prec()); }
  ApComplex with_prec(long prec) const;

  const ApReal& re() const { return re_; }
  const ApReal& im() const { return im_; }
  ApReal& re() { return re_; }
  ApReal& im() { return im_; }

  ApReal norm() const;  // |z|^2
  ApReal abs() const;
  ApComplex conj() const;
  std::string to_string(int digits = 20) const;

  ApComplex operator-() const;
  ApComplex& operator+=(const ApComplex& rhs);
  ApComplex& operator-=(const ApComplex& rhs);
  ApComplex& operator*=(const ApComplex& rhs);
  ApComplex& operator/=(const ApComplex& rhs);
  ApComplex& operator*=(const ApReal& rhs);

  friend ApComplex operator+(ApComplex lhs, const ApComplex& rhs) { return lhs += rhs; }
  friend ApComplex operator-(ApComplex lhs, const ApComplex& rhs) { return lhs -= rhs; }
  friend ApComplex operator*(ApComplex lhs, const ApComplex& rhs) { return lhs *= rhs; }
  friend ApComplex operator/(ApComplex lhs, const ApComplex& rhs) { return lhs /= rhs; }
  friend ApComplex operator*(ApComplex lhs, const ApReal& rhs) { return lhs *= rhs; }

  ApComplex pow(long n) const;

  friend ApComplex exp(const ApComplex& z);
  /// Principal square root.
  friend ApComplex sqrt(const ApComplex& z);

 private:
  ApReal re_;
  ApReal im_;
};

/// Point of the upper half plane. Real part is exact rational when built
/// from a quadratic form; the imaginary part is an MPFR value.
class HalfPlanePoint {
 public:
  HalfPlanePoint(ApReal re, ApReal im);
  /// (-b + sqrt(-D)) / (2a).
  static HalfPlanePoint from_form(long long a, long long b, long long D, long prec);

  const ApReal& re() const { return re_; }
  const ApReal& im() const { return im_; }
  long prec() const { return std::min(re_.prec(), im_.prec()); }

  /// factor * tau + shift.
  HalfPlanePoint affine(const mpq_class& factor, const mpq_class& shift) const;
  HalfPlanePoint scaled(const mpq_class& factor) const { return affine(factor, 0); }
  HalfPlanePoint shifted(const mpq_class& shift) const { return affine(1, shift); }
  /// -1/tau.
  HalfPlanePoint inverted() const;

  ApComplex as_complex() const { return ApComplex(re_, im_); }

 private:
  ApReal re_;
  ApReal im_;
};

/// Exponent e taken mod 72; zeta72^e with zeta72 = exp(2 pi i / 72).
class RootOfUnity72 {
 public:
  constexpr explicit RootOfUnity72(long long e = 0)
      : exponent_(static_cast<int>(((e % 72) + 72) % 72)) {}
  constexpr int exponent() const { return exponent_; }
  constexpr RootOfUnity72 operator*(RootOfUnity72 o) const {
    return RootOfUnity72(exponent_ + o.exponent_);
  }
  constexpr RootOfUnity72 inverse() const { return RootOfUnity72(-exponent_); }
  constexpr bool operator==(const RootOfUnity72&) const = default;
  ApComplex value(long prec) const;

 private:
  int exponent_;
};

// Modular functions. Every evaluation runs with kGuardBits extra bits and
// returns a value rounded to `prec`.

/// Dedekind eta through the pentagonal series, without any argument
/// reduction. Throws NonConvergent when im(tau) is too small for the cap.
ApComplex eta_series(const HalfPlanePoint& tau, long prec);
/// Dedekind eta; the argument is first moved into the fundamental domain
/// using eta(tau+1) = e^{i pi/12} eta(tau) and eta(-1/tau) = sqrt(-i tau) eta(tau).
ApComplex eta(const HalfPlanePoint& tau, long prec);

/// Weber functions as q-products with half-integral exponents.
ApComplex weber_f(const HalfPlanePoint& tau, long prec);
ApComplex weber_f1(const HalfPlanePoint& tau, long prec);
ApComplex weber_f2(const HalfPlanePoint& tau, long prec);

/// Level-72 functions R_0..R_5 built from eta at tau, 3 tau and (tau + j)/3.
ApComplex r_func(int index, const HalfPlanePoint& tau, long prec);

/// eta(tau/l) / eta(tau) for l in {3, 5, 7, 13}.
ApComplex eta_quotient_single(int l, const HalfPlanePoint& tau, long prec);
/// eta(tau/p1) eta(tau/p2) / (eta(tau/(p1 p2)) eta(tau)) for (3,13), (5,7).
ApComplex eta_quotient_double(int p1, int p2, const HalfPlanePoint& tau, long prec);

}  // namespace ramcm
