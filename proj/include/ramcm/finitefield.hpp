#pragma once

// Prime field and cubic extension arithmetic, polynomial roots mod p, and the
// maps from class-invariant roots to j-invariants.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ramcm/classpoly.hpp"

namespace ramcm {

class FpElement {
 public:
  FpElement() = default;
  FpElement(const mpz_class& value, const mpz_class& p);

  const mpz_class& value() const { return v_; }
  const mpz_class& modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  FpElement operator-() const;
  friend FpElement operator+(const FpElement& a, const FpElement& b);
  friend FpElement operator-(const FpElement& a, const FpElement& b);
  friend FpElement operator*(const FpElement& a, const FpElement& b);
  friend FpElement operator/(const FpElement& a, const FpElement& b);
  friend bool operator==(const FpElement& a, const FpElement& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

  FpElement pow(const mpz_class& e) const;
  FpElement inverse() const;

 private:
  mpz_class v_ = 0;
  mpz_class p_ = 0;
};

/// Miller-Rabin with the first 13 prime bases (deterministic below 3.3e24)
/// plus `rounds` seeded random bases.
bool is_prime(const mpz_class& n, int rounds = 32, std::uint64_t seed = 0x5eed);

/// Square root mod an odd prime, the smaller of r and p - r; nullopt for a
/// non-residue.
std::optional<mpz_class> sqrt_mod_p(const mpz_class& a, const mpz_class& p);

// Dense polynomials over F_p, constant term first, no trailing zeros.
using FpPoly = std::vector<mpz_class>;

FpPoly poly_reduce(const std::vector<mpz_class>& coeffs, const mpz_class& p);
int poly_degree(const FpPoly& f);
FpPoly poly_mul(const FpPoly& a, const FpPoly& b, const mpz_class& p);
FpPoly poly_sub(const FpPoly& a, const FpPoly& b, const mpz_class& p);
FpPoly poly_mod(const FpPoly& a, const FpPoly& m, const mpz_class& p);
FpPoly poly_div(const FpPoly& a, const FpPoly& m, const mpz_class& p);
/// Monic gcd.
FpPoly poly_gcd(FpPoly a, FpPoly b, const mpz_class& p);
FpPoly poly_powmod(const FpPoly& base, const mpz_class& e, const FpPoly& m, const mpz_class& p);
mpz_class poly_eval(const std::vector<mpz_class>& coeffs, const mpz_class& x, const mpz_class& p);

/// Distinct roots in F_p, ascending.
std::vector<mpz_class> poly_roots_mod_p(const std::vector<mpz_class>& coeffs, const mpz_class& p,
                                        std::uint64_t seed = 1);
std::vector<mpz_class> poly_roots_mod_p(const ClassPolynomial& poly, const mpz_class& p, std::uint64_t seed = 1);

/// F_p[x] / (m(x)) for a monic irreducible cubic m.
struct Fp3Field {
  mpz_class p;
  std::array<mpz_class, 3> m;  // x^3 + m2 x^2 + m1 x + m0, stored as m0, m1, m2
};

class Fp3Element {
 public:
  /// Throws InvalidArgument unless the cubic is irreducible mod p.
  static std::shared_ptr<const Fp3Field> make_field(const mpz_class& p, const std::array<mpz_class, 3>& m);

  Fp3Element(std::shared_ptr<const Fp3Field> field, std::array<mpz_class, 3> coords);
  static Fp3Element from_int(std::shared_ptr<const Fp3Field> field, const mpz_class& v);
  /// The class of x.
  static Fp3Element generator(std::shared_ptr<const Fp3Field> field);

  const std::array<mpz_class, 3>& coords() const { return c_; }
  const Fp3Field& field() const { return *field_; }
  std::shared_ptr<const Fp3Field> field_ptr() const { return field_; }
  bool is_zero() const;
  bool in_prime_field() const { return c_[1] == 0 && c_[2] == 0; }

  friend Fp3Element operator+(const Fp3Element& a, const Fp3Element& b);
  friend Fp3Element operator-(const Fp3Element& a, const Fp3Element& b);
  friend Fp3Element operator*(const Fp3Element& a, const Fp3Element& b);
  friend bool operator==(const Fp3Element& a, const Fp3Element& b) { return a.c_ == b.c_; }
  Fp3Element pow(const mpz_class& e) const;
  Fp3Element inverse() const;
  Fp3Element frobenius() const { return pow(field_->p); }

 private:
  std::shared_ptr<const Fp3Field> field_;
  std::array<mpz_class, 3> c_;
};

/// A root of one irreducible cubic factor of the polynomial mod p.
Fp3Element cubic_factor_root(const std::vector<mpz_class>& coeffs, const mpz_class& p, std::uint64_t seed = 1);

/// j-invariant mod p attached to a root x of the family polynomial.
mpz_class transform_root(const Family& family, const mpz_class& x, const mpz_class& p, long long D = 0);
/// Weber roots: x lies in F_p^3 and the image must land in F_p.
mpz_class transform_root(const Family& family, const Fp3Element& x, long long D);

}  // namespace ramcm
