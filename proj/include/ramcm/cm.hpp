#pragma once

// Complex multiplication pipeline: Cornacchia, prime/order search, curves from
// a j-invariant, twist selection and verification.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "ramcm/classpoly.hpp"

namespace ramcm {

/// 4p = u^2 + D v^2.
struct CmSolution {
  mpz_class p;
  mpz_class u;
  mpz_class v;
  long long D = 0;
};

struct CmCandidate {
  CmSolution solution;
  mpz_class m;  // prime, p + 1 - u or p + 1 + u
};

/// Short Weierstrass curve y^2 = x^3 + a x + b over F_p with order m.
struct CurveParams {
  mpz_class p;
  mpz_class a;
  mpz_class b;
  mpz_class m;  // 0 while unassigned
  long long D = 0;
  mpz_class j;

  bool operator==(const CurveParams&) const = default;
};

struct EcPoint {
  mpz_class x;
  mpz_class y;
  bool infinity = true;

  static EcPoint at_infinity() { return {}; }
  static EcPoint affine(mpz_class x, mpz_class y) { return {std::move(x), std::move(y), false}; }
  bool operator==(const EcPoint&) const = default;
};

std::optional<CmSolution> cornacchia(long long D, const mpz_class& p);

/// Random prime p of exactly `bitlen` bits with odd u, v and a prime order.
/// Throws SearchExhausted after 10 * bitlen^2 candidates.
CmCandidate find_candidate(long long D, unsigned bitlen, std::uint64_t seed);

bool on_curve(const EcPoint& P, const CurveParams& E);
EcPoint point_neg(const EcPoint& P, const CurveParams& E);
EcPoint point_add(const EcPoint& P, const EcPoint& Q, const CurveParams& E);
EcPoint scalar_mul(const mpz_class& n, const EcPoint& P, const CurveParams& E);
EcPoint random_point(const CurveParams& E, gmp_randclass& rng);
EcPoint random_point(const CurveParams& E, std::uint64_t seed);

/// Curve with j-invariant j and its quadratic twist (smallest non-residue c >= 2).
std::pair<CurveParams, CurveParams> curves_from_j(const mpz_class& j, const mpz_class& p, long long D = 0);

/// Picks the curve of order m by sampling points on both curves.
CurveParams select_curve(const CurveParams& E1, const CurveParams& E2, const mpz_class& m, int trials,
                         std::uint64_t seed);

/// Whole pipeline. A precomputed class polynomial skips the construction.
CurveParams generate_prime_order_curve(long long D, unsigned bitlen, const Family& family, std::uint64_t seed,
                                       const ClassPolynomial* precomputed = nullptr);

/// Non-singularity, Hasse bound, primality of p and m, and m P = O for
/// `trials` random points.
bool verify_curve(const CurveParams& E, int trials, std::uint64_t seed);

/// Number of points including infinity, by enumeration; small p only.
mpz_class count_points_naive(const CurveParams& E);

}  // namespace ramcm
