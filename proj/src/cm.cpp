#include "ramcm/cm.hpp"

#include "ramcm/error.hpp"
#include "ramcm/finitefield.hpp"
#include "ramcm/forms.hpp"

namespace ramcm {

namespace {

constexpr int kMaxLanes = 64;
constexpr int kSelectTrials = 64;

mpz_class mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

mpz_class inv(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
    throw Error(ErrorKind::InvalidArgument, "not invertible mod p");
  return r;
}

bool is_square(const mpz_class& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

void seed_rng(gmp_randclass& rng, std::uint64_t seed) { rng.seed(mpz_class(std::to_string(seed))); }

std::uint64_t lane_seed(std::uint64_t seed, int lane) {
  return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(lane) * 0xBF58476D1CE4E5B9ULL + 1;
}

}  // namespace

std::optional<CmSolution> cornacchia(long long D, const mpz_class& p) {
  require_discriminant(D);
  if (p <= 3 || !is_prime(p)) throw Error(ErrorKind::InvalidArgument, "cornacchia needs a prime p > 3");
  mpz_class Dz(std::to_string(D));
  mpz_class minus_d = mod(-Dz, p);
  auto root = sqrt_mod_p(minus_d, p);
  if (!root) return std::nullopt;
  mpz_class x0 = *root;
  if (mpz_even_p(x0.get_mpz_t())) x0 = p - x0;
  mpz_class a = 2 * p, b = x0;
  mpz_class limit = sqrt(4 * p);
  while (b > limit) {
    mpz_class r = a % b;
    a = b;
    b = r;
  }
  mpz_class rest = 4 * p - b * b;
  if (rest < 0 || rest % Dz != 0) return std::nullopt;
  mpz_class c = rest / Dz;
  if (!is_square(c)) return std::nullopt;
  return CmSolution{p, b, sqrt(c), D};
}

CmCandidate find_candidate(long long D, unsigned bitlen, std::uint64_t seed) {
  require_discriminant(D);
  if (D % 8 != 3)
    throw Error(ErrorKind::InvalidDiscriminant, "prime orders need D = 3 mod 8, got " + std::to_string(D));
  if (bitlen < 3) throw Error(ErrorKind::InvalidArgument, "bit length must be at least 3");
  gmp_randclass rng(gmp_randinit_default);
  seed_rng(rng, seed);
  long cap = 10L * bitlen * bitlen;
  mpz_class top;
  mpz_setbit(top.get_mpz_t(), bitlen - 1);
  for (long attempt = 0; attempt < cap; ++attempt) {
    mpz_class p = rng.get_z_bits(bitlen - 1) | top;
    mpz_setbit(p.get_mpz_t(), 0);
    if (p <= 3 || !is_prime(p)) continue;
    auto sol = cornacchia(D, p);
    if (!sol) continue;
    if (mpz_even_p(sol->u.get_mpz_t()) || mpz_even_p(sol->v.get_mpz_t())) continue;
    mpz_class m1 = p + 1 - sol->u;
    mpz_class m2 = p + 1 + sol->u;
    if (is_prime(m1)) return {*sol, m1};
    if (is_prime(m2)) return {*sol, m2};
  }
  throw Error(ErrorKind::SearchExhausted, "no " + std::to_string(bitlen) + "-bit candidate for D = " +
                                              std::to_string(D) + " after " + std::to_string(cap) + " attempts");
}

// ------------------------------------------------------------- group law

bool on_curve(const EcPoint& P, const CurveParams& E) {
  if (P.infinity) return true;
  return mod(P.y * P.y - (P.x * P.x * P.x + E.a * P.x + E.b), E.p) == 0;
}

EcPoint point_neg(const EcPoint& P, const CurveParams& E) {
  if (P.infinity) return P;
  return EcPoint::affine(P.x, mod(-P.y, E.p));
}

EcPoint point_add(const EcPoint& P, const EcPoint& Q, const CurveParams& E) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  const mpz_class& p = E.p;
  mpz_class lambda;
  if (P.x == Q.x) {
    if (mod(P.y + Q.y, p) == 0) return EcPoint::at_infinity();
    lambda = mod((3 * P.x * P.x + E.a) * inv(2 * P.y, p), p);
  } else {
    lambda = mod((Q.y - P.y) * inv(mod(Q.x - P.x, p), p), p);
  }
  mpz_class x = mod(lambda * lambda - P.x - Q.x, p);
  mpz_class y = mod(lambda * (P.x - x) - P.y, p);
  return EcPoint::affine(x, y);
}

EcPoint scalar_mul(const mpz_class& n, const EcPoint& P, const CurveParams& E) {
  if (n < 0) return scalar_mul(-n, point_neg(P, E), E);
  EcPoint R = EcPoint::at_infinity();
  std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    R = point_add(R, R, E);
    if (mpz_tstbit(n.get_mpz_t(), i)) R = point_add(R, P, E);
  }
  return R;
}

EcPoint random_point(const CurveParams& E, gmp_randclass& rng) {
  for (;;) {
    mpz_class x = rng.get_z_range(E.p);
    mpz_class rhs = mod(x * x * x + E.a * x + E.b, E.p);
    if (auto y = sqrt_mod_p(rhs, E.p)) return EcPoint::affine(x, *y);
  }
}

EcPoint random_point(const CurveParams& E, std::uint64_t seed) {
  gmp_randclass rng(gmp_randinit_default);
  seed_rng(rng, seed);
  return random_point(E, rng);
}

// ---------------------------------------------------------------- curves

std::pair<CurveParams, CurveParams> curves_from_j(const mpz_class& j0, const mpz_class& p, long long D) {
  mpz_class j = mod(j0, p);
  if (j == 0 || j == mod(1728, p))
    throw Error(ErrorKind::DegenerateJ, "j = " + j.get_str() + " is 0 or 1728 mod p");
  mpz_class k = mod(j * inv(mod(1728 - j, p), p), p);
  CurveParams E1{p, mod(3 * k, p), mod(2 * k, p), 0, D, j};
  mpz_class c = 2;
  while (mpz_legendre(c.get_mpz_t(), p.get_mpz_t()) != -1) ++c;
  CurveParams E2{p, mod(E1.a * c * c, p), mod(E1.b * c * c * c, p), 0, D, j};
  return {E1, E2};
}

CurveParams select_curve(const CurveParams& E1, const CurveParams& E2, const mpz_class& m, int trials,
                         std::uint64_t seed) {
  gmp_randclass rng(gmp_randinit_default);
  seed_rng(rng, seed);
  // A point P on X with nP != O shows #X != n. Either order works as a probe:
  // m-witnesses rule a curve out, complementary-order witnesses rule it in.
  const mpz_class other = 2 * E1.p + 2 - m;
  bool first = false, second = false;
  for (int t = 0; t < trials; ++t) {
    EcPoint P1 = random_point(E1, rng), P2 = random_point(E2, rng);
    if (!scalar_mul(m, P1, E1).infinity || !scalar_mul(other, P2, E2).infinity) second = true;
    if (!scalar_mul(m, P2, E2).infinity || !scalar_mul(other, P1, E1).infinity) first = true;
    if (first && second) break;
    if (first != second) {
      CurveParams out = first ? E1 : E2;
      out.m = m;
      return out;
    }
  }
  throw Error(ErrorKind::Inconclusive,
              first && second ? "neither curve has order " + m.get_str()
                              : "no witness point after " + std::to_string(trials) + " trials");
}

bool verify_curve(const CurveParams& E, int trials, std::uint64_t seed) {
  const mpz_class& p = E.p;
  if (p <= 3 || !is_prime(p)) return false;
  if (mod(4 * E.a * E.a * E.a + 27 * E.b * E.b, p) == 0) return false;
  mpz_class t = p + 1 - E.m;
  if (t * t > 4 * p) return false;
  if (!is_prime(E.m)) return false;
  gmp_randclass rng(gmp_randinit_default);
  seed_rng(rng, seed);
  for (int i = 0; i < trials; ++i) {
    EcPoint P = random_point(E, rng);
    if (!on_curve(P, E)) return false;
    if (!scalar_mul(E.m, P, E).infinity) return false;
  }
  return true;
}

mpz_class count_points_naive(const CurveParams& E) {
  if (E.p > 100000) throw Error(ErrorKind::InvalidArgument, "naive point count needs a small p");
  mpz_class count = 1;
  for (mpz_class x = 0; x < E.p; ++x) {
    mpz_class rhs = mod(x * x * x + E.a * x + E.b, E.p);
    if (rhs == 0)
      count += 1;
    else if (mpz_legendre(rhs.get_mpz_t(), E.p.get_mpz_t()) == 1)
      count += 2;
  }
  return count;
}

// -------------------------------------------------------------- pipeline

CurveParams generate_prime_order_curve(long long D, unsigned bitlen, const Family& family, std::uint64_t seed,
                                       const ClassPolynomial* precomputed) {
  require_discriminant(D);
  if (D % 8 != 3)
    throw Error(ErrorKind::InvalidDiscriminant, "prime orders need D = 3 mod 8, got " + std::to_string(D));
  if (family.kind == FamilyKind::DoubleEta)
    throw Error(ErrorKind::UnsupportedFamily, "double eta polynomials have no root transformation");
  check_family(family, D);
  ClassPolynomial poly = precomputed ? *precomputed : build_class_polynomial(family, D);
  if (poly.family != family || poly.D != D)
    throw Error(ErrorKind::InvalidArgument, "precomputed polynomial does not match the request");

  std::string last_problem = "no lanes tried";
  for (int lane = 0; lane < kMaxLanes; ++lane) {
    std::uint64_t s = lane_seed(seed, lane);
    CmCandidate cand = find_candidate(D, bitlen, s);
    const mpz_class& p = cand.solution.p;
    mpz_class j;
    try {
      if (family.kind == FamilyKind::Weber) {
        j = transform_root(family, cubic_factor_root(poly.coeffs, p, s), D);
      } else {
        auto roots = poly_roots_mod_p(poly, p, s);
        if (roots.empty()) {
          last_problem = "class polynomial has no root mod " + p.get_str();
          continue;
        }
        j = transform_root(family, roots.front(), p, D);
      }
      auto [E1, E2] = curves_from_j(j, p, D);
      int trials = kSelectTrials;
      for (int round = 0; round < 3; ++round, trials *= 2) {
        try {
          CurveParams E = select_curve(E1, E2, cand.m, trials, s + round);
          if (verify_curve(E, 20, s)) return E;
          last_problem = "verification failed";
          break;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Inconclusive) throw;
          last_problem = e.what();
        }
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DegenerateJ || e.kind() == ErrorKind::NoCubicFactor ||
          e.kind() == ErrorKind::ZeroRoot) {
        last_problem = e.what();
        continue;
      }
      throw;
    }
  }
  throw Error(ErrorKind::SearchExhausted, "no verified curve for D = " + std::to_string(D) + " (" +
                                              last_problem + ")");
}

}  // namespace ramcm
