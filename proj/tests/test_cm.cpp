#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ramcm/cm.hpp"
#include "ramcm/error.hpp"
#include "ramcm/finitefield.hpp"

using namespace ramcm;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Io;
}

CurveParams curve(long p, long a, long b, long m = 0) { return {p, a, b, m, 0, 0}; }

// All affine points by enumeration.
std::vector<EcPoint> all_points(const CurveParams& E) {
  std::vector<EcPoint> out;
  long p = E.p.get_si();
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      if ((y * y - (x * x * x + E.a.get_si() * x + E.b.get_si())) % p == 0) out.push_back(EcPoint::affine(x, y));
  return out;
}

}  // namespace

TEST_CASE("Cornacchia") {
  auto s = cornacchia(11, 5);
  REQUIRE(s.has_value());
  CHECK(s->u == 3);
  CHECK(s->v == 1);
  CHECK_FALSE(cornacchia(11, 7).has_value());
  auto t = cornacchia(35, 11);
  REQUIRE(t.has_value());
  CHECK(t->u == 3);
  CHECK(t->v == 1);
  // agreement with exhaustive search
  for (long long D : {11LL, 19LL, 35LL, 43LL, 299LL}) {
    for (long p = 5; p < 3000; ++p) {
      if (!is_prime(p)) continue;
      bool exists = false;
      for (long v = 1; D * v * v <= 4 * p && !exists; ++v) {
        long r = 4 * p - D * v * v;
        long u = static_cast<long>(std::llround(std::sqrt(static_cast<double>(r))));
        if (u * u == r) exists = true;
      }
      auto sol = cornacchia(D, p);
      CAPTURE(D);
      CAPTURE(p);
      CHECK(sol.has_value() == exists);
      if (sol) CHECK(sol->u * sol->u + static_cast<long>(D) * sol->v * sol->v == 4 * p);
    }
  }
}

TEST_CASE("candidate search") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    CmCandidate c = find_candidate(59, 32, seed);
    const CmSolution& s = c.solution;
    CHECK(4 * s.p == s.u * s.u + 59 * s.v * s.v);
    CHECK(mpz_sizeinbase(s.p.get_mpz_t(), 2) == 32);
    CHECK(s.u % 2 != 0);
    CHECK(s.v % 2 != 0);
    CHECK(is_prime(c.m));
    CHECK((c.m == s.p + 1 - s.u || c.m == s.p + 1 + s.u));
    if (is_prime(s.p + 1 - s.u)) CHECK(c.m == s.p + 1 - s.u);
    CHECK(find_candidate(59, 32, seed).m == c.m);
  }
  CmCandidate tiny = find_candidate(11, 3, 1);
  CHECK(tiny.solution.p == 5);
  CHECK(tiny.m == 3);
  // 11 is the only 4-bit prime with 4p = u^2 + 35 v^2, and 9, 15 are composite
  CHECK(kind_of([] { find_candidate(35, 4, 1); }) == ErrorKind::SearchExhausted);
  CHECK(find_candidate(35, 16, 1).solution.p != 11);
}

TEST_CASE("group law") {
  CurveParams E = curve(5, 4, 2, 3);
  EcPoint P = EcPoint::affine(3, 1);
  REQUIRE(on_curve(P, E));
  CHECK(point_add(P, EcPoint::at_infinity(), E) == P);
  CHECK(point_add(P, point_neg(P, E), E).infinity);
  CHECK(point_neg(P, E) == EcPoint::affine(3, 4));
  CHECK(scalar_mul(3, P, E).infinity);
  CHECK_FALSE(scalar_mul(2, P, E).infinity);
  // associativity and commutativity on a bigger curve
  CurveParams F = curve(1009, 3, 7);
  auto pts = all_points(F);
  for (std::size_t i = 0; i + 2 < pts.size() && i < 60; i += 3) {
    const EcPoint &A = pts[i], &B = pts[i + 1], &C = pts[i + 2];
    CHECK(point_add(A, B, F) == point_add(B, A, F));
    CHECK(point_add(point_add(A, B, F), C, F) == point_add(A, point_add(B, C, F), F));
    CHECK(on_curve(point_add(A, B, F), F));
    CHECK(scalar_mul(5, A, F) == point_add(scalar_mul(2, A, F), scalar_mul(3, A, F), F));
  }
  mpz_class n = count_points_naive(F);
  CHECK(n == static_cast<long>(pts.size()) + 1);
  for (std::size_t i = 0; i < pts.size(); i += 37) CHECK(scalar_mul(n, pts[i], F).infinity);
}

TEST_CASE("random points") {
  CurveParams F = curve(1009, 3, 7);
  for (std::uint64_t s = 0; s < 20; ++s) {
    EcPoint P = random_point(F, s);
    CHECK(on_curve(P, F));
    CHECK_FALSE(P.infinity);
    CHECK(2 * P.y <= F.p);
    CHECK(random_point(F, s) == P);
  }
}

TEST_CASE("curves from j") {
  auto [E1, E2] = curves_from_j(2, 5);
  CHECK(E1.a == 1);
  CHECK(E1.b == 4);
  CHECK(E2.a == 4);
  CHECK(E2.b == 2);
  CHECK(count_points_naive(E1) == 9);
  CHECK(count_points_naive(E2) == 3);
  CHECK(kind_of([] { curves_from_j(0, 5); }) == ErrorKind::DegenerateJ);
  CHECK(kind_of([] { curves_from_j(1728, 1009); }) == ErrorKind::DegenerateJ);
  for (long p : {101L, 103L, 1009L}) {
    for (long j : {2L, 5L, 77L}) {
      auto [A, B] = curves_from_j(j, p);
      CHECK(count_points_naive(A) + count_points_naive(B) == 2 * p + 2);
      // j(E) = 1728 * 4a^3 / (4a^3 + 27b^2)
      FpElement a(A.a, p), b(A.b, p);
      FpElement four_a3 = FpElement(4, p) * a * a * a;
      FpElement jj = FpElement(1728, p) * four_a3 / (four_a3 + FpElement(27, p) * b * b);
      CHECK(jj.value() == j % p);
    }
  }
}

TEST_CASE("twist selection") {
  auto [E1, E2] = curves_from_j(2, 5);
  CurveParams s3 = select_curve(E1, E2, 3, 64, 1);
  CHECK(s3.a == 4);
  CHECK(s3.b == 2);
  CHECK(s3.m == 3);
  CurveParams s9 = select_curve(E1, E2, 9, 64, 1);
  CHECK(s9.a == 1);
  CHECK(s9.m == 9);
  for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(scalar_mul(3, random_point(s3, seed), s3).infinity);
}

TEST_CASE("verification") {
  CurveParams E = curve(5, 4, 2, 3);
  CHECK(verify_curve(E, 20, 1));
  CurveParams bad = E;
  bad.m = 5;
  CHECK_FALSE(verify_curve(bad, 20, 1));
  CHECK_FALSE(verify_curve(curve(5, 0, 0, 3), 20, 1));
  CHECK_FALSE(verify_curve(curve(1009, 3, 7, 1009 + 1 + 200), 20, 1));
}

TEST_CASE("end-to-end pipeline") {
  CurveParams E = generate_prime_order_curve(11, 3, Family::ramanujan(), 1);
  CHECK(E.p == 5);
  CHECK(E.m == 3);
  CHECK(E.a == 4);
  CHECK(E.b == 2);
  CHECK(count_points_naive(E) == 3);
  for (Family f : {Family::ramanujan(), Family::hilbert(), Family::weber()}) {
    CAPTURE(f.tag());
    CurveParams C = generate_prime_order_curve(59, 64, f, 5);
    CHECK(verify_curve(C, 20, 9));
    CHECK(is_prime(C.m));
    CHECK(C == generate_prime_order_curve(59, 64, f, 5));
  }
  CurveParams S = generate_prime_order_curve(299, 48, Family::single_eta(13), 2);
  CHECK(verify_curve(S, 20, 3));
  CHECK(kind_of([] { generate_prime_order_curve(14, 32, Family::hilbert(), 1); }) ==
        ErrorKind::InvalidDiscriminant);
  CHECK(kind_of([] { generate_prime_order_curve(299, 32, Family::double_eta(5, 7), 1); }) ==
        ErrorKind::UnsupportedFamily);
}

TEST_CASE("small fields agree with brute-force counts") {
  for (long long D : {11LL, 19LL, 43LL, 59LL}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      CurveParams E = generate_prime_order_curve(D, 12, Family::hilbert(), seed);
      CAPTURE(D);
      CHECK(count_points_naive(E) == E.m);
      mpz_class t = E.p + 1 - E.m;
      CHECK(t * t <= 4 * E.p);
    }
  }
}
