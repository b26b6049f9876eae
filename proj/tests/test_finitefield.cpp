#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ramcm/classpoly.hpp"
#include "ramcm/error.hpp"
#include "ramcm/finitefield.hpp"
#include "ramcm/forms.hpp"

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

bool trial_division(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<mpz_class> brute_roots(const std::vector<mpz_class>& f, long p) {
  std::vector<mpz_class> out;
  for (long x = 0; x < p; ++x)
    if (poly_eval(f, x, p) == 0) out.push_back(x);
  return out;
}

// Primes p = (u^2 + D v^2) / 4 with u, v odd.
std::vector<mpz_class> cm_primes(long long D, int count, long long u_start = 1) {
  std::vector<mpz_class> out;
  for (long long v = 1; static_cast<int>(out.size()) < count && v < 50; v += 2)
    for (long long u = u_start; static_cast<int>(out.size()) < count && u < 2000; u += 2) {
      mpz_class four_p = mpz_class(std::to_string(u * u)) + mpz_class(std::to_string(D * v * v));
      if (four_p % 4 != 0) continue;
      mpz_class p = four_p / 4;
      if (p > 3 && trial_division(p.get_si())) out.push_back(p);
    }
  return out;
}

Fp3Element eval3(const std::vector<mpz_class>& f, const Fp3Element& x) {
  Fp3Element acc = Fp3Element::from_int(x.field_ptr(), 0);
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + Fp3Element::from_int(x.field_ptr(), *it);
  return acc;
}

std::set<mpz_class> as_set(const std::vector<mpz_class>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("primality") {
  for (long n = 2; n < 5000; ++n) {
    CAPTURE(n);
    CHECK(is_prime(n) == trial_division(n));
  }
  for (long c : {561L, 1105L, 1729L, 2465L, 2821L, 6601L, 8911L, 41041L, 825265L}) CHECK_FALSE(is_prime(c));
  mpz_class m61 = (mpz_class(1) << 61) - 1, m127 = (mpz_class(1) << 127) - 1;
  CHECK(is_prime(m61));
  CHECK(is_prime(m127));
  CHECK_FALSE(is_prime(m61 * m127));
  CHECK_FALSE(is_prime(mpz_class("3825123056546413051")));  // strong pseudoprime to bases 2..23
  CHECK(is_prime(5));
}

TEST_CASE("modular square roots") {
  CHECK(sqrt_mod_p(4, 11) == mpz_class(2));
  CHECK(sqrt_mod_p(5, 11) == mpz_class(4));
  CHECK_FALSE(sqrt_mod_p(2, 5).has_value());
  for (long p : {3L, 5L, 13L, 17L, 41L, 97L, 113L, 193L, 257L}) {
    std::set<long> squares;
    for (long x = 0; x < p; ++x) squares.insert(x * x % p);
    for (long a = 0; a < p; ++a) {
      auto r = sqrt_mod_p(a, p);
      CHECK(r.has_value() == (squares.count(a) == 1));
      if (r) {
        CHECK((*r) * (*r) % p == a);
        CHECK(2 * (*r) <= p);
      }
    }
  }
  mpz_class big = (mpz_class(1) << 127) - 1;
  mpz_class a = mpz_class("123456789123456789123456789") % big;
  auto r = sqrt_mod_p(a * a % big, big);
  REQUIRE(r.has_value());
  CHECK((*r) * (*r) % big == a * a % big);
}

TEST_CASE("polynomial arithmetic") {
  mpz_class p = 101;
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    FpPoly a, m;
    for (int i = 0; i < 9; ++i) a.push_back(static_cast<long>(rng() % 101));
    for (int i = 0; i < 4; ++i) m.push_back(static_cast<long>(rng() % 101));
    m.push_back(1);
    a = poly_reduce(a, p);
    FpPoly q = poly_div(a, m, p), r = poly_mod(a, m, p);
    CHECK(poly_degree(r) < 4);
    CHECK(poly_sub(a, poly_mul(q, m, p), p) == r);
    FpPoly g = poly_gcd(poly_mul(a, m, p), m, p);
    CHECK(g == m);
  }
}

TEST_CASE("roots mod p") {
  CHECK(poly_roots_mod_p({-1, 1, 1}, 11) == std::vector<mpz_class>{3, 7});
  CHECK(poly_roots_mod_p({-1, 1}, 5) == std::vector<mpz_class>{1});
  CHECK(poly_roots_mod_p({1, 0, 1}, 7).empty());
  CHECK(poly_roots_mod_p({0, 0, 1}, 7) == std::vector<mpz_class>{0});
  std::mt19937_64 rng(9);
  for (long p : {2L, 3L, 7L, 31L, 101L, 257L}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<mpz_class> f;
      int deg = 1 + static_cast<int>(rng() % 7);
      for (int i = 0; i < deg; ++i) f.push_back(static_cast<long>(rng() % p));
      f.push_back(1);
      CAPTURE(p);
      auto r = poly_roots_mod_p(f, p, rng());
      CHECK(r == brute_roots(f, p));
      CHECK(r == poly_roots_mod_p(f, p, 12345));
    }
  }
}

TEST_CASE("cubic extension") {
  mpz_class p = 101;
  CHECK_THROWS_AS(Fp3Element::make_field(p, {mpz_class(-1) + p, 0, 0}), Error);  // x^3 - 1 has root 1
  // x^3 - 2 is irreducible mod 7 (2 is not a cube)
  auto f7 = Fp3Element::make_field(7, {5, 0, 0});
  Fp3Element x = Fp3Element::generator(f7);
  CHECK(x * x * x == Fp3Element::from_int(f7, 2));
  std::vector<mpz_class> cubic{0, 0, 0, 1};
  for (long q : {101L, 1009L, 65537L}) {
    mpz_class P = q;
    for (long c = 2;; ++c) {
      // first irreducible x^3 + x + c
      std::vector<mpz_class> m{c, 1, 0, 1};
      if (!poly_roots_mod_p(m, P).empty()) continue;
      auto field = Fp3Element::make_field(P, {c, 1, 0});
      std::mt19937_64 rng(q);
      for (int t = 0; t < 10; ++t) {
        Fp3Element e(field, {static_cast<long>(rng() % q), static_cast<long>(rng() % q),
                             static_cast<long>(rng() % q)});
        CHECK(e.frobenius().frobenius().frobenius() == e);
        if (!e.is_zero()) CHECK(e * e.inverse() == Fp3Element::from_int(field, 1));
        CHECK(e.pow(P * P * P - 1) == (e.is_zero() ? e : Fp3Element::from_int(field, 1)));
      }
      break;
    }
  }
}

TEST_CASE("cubic factor root of W299") {
  ClassPolynomial w = weber_poly(299);
  int tested = 0;
  for (const mpz_class& p : cm_primes(299, 6, 21)) {
    CAPTURE(p);
    Fp3Element r = cubic_factor_root(w.coeffs, p, 7);
    CHECK(eval3(w.coeffs, r).is_zero());
    CHECK(cubic_factor_root(w.coeffs, p, 7) == r);
    mpz_class j = transform_root(Family::weber(), r, 299);
    auto h = poly_roots_mod_p(hilbert_poly(299), p);
    CHECK(std::find(h.begin(), h.end(), j) != h.end());
    ++tested;
  }
  CHECK(tested == 6);
  CHECK(kind_of([] { cubic_factor_root({-6, 11, -6, 1}, 101); }) == ErrorKind::NoCubicFactor);
}

TEST_CASE("Weber transform with 3 | D") {
  ClassPolynomial w = weber_poly(195);
  for (const mpz_class& p : cm_primes(195, 4, 11)) {
    CAPTURE(p);
    mpz_class j = transform_root(Family::weber(), cubic_factor_root(w.coeffs, p, 3), 195);
    auto h = poly_roots_mod_p(hilbert_poly(195), p);
    CHECK(std::find(h.begin(), h.end(), j) != h.end());
  }
}

TEST_CASE("transform_root examples") {
  CHECK(transform_root(Family::ramanujan(), 1, 5) == 2);
  CHECK(mpz_class(-32768 % 5 + 5) % 5 == 2);
  CHECK(transform_root(Family::single_eta(3), 1, 101) == 75);
  CHECK(transform_root(Family::hilbert(), 17, 11) == 6);
  CHECK(kind_of([] { transform_root(Family::double_eta(5, 7), 3, 101); }) == ErrorKind::UnsupportedFamily);
  CHECK(kind_of([] { transform_root(Family::ramanujan(), 0, 101); }) == ErrorKind::ZeroRoot);
  CHECK(kind_of([] { transform_root(Family::single_eta(13), 101, 101); }) == ErrorKind::ZeroRoot);
}

TEST_CASE("T_D splits completely mod p and maps onto the roots of H_D") {
  int pairs = 0;
  for (long long D = 11; D < 5000 && pairs < 50; D += 24 * 7) {
    if (!is_squarefree(D)) continue;
    ClassPolynomial t = ramanujan_poly(D), h = hilbert_poly(D);
    for (const mpz_class& p : cm_primes(D, 2, 41)) {
      CAPTURE(D);
      CAPTURE(p);
      auto roots = poly_roots_mod_p(t, p);
      CHECK(static_cast<long>(roots.size()) == class_number(D));
      std::set<mpz_class> js;
      for (const auto& x : roots) js.insert(transform_root(Family::ramanujan(), x, p, D));
      CHECK(js == as_set(poly_roots_mod_p(h, p)));
      ++pairs;
    }
  }
  CHECK(pairs >= 40);
}

TEST_CASE("single eta transform consistency") {
  for (auto [D, l] : {std::pair{299LL, 13}, {35LL, 5}, {35LL, 7}, {195LL, 3}, {195LL, 5}}) {
    ClassPolynomial m = single_eta_poly(D, l), h = hilbert_poly(D);
    for (const mpz_class& p : cm_primes(D, 3, 31)) {
      CAPTURE(D);
      CAPTURE(l);
      CAPTURE(p);
      std::set<mpz_class> js;
      for (const auto& x : poly_roots_mod_p(m, p)) js.insert(transform_root(Family::single_eta(l), x, p, D));
      CHECK(js == as_set(poly_roots_mod_p(h, p)));
    }
  }
}
