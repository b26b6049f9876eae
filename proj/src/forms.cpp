#include "ramcm/forms.hpp"

#include <cstdlib>
#include <numeric>
#include <tuple>

#include "ramcm/error.hpp"

namespace ramcm {

namespace {

using i128 = __int128;

constexpr long long kSystemSearchRadius = 64;

long long floor_div(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return static_cast<long long>(q);
}

// r x + s y = g with g = gcd(r, s) >= 0.
std::tuple<long long, long long, long long> ext_gcd(long long r, long long s) {
  long long old_r = r, cur_r = s;
  long long old_x = 1, cur_x = 0;
  long long old_y = 0, cur_y = 1;
  while (cur_r != 0) {
    long long q = old_r / cur_r;
    std::tie(old_r, cur_r) = std::make_tuple(cur_r, old_r - q * cur_r);
    std::tie(old_x, cur_x) = std::make_tuple(cur_x, old_x - q * cur_x);
    std::tie(old_y, cur_y) = std::make_tuple(cur_y, old_y - q * cur_y);
  }
  if (old_r < 0) return {-old_r, -old_x, -old_y};
  return {old_r, old_x, old_y};
}

long long mod_floor(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  for (long long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

mpz_class QuadraticForm::discriminant() const {
  mpz_class A(std::to_string(a)), B(std::to_string(b)), C(std::to_string(c));
  return B * B - 4 * A * C;
}

std::string QuadraticForm::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

Discriminant::Discriminant(long long D) : D_(D) { require_discriminant(D); }

bool Discriminant::ramanujan_ok() const { return D_ % 24 == 11 && is_squarefree(D_); }

bool is_squarefree(long long n) {
  if (n <= 0) return false;
  for (long long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    n /= q;
    if (n % q == 0) return false;
  }
  return true;
}

void require_discriminant(long long D) {
  if (D <= 0 || D % 4 != 3)
    throw Error(ErrorKind::InvalidDiscriminant,
                "D = " + std::to_string(D) + " must be positive and 3 mod 4");
}

std::vector<QuadraticForm> reduced_forms(long long D) {
  require_discriminant(D);
  std::vector<QuadraticForm> out;
  for (long long a = 1; 3 * a * a <= D; ++a) {
    // b is odd since D is
    for (long long b = (a % 2 ? -a : -a + 1); b <= a; b += 2) {
      i128 num = static_cast<i128>(b) * b + D;
      if (num % (4 * a) != 0) continue;
      long long c = static_cast<long long>(num / (4 * a));
      if (c < a) continue;
      if ((std::llabs(b) == a || a == c) && b < 0) continue;
      if (std::gcd(std::gcd(a, std::llabs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

long class_number(long long D) { return static_cast<long>(reduced_forms(D).size()); }

QuadraticForm principal_form(long long D) {
  require_discriminant(D);
  return {1, 1, (1 + D) / 4};
}

QuadraticForm reduce(QuadraticForm f) {
  if (f.a <= 0 || f.c <= 0)
    throw Error(ErrorKind::InvalidArgument, "reduce: form " + f.to_string() + " is not positive definite");
  i128 D = static_cast<i128>(4) * f.a * f.c - static_cast<i128>(f.b) * f.b;
  if (D <= 0)
    throw Error(ErrorKind::InvalidArgument, "reduce: form " + f.to_string() + " is not positive definite");
  for (;;) {
    if (f.b <= -f.a || f.b > f.a) {
      long long k = floor_div(static_cast<i128>(f.a) - f.b, static_cast<i128>(2) * f.a);
      f.b += 2 * f.a * k;
      f.c = static_cast<long long>((static_cast<i128>(f.b) * f.b + D) / (4 * static_cast<i128>(f.a)));
    }
    if (f.a > f.c) {
      f = {f.c, -f.b, f.a};
      continue;
    }
    break;
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

int kronecker(const mpz_class& a, const mpz_class& n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "kronecker: n must be nonzero");
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

FormSystem n_system(long long D, long long N) {
  require_discriminant(D);
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "n_system: N must be positive");
  for (long long q : prime_factors(N)) {
    if (kronecker(mpz_class(std::to_string(-D)), mpz_class(std::to_string(q))) == -1)
      throw Error(ErrorKind::InertPrime,
                  std::to_string(q) + " is inert in Q(sqrt(-" + std::to_string(D) + "))");
  }
  FormSystem sys;
  sys.N = N;
  long long modulus = 4 * N;
  sys.B0 = -1;
  for (long long b = 1; b < modulus; b += 2) {
    if ((static_cast<i128>(b) * b + D) % modulus == 0) {
      sys.B0 = b;
      break;
    }
  }
  if (sys.B0 < 0)
    throw Error(ErrorKind::NoSystem, "no odd B0 with B0^2 = -D mod " + std::to_string(modulus));

  for (const QuadraticForm& f : reduced_forms(D)) {
    bool found = false;
    QuadraticForm best;
    for (long long radius = 1; radius <= kSystemSearchRadius && !found; ++radius) {
      for (long long r = -radius; r <= radius; ++r) {
        for (long long s = -radius; s <= radius; ++s) {
          if (std::gcd(r, s) != 1) continue;
          i128 A128 = static_cast<i128>(f.a) * r * r + static_cast<i128>(f.b) * r * s +
                      static_cast<i128>(f.c) * s * s;
          long long A = static_cast<long long>(A128);
          if (std::gcd(A, N) != 1) continue;
          if (found && A >= best.a) continue;
          // complete (r, s) to [[r, t], [s, u]] of determinant 1
          auto [g, x, y] = ext_gcd(r, s);
          (void)g;
          long long u = x, t = -y;
          i128 B = 2 * static_cast<i128>(f.a) * r * t + static_cast<i128>(f.b) * (static_cast<i128>(r) * u + static_cast<i128>(s) * t) +
                   2 * static_cast<i128>(f.c) * s * u;
          // B + 2 A n = B0 mod 2N
          long long half = static_cast<long long>(((static_cast<i128>(sys.B0) - B) / 2) % N);
          auto [g2, ainv, unused] = ext_gcd(mod_floor(A, N), N);
          (void)g2;
          (void)unused;
          long long n = mod_floor(static_cast<long long>(static_cast<i128>(half) * ainv % N), N);
          i128 Bn = B + 2 * static_cast<i128>(A) * n;
          i128 period = 2 * static_cast<i128>(A) * N;
          // bring Bn into (-A N, A N]
          Bn -= period * floor_div(Bn + static_cast<i128>(A) * N - 1, period);
          i128 num = Bn * Bn + D;
          if (num % (4 * static_cast<i128>(A)) != 0) continue;
          QuadraticForm cand{A, static_cast<long long>(Bn), static_cast<long long>(num / (4 * static_cast<i128>(A)))};
          best = cand;
          found = true;
        }
      }
    }
    if (!found || reduce(best) != f)
      throw Error(ErrorKind::NoSystem,
                  "could not move " + f.to_string() + " into a " + std::to_string(N) + "-system");
    sys.forms.push_back(best);
  }
  return sys;
}

}  // namespace ramcm
