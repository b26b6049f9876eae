#include "ramcm/finitefield.hpp"

#include <algorithm>

#include "ramcm/error.hpp"

namespace ramcm {

namespace {

mpz_class mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& p) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return r;
}

mpz_class invert(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
    throw Error(ErrorKind::InvalidArgument, "element " + a.get_str() + " is not invertible mod " + p.get_str());
  return r;
}

void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly make_monic(FpPoly f, const mpz_class& p) {
  trim(f);
  if (f.empty()) return f;
  mpz_class inv = invert(f.back(), p);
  for (auto& c : f) c = mod(c * inv, p);
  return f;
}

FpPoly x_poly() { return {0, 1}; }

FpPoly random_poly(gmp_randclass& rng, int degree_below, const mpz_class& p) {
  FpPoly f(degree_below);
  for (auto& c : f) c = rng.get_z_range(p);
  trim(f);
  return f;
}

// Splits a squarefree product of distinct linear factors into its roots.
void split_linear(const FpPoly& f, const mpz_class& p, gmp_randclass& rng, std::vector<mpz_class>& out) {
  int d = poly_degree(f);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(mod(-f[0] * invert(f[1], p), p));
    return;
  }
  mpz_class half = (p - 1) / 2;
  for (;;) {
    FpPoly base{rng.get_z_range(p), 1};
    FpPoly t = poly_powmod(base, half, f, p);
    t = poly_sub(t, FpPoly{1}, p);
    FpPoly g = poly_gcd(f, t, p);
    int dg = poly_degree(g);
    if (dg > 0 && dg < d) {
      split_linear(g, p, rng, out);
      split_linear(poly_div(f, g, p), p, rng, out);
      return;
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- FpElement

FpElement::FpElement(const mpz_class& value, const mpz_class& p) : v_(mod(value, p)), p_(p) {
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be at least 2");
}

FpElement FpElement::operator-() const { return FpElement(-v_, p_); }
FpElement operator+(const FpElement& a, const FpElement& b) { return FpElement(a.v_ + b.v_, a.p_); }
FpElement operator-(const FpElement& a, const FpElement& b) { return FpElement(a.v_ - b.v_, a.p_); }
FpElement operator*(const FpElement& a, const FpElement& b) { return FpElement(a.v_ * b.v_, a.p_); }
FpElement operator/(const FpElement& a, const FpElement& b) { return a * b.inverse(); }
FpElement FpElement::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(-e);
  return FpElement(powm(v_, e, p_), p_);
}
FpElement FpElement::inverse() const { return FpElement(invert(v_, p_), p_); }

// ---------------------------------------------------------------- primality

bool is_prime(const mpz_class& n, int rounds, std::uint64_t seed) {
  if (n < 2) return false;
  static const int kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (int b : kBases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  mpz_class d = n - 1;
  unsigned long s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++s;
  }
  mpz_class nm1 = n - 1;
  auto witness = [&](const mpz_class& a) {
    mpz_class x = powm(a, d, n);
    if (x == 1 || x == nm1) return false;
    for (unsigned long i = 1; i < s; ++i) {
      x = mod(x * x, n);
      if (x == nm1) return false;
    }
    return true;
  };
  for (int b : kBases)
    if (witness(mpz_class(b))) return false;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(mpz_class(std::to_string(seed)));
  mpz_class span = n - 3;
  for (int i = 0; i < rounds; ++i)
    if (witness(rng.get_z_range(span) + 2)) return false;
  return true;
}

std::optional<mpz_class> sqrt_mod_p(const mpz_class& a0, const mpz_class& p) {
  mpz_class a = mod(a0, p);
  if (a == 0) return mpz_class(0);
  if (p == 2) return a;
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
  // Tonelli-Shanks
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  mpz_class c = powm(z, q, p);
  mpz_class r = powm(a, (q + 1) / 2, p);
  mpz_class t = powm(a, q, p);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    mpz_class tt = t;
    while (tt != 1) {
      tt = mod(tt * tt, p);
      ++i;
    }
    mpz_class b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = mod(b * b, p);
    r = mod(r * b, p);
    c = mod(b * b, p);
    t = mod(t * c, p);
    m = i;
  }
  mpz_class other = p - r;
  return std::min(r, other);
}

// --------------------------------------------------------------- polynomials

FpPoly poly_reduce(const std::vector<mpz_class>& coeffs, const mpz_class& p) {
  FpPoly f(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) f[i] = mod(coeffs[i], p);
  trim(f);
  return f;
}

int poly_degree(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

FpPoly poly_mul(const FpPoly& a, const FpPoly& b, const mpz_class& p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  for (auto& c : r) c = mod(c, p);
  trim(r);
  return r;
}

FpPoly poly_sub(const FpPoly& a, const FpPoly& b, const mpz_class& p) {
  FpPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    mpz_class x = i < a.size() ? a[i] : mpz_class(0);
    mpz_class y = i < b.size() ? b[i] : mpz_class(0);
    r[i] = mod(x - y, p);
  }
  trim(r);
  return r;
}

namespace {

void divmod(const FpPoly& a, const FpPoly& m, const mpz_class& p, FpPoly* quot, FpPoly* rem) {
  if (m.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  FpPoly r = a;
  trim(r);
  int dm = poly_degree(m);
  mpz_class lead_inv = invert(m.back(), p);
  FpPoly q(r.size() > m.size() - 1 ? r.size() - m.size() + 1 : 0);
  for (int i = poly_degree(r); i >= dm; --i) {
    if (r[i] == 0) continue;
    mpz_class c = mod(r[i] * lead_inv, p);
    q[i - dm] = c;
    for (int j = 0; j <= dm; ++j) r[i - dm + j] = mod(r[i - dm + j] - c * m[j], p);
  }
  trim(r);
  trim(q);
  if (quot) *quot = std::move(q);
  if (rem) *rem = std::move(r);
}

}  // namespace

FpPoly poly_mod(const FpPoly& a, const FpPoly& m, const mpz_class& p) {
  FpPoly r;
  divmod(a, m, p, nullptr, &r);
  return r;
}

FpPoly poly_div(const FpPoly& a, const FpPoly& m, const mpz_class& p) {
  FpPoly q;
  divmod(a, m, p, &q, nullptr);
  return q;
}

FpPoly poly_gcd(FpPoly a, FpPoly b, const mpz_class& p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

FpPoly poly_powmod(const FpPoly& base, const mpz_class& e, const FpPoly& m, const mpz_class& p) {
  FpPoly result{1};
  result = poly_mod(result, m, p);
  FpPoly b = poly_mod(base, m, p);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = poly_mod(poly_mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = poly_mod(poly_mul(result, b, p), m, p);
  }
  return result;
}

mpz_class poly_eval(const std::vector<mpz_class>& coeffs, const mpz_class& x, const mpz_class& p) {
  mpz_class acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = mod(acc * x + coeffs[i], p);
  return acc;
}

std::vector<mpz_class> poly_roots_mod_p(const std::vector<mpz_class>& coeffs, const mpz_class& p,
                                        std::uint64_t seed) {
  FpPoly f = poly_reduce(coeffs, p);
  std::vector<mpz_class> roots;
  if (poly_degree(f) <= 0) return roots;
  if (p == 2) {
    for (int x = 0; x < 2; ++x)
      if (poly_eval(f, x, p) == 0) roots.emplace_back(x);
    return roots;
  }
  f = make_monic(f, p);
  FpPoly xp = poly_powmod(x_poly(), p, f, p);
  FpPoly g = poly_gcd(f, poly_sub(xp, x_poly(), p), p);
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(mpz_class(std::to_string(seed)));
  // x = 0 is handled separately so the splitter only meets nonzero roots
  if (!g.empty() && g[0] == 0) {
    roots.emplace_back(0);
    g = poly_div(g, x_poly(), p);
  }
  split_linear(g, p, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<mpz_class> poly_roots_mod_p(const ClassPolynomial& poly, const mpz_class& p, std::uint64_t seed) {
  return poly_roots_mod_p(poly.coeffs, p, seed);
}

// ------------------------------------------------------------------ F_p^3

std::shared_ptr<const Fp3Field> Fp3Element::make_field(const mpz_class& p, const std::array<mpz_class, 3>& m) {
  auto f = std::make_shared<Fp3Field>();
  f->p = p;
  for (int i = 0; i < 3; ++i) f->m[i] = mod(m[i], p);
  FpPoly cubic{f->m[0], f->m[1], f->m[2], 1};
  // a cubic is irreducible iff it has no root
  FpPoly xp = poly_powmod(x_poly(), p, cubic, p);
  if (poly_degree(poly_gcd(cubic, poly_sub(xp, x_poly(), p), p)) > 0)
    throw Error(ErrorKind::InvalidArgument, "cubic modulus is reducible mod " + p.get_str());
  return f;
}

Fp3Element::Fp3Element(std::shared_ptr<const Fp3Field> field, std::array<mpz_class, 3> coords)
    : field_(std::move(field)), c_(std::move(coords)) {
  for (auto& c : c_) c = mod(c, field_->p);
}

Fp3Element Fp3Element::from_int(std::shared_ptr<const Fp3Field> field, const mpz_class& v) {
  return Fp3Element(std::move(field), {v, 0, 0});
}

Fp3Element Fp3Element::generator(std::shared_ptr<const Fp3Field> field) {
  return Fp3Element(std::move(field), {0, 1, 0});
}

bool Fp3Element::is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }

Fp3Element operator+(const Fp3Element& a, const Fp3Element& b) {
  return Fp3Element(a.field_, {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2]});
}

Fp3Element operator-(const Fp3Element& a, const Fp3Element& b) {
  return Fp3Element(a.field_, {a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2]});
}

Fp3Element operator*(const Fp3Element& a, const Fp3Element& b) {
  const auto& m = a.field_->m;
  std::array<mpz_class, 5> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i + j] += a.c_[i] * b.c_[j];
  // x^3 = -(m2 x^2 + m1 x + m0)
  for (int n = 4; n >= 3; --n) {
    mpz_class c = t[n];
    t[n] = 0;
    t[n - 1] -= c * m[2];
    t[n - 2] -= c * m[1];
    t[n - 3] -= c * m[0];
  }
  return Fp3Element(a.field_, {t[0], t[1], t[2]});
}

Fp3Element Fp3Element::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(-e);
  Fp3Element result = from_int(field_, 1);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
  }
  return result;
}

Fp3Element Fp3Element::inverse() const {
  if (is_zero()) throw Error(ErrorKind::ZeroRoot, "inverse of zero in F_p^3");
  const mpz_class& p = field_->p;
  mpz_class order = p * p * p - 1;
  return pow(order - 1);
}

Fp3Element cubic_factor_root(const std::vector<mpz_class>& coeffs, const mpz_class& p, std::uint64_t seed) {
  FpPoly f = make_monic(poly_reduce(coeffs, p), p);
  if (poly_degree(f) < 3) throw Error(ErrorKind::NoCubicFactor, "polynomial has degree below 3");
  FpPoly x = x_poly();
  FpPoly xp = poly_powmod(x, p, f, p);
  FpPoly linear = poly_gcd(f, poly_sub(xp, x, p), p);
  FpPoly rest = poly_div(f, linear, p);
  if (poly_degree(rest) < 3) throw Error(ErrorKind::NoCubicFactor, "no cubic factor mod " + p.get_str());
  FpPoly x1 = poly_mod(xp, rest, p);
  FpPoly x2 = poly_powmod(x1, p, rest, p);
  FpPoly x3 = poly_powmod(x2, p, rest, p);
  FpPoly cubics = poly_gcd(rest, poly_sub(x3, x, p), p);
  if (poly_degree(cubics) < 3) throw Error(ErrorKind::NoCubicFactor, "no cubic factor mod " + p.get_str());

  gmp_randclass rng(gmp_randinit_default);
  rng.seed(mpz_class(std::to_string(seed)));
  mpz_class e = (p * p * p - 1) / 2;
  while (poly_degree(cubics) > 3) {
    int d = poly_degree(cubics);
    FpPoly a = random_poly(rng, d, p);
    if (poly_degree(a) <= 0) continue;
    FpPoly t = poly_sub(poly_powmod(a, e, cubics, p), FpPoly{1}, p);
    FpPoly g = poly_gcd(cubics, t, p);
    int dg = poly_degree(g);
    if (dg <= 0 || dg >= d) continue;
    FpPoly other = poly_div(cubics, g, p);
    cubics = poly_degree(g) <= poly_degree(other) ? g : make_monic(other, p);
  }
  auto field = Fp3Element::make_field(p, {cubics[0], cubics[1], cubics[2]});
  return Fp3Element::generator(field);
}

// ------------------------------------------------------------- transforms

namespace {

mpz_class single_eta_j(int l, const mpz_class& x, const mpz_class& p) {
  FpElement X(x, p);
  auto c = [&](long v) { return FpElement(v, p); };
  FpElement num(0, p);
  switch (l) {
    case 3: num = (X + c(27)) * (X + c(3)).pow(3); break;
    case 5: num = (X * X + c(10) * X + c(5)).pow(3); break;
    case 7: num = (X * X + c(13) * X + c(49)) * (X * X + c(5) * X + c(1)).pow(3); break;
    case 13:
      num = (X * X + c(5) * X + c(13)) *
            (X.pow(4) + c(7) * X.pow(3) + c(20) * X * X + c(19) * X + c(1)).pow(3);
      break;
    default: throw Error(ErrorKind::InvalidArgument, "unsupported l = " + std::to_string(l));
  }
  return (num / X).value();
}

}  // namespace

mpz_class transform_root(const Family& family, const mpz_class& x0, const mpz_class& p, long long D) {
  (void)D;
  mpz_class x = mod(x0, p);
  switch (family.kind) {
    case FamilyKind::Hilbert: return x;
    case FamilyKind::DoubleEta:
      throw Error(ErrorKind::UnsupportedFamily, "no root transformation for double eta quotients");
    case FamilyKind::Weber:
      throw Error(ErrorKind::InvalidArgument, "Weber roots live in F_p^3; use the extension overload");
    default: break;
  }
  if (x == 0) throw Error(ErrorKind::ZeroRoot, "root 0 has no j-invariant");
  if (family.kind == FamilyKind::SingleEta) return single_eta_j(family.l, x, p);
  // Ramanujan: j = (x^12 - 6 x^6 - 27)^3 / x^18
  FpElement X(x, p);
  FpElement x6 = X.pow(6);
  FpElement num = (x6 * x6 - FpElement(6, p) * x6 - FpElement(27, p)).pow(3);
  return (num / X.pow(18)).value();
}

mpz_class transform_root(const Family& family, const Fp3Element& x, long long D) {
  if (family.kind != FamilyKind::Weber) {
    if (!x.in_prime_field())
      throw Error(ErrorKind::InvalidArgument, "root outside F_p for family " + family.tag());
    return transform_root(family, x.coords()[0], x.field().p, D);
  }
  if (x.is_zero()) throw Error(ErrorKind::ZeroRoot, "root 0 has no j-invariant");
  auto field = x.field_ptr();
  // gamma = 2^12 x^-24 (3 !| D) or 2^4 x^-8 (3 | D); j = (gamma - 16)^3 / gamma
  Fp3Element gamma = D % 3 == 0 ? Fp3Element::from_int(field, 16) * x.pow(-8)
                                : Fp3Element::from_int(field, 4096) * x.pow(-24);
  Fp3Element t = gamma - Fp3Element::from_int(field, 16);
  Fp3Element j = t * t * t * gamma.inverse();
  if (!j.in_prime_field())
    throw Error(ErrorKind::NotInPrimeField, "Weber image does not lie in F_p");
  return j.coords()[0];
}

}  // namespace ramcm
