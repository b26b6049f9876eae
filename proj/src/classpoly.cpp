#include "ramcm/classpoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "ramcm/error.hpp"
#include "ramcm/precision.hpp"

namespace ramcm {

namespace {

mpz_class big(long long v) { return mpz_class(std::to_string(v)); }

long long mod_floor(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

long long mod_inverse(long long a, long long m) {
  mpz_class inv;
  mpz_class A = big(mod_floor(a, m)), M = big(m);
  if (mpz_invert(inv.get_mpz_t(), A.get_mpz_t(), M.get_mpz_t()) == 0)
    throw Error(ErrorKind::MatrixContract, std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return inv.get_si();
}

long mpz_mod_long(const mpz_class& x, long m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

HalfPlanePoint form_point(const QuadraticForm& f, long long D, long prec) {
  return HalfPlanePoint::from_form(f.a, f.b, D, prec);
}

bool is_supported_single(int l) { return l == 3 || l == 5 || l == 7 || l == 13; }

bool is_supported_pair(int p1, int p2) { return (p1 == 3 && p2 == 13) || (p1 == 5 && p2 == 7); }

long initial_prec(const Family& family, long long D, const BuildOptions& opts) {
  double est = family_prec(D, family) * 1.1 * opts.precision_scale;
  long prec = static_cast<long>(std::ceil(est)) + kGuardBits;
  return std::max(prec, kMinPrec);
}

template <class Invariants>
ClassPolynomial build_with_ladder(const Family& family, long long D, const BuildOptions& opts,
                                  BuildReport* report, Invariants invariants) {
  long prec = opts.fixed_prec > 0 ? std::max(opts.fixed_prec, kMinPrec) : initial_prec(family, D, opts);
  int allowed = opts.fixed_prec > 0 ? 1 : 1 + std::max(0, opts.max_retries);
  double worst = 0.0;
  for (int attempt = 1; attempt <= allowed; ++attempt) {
    try {
      std::vector<ApComplex> roots = invariants(prec);
      std::vector<ApComplex> complex_coeffs = poly_from_roots(roots, prec);
      ClassPolynomial poly{family, D, round_to_integers(complex_coeffs, kRoundingTolerance, &worst)};
      if (report) *report = {prec, worst, attempt};
      return poly;
    } catch (const PrecisionExhaustedError& e) {
      worst = e.worst_residual();
      if (attempt < allowed) prec *= 2;
    }
  }
  throw PrecisionExhaustedError(family.tag() + " polynomial for D = " + std::to_string(D) +
                                    " did not round at " + std::to_string(prec) +
                                    " bits (worst residual " + std::to_string(worst) + ")",
                                worst, 2 * prec);
}

}  // namespace

// ------------------------------------------------------------------ family

std::string Family::tag() const {
  switch (kind) {
    case FamilyKind::Hilbert: return "hilbert";
    case FamilyKind::Weber: return "weber";
    case FamilyKind::SingleEta: return "eta-l:" + std::to_string(l);
    case FamilyKind::DoubleEta: return "eta-p1p2:" + std::to_string(p1) + "," + std::to_string(p2);
    case FamilyKind::Ramanujan: return "ramanujan";
  }
  return "unknown";
}

Family Family::from_tag(const std::string& tag) {
  if (tag == "hilbert") return hilbert();
  if (tag == "weber") return weber();
  if (tag == "ramanujan") return ramanujan();
  try {
    if (tag.rfind("eta-l:", 0) == 0) return single_eta(std::stoi(tag.substr(6)));
    if (tag.rfind("eta-p1p2:", 0) == 0) {
      std::string rest = tag.substr(9);
      auto comma = rest.find(',');
      if (comma != std::string::npos)
        return double_eta(std::stoi(rest.substr(0, comma)), std::stoi(rest.substr(comma + 1)));
    }
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family tag '" + tag + "'");
}

std::string ClassPolynomial::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = coeffs[i];
    if (c == 0) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) out << mag.get_str();
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
  }
  if (first) out << "0";
  return out.str();
}

// -------------------------------------------------------- polynomial plumbing

std::vector<mpz_class> round_to_integers(const std::vector<ApComplex>& coeffs, double tol,
                                         double* worst_residual) {
  if (!(tol > 0.0 && tol < 0.5)) throw Error(ErrorKind::InvalidArgument, "rounding tolerance must lie in (0, 0.5)");
  std::vector<mpz_class> out;
  out.reserve(coeffs.size());
  double worst = 0.0;
  for (const ApComplex& c : coeffs) {
    mpz_class n = c.re().round();
    double re_res = std::fabs((c.re() - ApReal(n, c.prec())).to_double());
    double im_res = std::fabs(c.im().to_double());
    worst = std::max({worst, re_res, im_res});
    out.push_back(n);
  }
  if (worst_residual) *worst_residual = worst;
  if (worst > tol) {
    long hint = coeffs.empty() ? kMinPrec : 2 * coeffs.front().prec();
    throw PrecisionExhaustedError("coefficient residual " + std::to_string(worst) + " exceeds tolerance",
                                  worst, hint);
  }
  return out;
}

std::vector<ApComplex> poly_from_roots(const std::vector<ApComplex>& roots, long prec) {
  std::vector<ApComplex> c{ApComplex(1.0, 0.0, prec)};
  for (const ApComplex& r0 : roots) {
    ApComplex r = r0.with_prec(prec);
    std::vector<ApComplex> next(c.size() + 1, ApComplex(prec));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

// ----------------------------------------------------------- preconditions

void check_family(const Family& family, long long D) {
  require_discriminant(D);
  mpz_class minus_d = -big(D);
  switch (family.kind) {
    case FamilyKind::Hilbert: return;
    case FamilyKind::Weber:
      if (D % 8 != 3)
        throw Error(ErrorKind::InvalidDiscriminant, "Weber polynomials need D = 3 mod 8, got " + std::to_string(D));
      return;
    case FamilyKind::SingleEta:
      if (!is_supported_single(family.l))
        throw Error(ErrorKind::InvalidArgument, "single eta quotient needs l in {3,5,7,13}, got " +
                                                    std::to_string(family.l));
      if (kronecker(minus_d, family.l) == -1)
        throw Error(ErrorKind::InertPrime, std::to_string(family.l) + " is inert for D = " + std::to_string(D));
      if (D % family.l != 0)
        throw Error(ErrorKind::NotRamified, "eta(tau/" + std::to_string(family.l) +
                                                ")/eta(tau) gives a class invariant only when " +
                                                std::to_string(family.l) + " divides D = " + std::to_string(D));
      return;
    case FamilyKind::DoubleEta:
      if (!is_supported_pair(family.p1, family.p2))
        throw Error(ErrorKind::UnsupportedPair, "double eta quotient supports (3,13) and (5,7), got (" +
                                                    std::to_string(family.p1) + "," + std::to_string(family.p2) + ")");
      for (int p : {family.p1, family.p2})
        if (kronecker(minus_d, p) == -1)
          throw Error(ErrorKind::InertPrime, std::to_string(p) + " is inert for D = " + std::to_string(D));
      return;
    case FamilyKind::Ramanujan:
      if (D % 24 != 11 || !is_squarefree(D))
        throw Error(ErrorKind::InvalidDiscriminant,
                    "Ramanujan polynomials need squarefree D = 11 mod 24, got " + std::to_string(D));
      return;
  }
}

long expected_degree(const Family& family, long long D) {
  long h = class_number(D);
  return family.kind == FamilyKind::Weber ? 3 * h : h;
}

// ------------------------------------------------------------------ Hilbert

ApComplex j_invariant(const HalfPlanePoint& tau, long prec) {
  long work = prec + kGuardBits;
  ApComplex ratio = eta(tau.scaled(2), work) / eta(tau, work);
  ApComplex h = ratio.pow(24);
  ApComplex num = (h * ApReal(256.0, work) + ApComplex(1.0, 0.0, work)).pow(3);
  return (num / h).with_prec(prec);
}

std::vector<ApComplex> hilbert_invariants(long long D, long prec) {
  std::vector<ApComplex> out;
  for (const QuadraticForm& f : reduced_forms(D)) out.push_back(j_invariant(form_point(f, D, prec), prec));
  return out;
}

ClassPolynomial hilbert_poly(long long D, const BuildOptions& opts, BuildReport* report) {
  Family fam = Family::hilbert();
  check_family(fam, D);
  return build_with_ladder(fam, D, opts, report, [D](long prec) { return hilbert_invariants(D, prec); });
}

// -------------------------------------------------------------------- Weber

std::vector<QuadraticForm> weber_forms(long long D) {
  require_discriminant(D);
  std::vector<QuadraticForm> out;
  for (long long a = 1; 3 * a * a <= 4 * D + 3; ++a) {
    for (long long b = -(a / 2); 2 * b <= a; ++b) {
      __int128 num = static_cast<__int128>(b) * b + D;
      if (num % a != 0) continue;
      long long c = static_cast<long long>(num / a);
      if (c < a) continue;
      if (std::gcd(std::gcd(a, std::llabs(b)), c) != 1) continue;
      if (a % 2 == 0 && c % 2 == 0) continue;
      if ((a == std::llabs(2 * b) || a == c) && b < 0) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

ApComplex weber_invariant(const QuadraticForm& wf, long long D, long prec) {
  long work = prec + kGuardBits;
  mpq_class re(-big(wf.b), big(wf.a));
  re.canonicalize();
  ApReal im = sqrt(ApReal(big(D), work)) / ApReal(big(wf.a), work);
  HalfPlanePoint ell(ApReal(re, work), im);

  mpz_class a = big(wf.a), b = big(wf.b), c = big(wf.c);
  bool cube = D % 3 == 0;
  mpz_class e;
  ApComplex value(work);
  int sign = 1;
  if (wf.a % 2 != 0 && wf.c % 2 != 0) {
    e = b * (c - a - a * a * c);
    value = weber_f(ell, work);
  } else if (wf.a % 2 != 0) {
    e = b * (a * c * c - a - 2 * c);
    mpz_class t = (a * a - 1) / 8;
    sign = mpz_odd_p(t.get_mpz_t()) ? 1 : -1;
    value = weber_f1(ell, work);
  } else {
    e = b * (c - a - 5 * a * c * c);
    mpz_class t = (c * c - 1) / 8;
    sign = mpz_odd_p(t.get_mpz_t()) ? 1 : -1;
    value = weber_f2(ell, work);
  }
  if (cube) {
    e *= 3;
    value = value.pow(3) * ApReal(0.5, work);
  }
  ApComplex g = ApComplex::root_of_unity(mpz_mod_long(e, 48), 48, work) * value;
  if (sign < 0) g = -g;
  return g.with_prec(prec);
}

std::vector<ApComplex> weber_invariants(long long D, long prec) {
  std::vector<ApComplex> out;
  for (const QuadraticForm& wf : weber_forms(D)) out.push_back(weber_invariant(wf, D, prec));
  return out;
}

ClassPolynomial weber_poly(long long D, const BuildOptions& opts, BuildReport* report) {
  Family fam = Family::weber();
  check_family(fam, D);
  return build_with_ladder(fam, D, opts, report, [D](long prec) { return weber_invariants(D, prec); });
}

// ---------------------------------------------------------------- eta quotients

int single_eta_power(int l) {
  if (!is_supported_single(l)) throw Error(ErrorKind::InvalidArgument, "unsupported l = " + std::to_string(l));
  return 24 / std::gcd(24, l - 1);
}

std::vector<ApComplex> single_eta_invariants(long long D, int l, long prec) {
  FormSystem sys = n_system(D, l);
  int s = single_eta_power(l);
  std::vector<ApComplex> out;
  for (const QuadraticForm& f : sys.forms)
    out.push_back(eta_quotient_single(l, form_point(f, D, prec + 16), prec + 16).pow(s).with_prec(prec));
  return out;
}

std::vector<ApComplex> double_eta_invariants(long long D, int p1, int p2, long prec) {
  if (!is_supported_pair(p1, p2))
    throw Error(ErrorKind::UnsupportedPair, "double eta quotient supports (3,13) and (5,7)");
  FormSystem sys = n_system(D, static_cast<long long>(p1) * p2);
  std::vector<ApComplex> out;
  for (const QuadraticForm& f : sys.forms)
    out.push_back(eta_quotient_double(p1, p2, form_point(f, D, prec), prec));
  return out;
}

ClassPolynomial single_eta_poly(long long D, int l, const BuildOptions& opts, BuildReport* report) {
  Family fam = Family::single_eta(l);
  check_family(fam, D);
  return build_with_ladder(fam, D, opts, report, [D, l](long prec) { return single_eta_invariants(D, l, prec); });
}

ClassPolynomial double_eta_poly(long long D, int p1, int p2, const BuildOptions& opts, BuildReport* report) {
  Family fam = Family::double_eta(p1, p2);
  check_family(fam, D);
  return build_with_ladder(fam, D, opts, report,
                           [D, p1, p2](long prec) { return double_eta_invariants(D, p1, p2, prec); });
}

// ---------------------------------------------------------------- Ramanujan

IntMatrix2 build_Ln(const QuadraticForm& f, int n) {
  if (n != 2 && n != 3) throw Error(ErrorKind::InvalidArgument, "L_n is defined for n = 2, 3");
  if (f.a % n != 0) return {{{f.a, (f.b - 1) / 2}, {0, 1}}};
  if (f.c % n != 0) return {{{(-f.b - 1) / 2, -f.c}, {1, 0}}};
  return {{{(-f.b - 1) / 2 - f.a, (1 - f.b) / 2 - f.c}, {1, -1}}};
}

namespace {

long long det2(const IntMatrix2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

CycloElement z72(long long e) { return CycloElement::zeta(e); }

// sqrt(3) in the form zeta^{6k} - zeta^{30k} (up to sign).
CycloElement root3(long long k) { return z72(6 * k) - z72(30 * k); }

struct KMatrices {
  std::array<CycloMatrix6, 18> s0_pow;
  CycloMatrix6 s1, s2, s3, b;

  const CycloMatrix6& s0(long long e) const { return s0_pow[mod_floor(e, 18)]; }
};

std::shared_ptr<const KMatrices> k_matrices(long long k) {
  static std::mutex mu;
  static std::map<long long, std::shared_ptr<const KMatrices>> cache;
  long long key = mod_floor(k, 72);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto m = std::make_shared<KMatrices>();
  CycloMatrix6 s0 = ramanujan_S0(key);
  m->s0_pow[0] = CycloMatrix6::identity();
  for (int e = 1; e < 18; ++e) m->s0_pow[e] = m->s0_pow[e - 1] * s0;
  if (!(m->s0_pow[17] * s0 == CycloMatrix6::identity()))
    throw Error(ErrorKind::MatrixContract, "S0 does not have order dividing 18");
  m->s1 = ramanujan_S1(key);
  const KMatrices& km = *m;
  m->s2 = km.s0(-1) * km.s1 * km.s0(-10) * km.s1 * km.s0(-1) * km.s1 * km.s0(-18);
  m->s3 = km.s0(-1) * km.s1 * km.s0(7) * km.s1 * km.s0(-1) * km.s1 * km.s0(16);
  m->b = ramanujan_B(key);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, m);
  return m;
}

// A_n for the form: a word in S_n and T_n with exponents reduced mod N(n).
CycloMatrix6 ramanujan_An(const KMatrices& km, const QuadraticForm& f, int n) {
  long long N = n == 2 ? 8 : 9;
  const CycloMatrix6& S = n == 2 ? km.s2 : km.s3;
  // T_2 = S0^9, T_3 = S0^-8
  auto T = [&](long long e) -> const CycloMatrix6& {
    long long r = mod_floor(e, N);
    return km.s0(n == 2 ? 9 * r : -8 * r);
  };
  if (f.a % n != 0) {
    long long ia = mod_inverse(f.a, N);
    long long half = mod_floor((f.b - 1) / 2, N);
    long long z = ia * mod_floor(half * ia + 1, N);
    return S * T(ia) * S * T(mod_floor(f.a, N)) * S * T(z);
  }
  long long x = (-f.b - 1) / 2;
  if (f.c % n != 0) return T(x) * S;
  long long d = mod_inverse(mod_floor(f.a + f.b + f.c, N), N);
  return T(x - f.a) * S * T(-d);
}

}  // namespace

CycloMatrix6 ramanujan_S0(long long k) {
  CycloMatrix6 m;
  m.at(0, 1) = z72(3 * k);
  m.at(1, 2) = z72(3 * k);
  m.at(2, 0) = z72(6 * k);
  m.at(3, 4) = z72(-3 * k);
  m.at(4, 5) = z72(-6 * k);
  m.at(5, 3) = z72(-3 * k);
  return m;
}

CycloMatrix6 ramanujan_S1(long long k) {
  CycloElement d = root3(k);
  CycloElement dinv = d.inverse();
  CycloMatrix6 m;
  m.at(0, 0) = CycloElement(mpq_class(1));
  m.at(1, 3) = z72(-3 * k) * dinv;
  m.at(2, 4) = z72(3 * k) * dinv;
  m.at(3, 1) = z72(3 * k) * d;
  m.at(4, 2) = z72(-3 * k) * d;
  m.at(5, 5) = CycloElement(mpq_class(1));
  return m;
}

CycloMatrix6 ramanujan_B(long long k) {
  long long r = mod_floor(k, 3);
  CycloMatrix6 m;
  if (r == 1) {
    const long long e[6] = {0, k - 1, 2 * k - 2, 2 * k - 2, k - 1, 3 * k - 3};
    for (int i = 0; i < 6; ++i) m.at(i, i) = z72(e[i]);
    return m;
  }
  if (r == 2) {
    m.at(0, 0) = CycloElement(mpq_class(1));
    m.at(1, 2) = z72(k - 2);
    m.at(2, 1) = z72(2 * k - 1);
    m.at(3, 4) = z72(2 * k - 1);
    m.at(4, 3) = z72(k - 2);
    m.at(5, 5) = z72(3 * k - 3);
    return m;
  }
  throw Error(ErrorKind::UnsupportedK, "B is undefined for k = " + std::to_string(k) + " = 0 mod 3");
}

RamanujanFormData ramanujan_form_data(const QuadraticForm& form) {
  RamanujanFormData data;
  data.form = form;
  data.detL2 = det2(build_Ln(form, 2));
  data.detL3 = det2(build_Ln(form, 3));
  data.k = 9 * data.detL2 - 8 * data.detL3;
  if (mod_floor(data.k, 3) == 0)
    throw Error(ErrorKind::UnsupportedK, "form " + form.to_string() + " gives k = " + std::to_string(data.k) +
                                             " = 0 mod 3");
  auto km = k_matrices(data.k);
  data.A = ramanujan_An(*km, form, 2) * ramanujan_An(*km, form, 3) * km->b;
  if (!data.A.is_row_monomial())
    throw Error(ErrorKind::MatrixContract, "A has a row without exactly one nonzero entry for form " +
                                               form.to_string());
  for (int i = 0; i < 6; ++i) {
    if (!data.A.at(2, i).is_zero()) {
      data.selected_index = i;
      data.a2i = data.A.at(2, i);
    }
  }
  return data;
}

ApComplex ramanujan_invariant(const QuadraticForm& form, long prec) {
  RamanujanFormData data = ramanujan_form_data(form);
  long long D = 4 * form.a * form.c - form.b * form.b;
  long work = prec + 16;
  CycloElement factor = root3(data.k) * data.a2i;
  ApComplex r = r_func(data.selected_index, form_point(form, D, work), work);
  return (factor.value(work) * r).with_prec(prec);
}

std::vector<ApComplex> ramanujan_invariants(long long D, long prec) {
  std::vector<ApComplex> out;
  for (const QuadraticForm& f : reduced_forms(D)) out.push_back(ramanujan_invariant(f, prec));
  return out;
}

ClassPolynomial ramanujan_poly(long long D, const BuildOptions& opts, BuildReport* report) {
  Family fam = Family::ramanujan();
  check_family(fam, D);
  return build_with_ladder(fam, D, opts, report, [D](long prec) { return ramanujan_invariants(D, prec); });
}

ClassPolynomial build_class_polynomial(const Family& family, long long D, const BuildOptions& opts,
                                       BuildReport* report) {
  switch (family.kind) {
    case FamilyKind::Hilbert: return hilbert_poly(D, opts, report);
    case FamilyKind::Weber: return weber_poly(D, opts, report);
    case FamilyKind::SingleEta: return single_eta_poly(D, family.l, opts, report);
    case FamilyKind::DoubleEta: return double_eta_poly(D, family.p1, family.p2, opts, report);
    case FamilyKind::Ramanujan: return ramanujan_poly(D, opts, report);
  }
  throw Error(ErrorKind::UnsupportedFamily, "unknown family");
}

}  // namespace ramcm
