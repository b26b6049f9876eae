#include "ramcm/numerics.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "ramcm/error.hpp"

namespace ramcm {

namespace {

constexpr long kMaxSeriesTerms = 1'000'000;
constexpr int kMaxReductionSteps = 10'000;

long checked_prec(long prec) {
  if (prec < 2) throw Error(ErrorKind::InvalidArgument, "precision must be at least 2 bits");
  return prec;
}

// Shrinks `x` to precision `prec` if it is currently larger.
void shrink_to(mpfr_ptr x, long prec) {
  if (static_cast<long>(mpfr_get_prec(x)) > prec)
    mpfr_prec_round(x, static_cast<mpfr_prec_t>(prec), MPFR_RNDN);
}

// exp(2 pi i r tau) for rational r.
ApComplex q_power(const HalfPlanePoint& tau, const mpq_class& r, long prec) {
  HalfPlanePoint t = tau.scaled(r >= 0 ? mpq_class(r) : mpq_class(-r));
  ApReal re = t.re().with_prec(prec);
  ApReal im = t.im().with_prec(prec);
  if (r < 0) {
    re = -re;
    im = -im;
  }
  ApComplex phase = ApComplex::unit(re);
  ApReal two_pi = ApReal::pi(prec) * ApReal(2.0, prec);
  ApReal modulus = exp(-(two_pi * im));
  return phase * modulus;
}

// log2 |q| for q = exp(2 pi i tau).
double log2_abs_q(const HalfPlanePoint& tau) {
  return -2.0 * M_PI * tau.im().to_double() / std::log(2.0);
}

void require_upper(const HalfPlanePoint& tau) {
  if (tau.im().sign() <= 0)
    throw Error(ErrorKind::InvalidArgument, "point is not in the upper half plane");
}

// Number of pentagonal terms needed for absolute error 2^-bits, or throws.
long pentagonal_terms(double log2q, long bits) {
  if (!(log2q < 0)) throw Error(ErrorKind::NonConvergent, "eta series: |q| >= 1");
  // n(3n-1)/2 * log2q < -bits
  double need = std::sqrt(2.0 * static_cast<double>(bits) / (3.0 * -log2q)) + 2.0;
  if (need > static_cast<double>(kMaxSeriesTerms))
    throw Error(ErrorKind::NonConvergent,
                "eta series needs more than " + std::to_string(kMaxSeriesTerms) + " terms");
  return static_cast<long>(need);
}

long product_terms(double log2q, long bits) {
  if (!(log2q < 0)) throw Error(ErrorKind::NonConvergent, "q-product: |q| >= 1");
  double need = static_cast<double>(bits) / -log2q + 2.0;
  if (need > static_cast<double>(kMaxSeriesTerms))
    throw Error(ErrorKind::NonConvergent,
                "q-product needs more than " + std::to_string(kMaxSeriesTerms) + " factors");
  return static_cast<long>(need);
}

ApComplex one(long prec) { return ApComplex(1.0, 0.0, prec); }

// 1 + sum_{n>=1} (-1)^n (q^{n(3n-1)/2} + q^{n(3n+1)/2}), at working precision.
ApComplex pentagonal_sum(const HalfPlanePoint& tau, long work) {
  double log2q = log2_abs_q(tau);
  long cap = pentagonal_terms(log2q, work);
  ApComplex q = q_power(tau, 1, work);
  ApComplex q3 = q.pow(3);
  ApComplex sum = one(work);
  ApComplex step = q;       // q^{3n-2}
  ApComplex qn = one(work);  // q^n
  ApComplex qe1 = one(work);
  for (long n = 1; n <= cap; ++n) {
    double e1 = static_cast<double>(n) * (3.0 * n - 1.0) / 2.0;
    if (e1 * log2q < -static_cast<double>(work)) break;
    qe1 *= step;
    qn *= q;
    ApComplex term = qe1 + qe1 * qn;
    if (n % 2) sum -= term; else sum += term;
    step *= q3;
  }
  return sum;
}

}  // namespace

// ---------------------------------------------------------------- ApReal

ApReal::ApReal(long prec) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(checked_prec(prec)));
  mpfr_set_zero(value_, 1);
}

ApReal::ApReal(double value, long prec) : ApReal(prec) {
  mpfr_set_d(value_, value, MPFR_RNDN);
}

ApReal::ApReal(const mpz_class& value, long prec) : ApReal(prec) {
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

ApReal::ApReal(const mpq_class& value, long prec) : ApReal(prec) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

ApReal::ApReal(const ApReal& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

ApReal::ApReal(ApReal&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

ApReal& ApReal::operator=(const ApReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

ApReal& ApReal::operator=(ApReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

ApReal::~ApReal() { mpfr_clear(value_); }

ApReal ApReal::pi(long prec) {
  ApReal r(prec);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

ApReal ApReal::with_prec(long prec) const {
  ApReal r(prec);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

double ApReal::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  double mant = mpfr_get_d_2exp(&exp2, value_, MPFR_RNDN);
  return std::log2(std::fabs(mant)) + static_cast<double>(exp2);
}

mpz_class ApReal::round() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), value_, MPFR_RNDN);
  return z;
}

std::string ApReal::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, value_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

ApReal ApReal::operator-() const {
  ApReal r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

ApReal& ApReal::operator+=(const ApReal& rhs) {
  shrink_to(value_, rhs.prec());
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

ApReal& ApReal::operator-=(const ApReal& rhs) {
  shrink_to(value_, rhs.prec());
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

ApReal& ApReal::operator*=(const ApReal& rhs) {
  shrink_to(value_, rhs.prec());
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

ApReal& ApReal::operator/=(const ApReal& rhs) {
  shrink_to(value_, rhs.prec());
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

ApReal operator+(ApReal lhs, const ApReal& rhs) { return lhs += rhs; }
ApReal operator-(ApReal lhs, const ApReal& rhs) { return lhs -= rhs; }
ApReal operator*(ApReal lhs, const ApReal& rhs) { return lhs *= rhs; }
ApReal operator/(ApReal lhs, const ApReal& rhs) { return lhs /= rhs; }

ApReal sqrt(const ApReal& x) {
  ApReal r(x.prec());
  mpfr_sqrt(r.value_, x.value_, MPFR_RNDN);
  return r;
}

ApReal exp(const ApReal& x) {
  ApReal r(x.prec());
  mpfr_exp(r.value_, x.value_, MPFR_RNDN);
  return r;
}

ApReal abs(const ApReal& x) {
  ApReal r(x.prec());
  mpfr_abs(r.value_, x.value_, MPFR_RNDN);
  return r;
}

// ------------------------------------------------------------- ApComplex

ApComplex::ApComplex(ApReal re, ApReal im) : re_(std::move(re)), im_(std::move(im)) {
  long p = std::min(re_.prec(), im_.prec());
  if (re_.prec() != p) re_ = re_.with_prec(p);
  if (im_.prec() != p) im_ = im_.with_prec(p);
}

ApComplex ApComplex::unit(const ApReal& x) {
  long prec = x.prec();
  ApReal angle = ApReal::pi(prec) * ApReal(2.0, prec) * x;
  ApComplex z(prec);
  mpfr_sin_cos(z.im_.raw(), z.re_.raw(), angle.raw(), MPFR_RNDN);
  return z;
}

ApComplex ApComplex::root_of_unity(long num, long den, long prec) {
  if (den <= 0) throw Error(ErrorKind::InvalidArgument, "root of unity: denominator must be positive");
  long n = ((num % den) + den) % den;
  mpq_class angle(n, den);
  angle.canonicalize();
  return unit(ApReal(angle, prec));
}

ApComplex ApComplex::with_prec(long prec) const {
  return ApComplex(re_.with_prec(prec), im_.with_prec(prec));
}

ApReal ApComplex::norm() const { return re_ * re_ + im_ * im_; }

ApReal ApComplex::abs() const { return sqrt(norm()); }

ApComplex ApComplex::conj() const { return ApComplex(re_, -im_); }

std::string ApComplex::to_string(int digits) const {
  std::string s = re_.to_string(digits);
  if (im_.sign() < 0)
    s += " - " + (-im_).to_string(digits) + "i";
  else
    s += " + " + im_.to_string(digits) + "i";
  return s;
}

ApComplex ApComplex::operator-() const { return ApComplex(-re_, -im_); }

ApComplex& ApComplex::operator+=(const ApComplex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

ApComplex& ApComplex::operator-=(const ApComplex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

ApComplex& ApComplex::operator*=(const ApComplex& rhs) {
  ApReal re = re_ * rhs.re_ - im_ * rhs.im_;
  ApReal im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ApComplex& ApComplex::operator/=(const ApComplex& rhs) {
  ApReal den = rhs.norm();
  if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "complex division by zero");
  ApReal re = (re_ * rhs.re_ + im_ * rhs.im_) / den;
  ApReal im = (im_ * rhs.re_ - re_ * rhs.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ApComplex& ApComplex::operator*=(const ApReal& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

ApComplex ApComplex::pow(long n) const {
  if (n < 0) return ApComplex(1.0, 0.0, prec()) / pow(-n);
  ApComplex result(1.0, 0.0, prec());
  ApComplex base(*this);
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

ApComplex exp(const ApComplex& z) {
  ApReal modulus = exp(z.re_);
  ApComplex r(z.prec());
  mpfr_sin_cos(r.im_.raw(), r.re_.raw(), z.im_.raw(), MPFR_RNDN);
  return r * modulus;
}

ApComplex sqrt(const ApComplex& z) {
  long prec = z.prec();
  ApReal r = z.abs();
  ApReal two(2.0, prec);
  if (r.is_zero()) return ApComplex(prec);
  if (z.re_.sign() >= 0) {
    ApReal t = sqrt((r + z.re_) / two);
    return ApComplex(t, z.im_ / (two * t));
  }
  ApReal t = sqrt((r - z.re_) / two);
  ApReal re = abs(z.im_) / (two * t);
  return ApComplex(re, z.im_.sign() < 0 ? -t : t);
}

// -------------------------------------------------------- HalfPlanePoint

HalfPlanePoint::HalfPlanePoint(ApReal re, ApReal im) : re_(std::move(re)), im_(std::move(im)) {
  if (im_.sign() <= 0)
    throw Error(ErrorKind::InvalidArgument, "point is not in the upper half plane");
}

HalfPlanePoint HalfPlanePoint::from_form(long long a, long long b, long long D, long prec) {
  if (a <= 0 || D <= 0)
    throw Error(ErrorKind::InvalidArgument, "form point needs a > 0 and D > 0");
  mpq_class re(mpz_class(std::to_string(-b)), mpz_class(std::to_string(2 * a)));
  re.canonicalize();
  ApReal im = sqrt(ApReal(mpz_class(std::to_string(D)), prec + 8)) / ApReal(mpz_class(std::to_string(2 * a)), prec + 8);
  return HalfPlanePoint(ApReal(re, prec), im.with_prec(prec));
}

HalfPlanePoint HalfPlanePoint::affine(const mpq_class& factor, const mpq_class& shift) const {
  if (factor <= 0) throw Error(ErrorKind::InvalidArgument, "affine map must have positive scale");
  long p = prec();
  ApReal f(factor, p + 8);
  ApReal re = re_.with_prec(p + 8) * f + ApReal(shift, p + 8);
  ApReal im = im_.with_prec(p + 8) * f;
  return HalfPlanePoint(re.with_prec(p), im.with_prec(p));
}

HalfPlanePoint HalfPlanePoint::inverted() const {
  ApReal n = re_ * re_ + im_ * im_;
  return HalfPlanePoint(-(re_ / n), im_ / n);
}

ApComplex RootOfUnity72::value(long prec) const {
  return ApComplex::root_of_unity(exponent_, 72, prec);
}

// ------------------------------------------------------ modular functions

ApComplex eta_series(const HalfPlanePoint& tau, long prec) {
  require_upper(tau);
  long work = checked_prec(prec) + kGuardBits;
  HalfPlanePoint t(tau.re().with_prec(work), tau.im().with_prec(work));
  ApComplex value = q_power(t, mpq_class(1, 24), work) * pentagonal_sum(t, work);
  return value.with_prec(prec);
}

ApComplex eta(const HalfPlanePoint& tau, long prec) {
  require_upper(tau);
  long work = checked_prec(prec) + kGuardBits;
  ApReal re = tau.re().with_prec(work);
  ApReal im = tau.im().with_prec(work);
  ApComplex multiplier = one(work);
  ApReal one_r(1.0, work);
  int steps = 0;
  for (;; ++steps) {
    if (steps > kMaxReductionSteps)
      throw Error(ErrorKind::NonConvergent, "eta: argument reduction did not terminate");
    mpz_class n = re.round();
    if (n != 0) {
      re -= ApReal(n, work);
      // eta(tau) = zeta24^n eta(tau - n)
      mpz_class r = n % 24;
      if (r < 0) r += 24;
      multiplier *= ApComplex::root_of_unity(r.get_si(), 24, work);
    }
    ApReal nrm = re * re + im * im;
    if (!(nrm < one_r)) break;
    // eta(tau) = eta(-1/tau) / sqrt(-i tau)
    ApComplex minus_i_tau(im, -re);
    multiplier /= sqrt(minus_i_tau);
    re = -(re / nrm);
    im = im / nrm;
  }
  HalfPlanePoint reduced(re, im);
  ApComplex value = multiplier * q_power(reduced, mpq_class(1, 24), work) *
                    pentagonal_sum(reduced, work);
  return value.with_prec(prec);
}

namespace {

enum class WeberKind { F, F1 };

// q^{-1/48} prod_{r>=1} (1 +- q^{r-1/2})
ApComplex weber_half_product(const HalfPlanePoint& tau, long prec, WeberKind kind) {
  require_upper(tau);
  long work = checked_prec(prec) + kGuardBits;
  HalfPlanePoint t(tau.re().with_prec(work), tau.im().with_prec(work));
  double log2q = log2_abs_q(t);
  long cap = product_terms(log2q, work);
  ApComplex q = q_power(t, 1, work);
  ApComplex power = q_power(t, mpq_class(1, 2), work);  // q^{r-1/2}
  ApComplex prod = one(work);
  for (long r = 1; r <= cap; ++r) {
    if ((static_cast<double>(r) - 0.5) * log2q < -static_cast<double>(work)) break;
    if (kind == WeberKind::F)
      prod *= one(work) + power;
    else
      prod *= one(work) - power;
    power *= q;
  }
  return (q_power(t, mpq_class(-1, 48), work) * prod).with_prec(prec);
}

}  // namespace

ApComplex weber_f(const HalfPlanePoint& tau, long prec) {
  return weber_half_product(tau, prec, WeberKind::F);
}

ApComplex weber_f1(const HalfPlanePoint& tau, long prec) {
  return weber_half_product(tau, prec, WeberKind::F1);
}

ApComplex weber_f2(const HalfPlanePoint& tau, long prec) {
  require_upper(tau);
  long work = checked_prec(prec) + kGuardBits;
  HalfPlanePoint t(tau.re().with_prec(work), tau.im().with_prec(work));
  double log2q = log2_abs_q(t);
  long cap = product_terms(log2q, work);
  ApComplex q = q_power(t, 1, work);
  ApComplex power = q;
  ApComplex prod = one(work);
  for (long r = 1; r <= cap; ++r) {
    if (static_cast<double>(r) * log2q < -static_cast<double>(work)) break;
    prod *= one(work) + power;
    power *= q;
  }
  ApReal sqrt2 = sqrt(ApReal(2.0, work));
  return (q_power(t, mpq_class(1, 24), work) * prod * sqrt2).with_prec(prec);
}

ApComplex r_func(int index, const HalfPlanePoint& tau, long prec) {
  if (index < 0 || index > 5) throw Error(ErrorKind::InvalidArgument, "R index must be in 0..5");
  long work = checked_prec(prec) + kGuardBits;
  HalfPlanePoint t(tau.re().with_prec(work), tau.im().with_prec(work));
  auto eta3 = [&] { return eta(t.scaled(3), work); };
  auto eta_third = [&](int shift) { return eta(t.affine(mpq_class(1, 3), mpq_class(shift, 3)), work); };
  ApComplex den = eta(t, work).pow(2);
  ApComplex num(work);
  switch (index) {
    case 0: num = eta3() * eta_third(0); break;
    case 1: num = eta3() * eta_third(1); break;
    case 2: num = eta3() * eta_third(2); break;
    case 3: num = eta_third(0) * eta_third(2); break;
    case 4: num = eta_third(0) * eta_third(1); break;
    default: num = eta_third(2) * eta_third(1); break;
  }
  return (num / den).with_prec(prec);
}

ApComplex eta_quotient_single(int l, const HalfPlanePoint& tau, long prec) {
  if (l != 3 && l != 5 && l != 7 && l != 13)
    throw Error(ErrorKind::InvalidArgument, "single eta quotient needs l in {3,5,7,13}");
  long work = checked_prec(prec) + kGuardBits;
  HalfPlanePoint t(tau.re().with_prec(work), tau.im().with_prec(work));
  return (eta(t.scaled(mpq_class(1, l)), work) / eta(t, work)).with_prec(prec);
}

ApComplex eta_quotient_double(int p1, int p2, const HalfPlanePoint& tau, long prec) {
  bool ok = (p1 == 3 && p2 == 13) || (p1 == 5 && p2 == 7);
  if (!ok)
    throw Error(ErrorKind::UnsupportedPair,
                "double eta quotient supports (3,13) and (5,7), got (" + std::to_string(p1) +
                    "," + std::to_string(p2) + ")");
  long work = checked_prec(prec) + kGuardBits;
  HalfPlanePoint t(tau.re().with_prec(work), tau.im().with_prec(work));
  ApComplex num = eta(t.scaled(mpq_class(1, p1)), work) * eta(t.scaled(mpq_class(1, p2)), work);
  ApComplex den = eta(t.scaled(mpq_class(1, p1 * p2)), work) * eta(t, work);
  return (num / den).with_prec(prec);
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidDiscriminant: return "InvalidDiscriminant";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::UnsupportedPair: return "UnsupportedPair";
    case ErrorKind::InertPrime: return "InertPrime";
    case ErrorKind::NotRamified: return "NotRamified";
    case ErrorKind::NoSystem: return "NoSystem";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::MatrixContract: return "MatrixContract";
    case ErrorKind::UnsupportedK: return "UnsupportedK";
    case ErrorKind::NoCubicFactor: return "NoCubicFactor";
    case ErrorKind::NotInPrimeField: return "NotInPrimeField";
    case ErrorKind::ZeroRoot: return "ZeroRoot";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::DegenerateJ: return "DegenerateJ";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::CacheCorrupt: return "CacheCorrupt";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace ramcm
