#pragma once

// Class polynomials: Hilbert, Weber, single and double eta quotients, and
// the Ramanujan family built from the level-72 functions R_0..R_5.

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

#include "ramcm/cyclotomic.hpp"
#include "ramcm/forms.hpp"
#include "ramcm/numerics.hpp"

namespace ramcm {

enum class FamilyKind { Hilbert, Weber, SingleEta, DoubleEta, Ramanujan };

struct Family {
  FamilyKind kind = FamilyKind::Hilbert;
  int l = 0;   // SingleEta
  int p1 = 0;  // DoubleEta
  int p2 = 0;

  static Family hilbert() { return {FamilyKind::Hilbert}; }
  static Family weber() { return {FamilyKind::Weber}; }
  static Family single_eta(int l) { return {FamilyKind::SingleEta, l}; }
  static Family double_eta(int p1, int p2) { return {FamilyKind::DoubleEta, 0, p1, p2}; }
  static Family ramanujan() { return {FamilyKind::Ramanujan}; }

  /// hilbert, weber, eta-l:13, eta-p1p2:5,7, ramanujan
  std::string tag() const;
  /// Inverse of tag(); throws InvalidArgument.
  static Family from_tag(const std::string& tag);

  bool operator==(const Family&) const = default;
};

struct ClassPolynomial {
  Family family;
  long long D = 0;
  std::vector<mpz_class> coeffs;  // constant term first

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  /// e.g. "x^3 - 2x^2 + 4x - 1"
  std::string to_string() const;

  bool operator==(const ClassPolynomial&) const = default;
};

struct BuildOptions {
  double precision_scale = 1.0;
  int max_retries = 3;
  long fixed_prec = 0;  // > 0 skips the estimate and the retry ladder
};

struct BuildReport {
  long working_prec = 0;
  double worst_residual = 0.0;
  int attempts = 0;
};

/// Rounding tolerance for complex coefficients.
inline constexpr double kRoundingTolerance = 1.0 / 4294967296.0;  // 2^-32

ClassPolynomial hilbert_poly(long long D, const BuildOptions& opts = {}, BuildReport* report = nullptr);
ClassPolynomial weber_poly(long long D, const BuildOptions& opts = {}, BuildReport* report = nullptr);
ClassPolynomial single_eta_poly(long long D, int l, const BuildOptions& opts = {},
                                BuildReport* report = nullptr);
ClassPolynomial double_eta_poly(long long D, int p1, int p2, const BuildOptions& opts = {},
                                BuildReport* report = nullptr);
ClassPolynomial ramanujan_poly(long long D, const BuildOptions& opts = {}, BuildReport* report = nullptr);
ClassPolynomial build_class_polynomial(const Family& family, long long D, const BuildOptions& opts = {},
                                       BuildReport* report = nullptr);

/// Checks the family/D preconditions without building anything.
void check_family(const Family& family, long long D);

/// Degree of the family polynomial: 3h for Weber, h otherwise.
long expected_degree(const Family& family, long long D);

/// Nearest integers of the real parts; throws PrecisionExhaustedError when any
/// real or imaginary residual exceeds tol.
std::vector<mpz_class> round_to_integers(const std::vector<ApComplex>& coeffs, double tol,
                                         double* worst_residual = nullptr);

/// Monic product of (x - r), constant term first.
std::vector<ApComplex> poly_from_roots(const std::vector<ApComplex>& roots, long prec);

// Conjugate class invariants at precision prec, one per form.
std::vector<ApComplex> hilbert_invariants(long long D, long prec);
std::vector<ApComplex> weber_invariants(long long D, long prec);
std::vector<ApComplex> single_eta_invariants(long long D, int l, long prec);
std::vector<ApComplex> double_eta_invariants(long long D, int p1, int p2, long prec);
std::vector<ApComplex> ramanujan_invariants(long long D, long prec);

/// j(tau) through (eta(2 tau)/eta(tau))^24.
ApComplex j_invariant(const HalfPlanePoint& tau, long prec);

/// Forms (a, b, c) with b^2 - ac = -D used by the Weber invariants (the
/// middle coefficient is 2b).
std::vector<QuadraticForm> weber_forms(long long D);
ApComplex weber_invariant(const QuadraticForm& wf, long long D, long prec);

/// Exponent s with (eta(tau/l)/eta(tau))^s a class invariant.
int single_eta_power(int l);

using IntMatrix2 = std::array<std::array<long long, 2>, 2>;

IntMatrix2 build_Ln(const QuadraticForm& form, int n);

struct RamanujanFormData {
  QuadraticForm form;
  long long detL2 = 0;
  long long detL3 = 0;
  long long k = 0;  // 9 det L2 - 8 det L3
  CycloMatrix6 A;
  int selected_index = 0;
  CycloElement a2i;
};

// Matrices of the action of SL2(Z) on (R_0, ..., R_5) for a given k.
CycloMatrix6 ramanujan_S0(long long k);
CycloMatrix6 ramanujan_S1(long long k);
CycloMatrix6 ramanujan_B(long long k);

RamanujanFormData ramanujan_form_data(const QuadraticForm& form);
ApComplex ramanujan_invariant(const QuadraticForm& form, long prec);

}  // namespace ramcm
