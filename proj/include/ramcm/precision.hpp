#pragma once

// Precision estimates and height/storage metrics for class polynomials.

#include <optional>
#include <string>
#include <vector>

#include "ramcm/classpoly.hpp"

namespace ramcm {

/// Sum of 1/a over the reduced forms of -D.
double hilbert_sum(long long D);
/// (pi sqrt(D) / ln 2) * hilbert_sum(D)
double hilbert_main_term(long long D);
double h_prec(long long D);
double h_prec1(long long D);

/// Height ratio of the family relative to the Hilbert polynomial.
double family_ratio(const Family& family, long long D);
double family_prec(long long D, const Family& family);

/// max log2 |a_i| over nonzero coefficients.
double log_height(const ClassPolynomial& poly);
/// Sum of coefficient magnitude bit lengths, counting 0 as one bit.
long storage_bits(const ClassPolynomial& poly);

struct PrecisionProfile {
  long long D = 0;
  Family family;
  long degree = 0;
  double estimated_bits = 0.0;
  std::optional<double> measured_height;
  std::optional<long> storage_bits;
  std::optional<long> working_prec;
  std::optional<double> millis;
  std::string error;
};

enum class BenchMode { Estimate, Construct };

struct BenchOptions {
  BenchMode mode = BenchMode::Estimate;
  long max_h = 200;  // construct mode refuses larger class numbers
};

/// One row per (D, family) in input order. Row failures land in `error`.
std::vector<PrecisionProfile> bench_report(const std::vector<long long>& Ds,
                                           const std::vector<Family>& families,
                                           const BenchOptions& opts);

std::string format_bench_table(const std::vector<PrecisionProfile>& rows);
/// One JSON object per line.
std::string format_bench_records(const std::vector<PrecisionProfile>& rows);

}  // namespace ramcm
