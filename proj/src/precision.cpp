#include "ramcm/precision.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ramcm/error.hpp"

namespace ramcm {

namespace {

double main_term_from_sum(long long D, double sum) {
  return M_PI * std::sqrt(static_cast<double>(D)) / std::log(2.0) * sum;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

double hilbert_sum(long long D) {
  double sum = 0.0;
  for (const QuadraticForm& f : reduced_forms(D)) sum += 1.0 / static_cast<double>(f.a);
  return sum;
}

double hilbert_main_term(long long D) { return main_term_from_sum(D, hilbert_sum(D)); }

double h_prec(long long D) {
  auto forms = reduced_forms(D);
  double sum = 0.0;
  for (const auto& f : forms) sum += 1.0 / static_cast<double>(f.a);
  double h = static_cast<double>(forms.size());
  return std::log(10.0) / std::log(2.0) * (h / 4.0 + 5.0) + main_term_from_sum(D, sum);
}

double h_prec1(long long D) { return 33.0 + hilbert_main_term(D); }

double family_ratio(const Family& family, long long D) {
  switch (family.kind) {
    case FamilyKind::Hilbert: return 1.0;
    case FamilyKind::Weber: return D % 3 == 0 ? 1.0 / 8.0 : 1.0 / 24.0;
    case FamilyKind::SingleEta:
      if (family.l == 3 || family.l == 5 || family.l == 7 || family.l == 13) return 1.0 / (family.l + 1);
      break;
    case FamilyKind::DoubleEta:
      if ((family.p1 == 3 && family.p2 == 13) || (family.p1 == 5 && family.p2 == 7)) {
        double p1 = family.p1, p2 = family.p2;
        return (p1 - 1) * (p2 - 1) / (12.0 * (p1 + 1) * (p2 + 1));
      }
      break;
    case FamilyKind::Ramanujan: return 1.0 / 36.0;
  }
  throw Error(ErrorKind::UnsupportedFamily, "no precision ratio for family " + family.tag());
}

double family_prec(long long D, const Family& family) {
  double ratio = family_ratio(family, D);
  return ratio * hilbert_main_term(D);
}

double log_height(const ClassPolynomial& poly) {
  double best = 0.0;
  bool any = false;
  for (const mpz_class& c : poly.coeffs) {
    if (c == 0) continue;
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, c.get_mpz_t());
    double v = std::log2(std::fabs(mant)) + static_cast<double>(exp2);
    best = any ? std::max(best, v) : v;
    any = true;
  }
  return best;
}

long storage_bits(const ClassPolynomial& poly) {
  long total = 0;
  for (const mpz_class& c : poly.coeffs)
    total += c == 0 ? 1 : static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2));
  return total;
}

std::vector<PrecisionProfile> bench_report(const std::vector<long long>& Ds,
                                           const std::vector<Family>& families,
                                           const BenchOptions& opts) {
  std::vector<PrecisionProfile> rows;
  if (families.empty()) return rows;
  for (long long D : Ds) {
    double main = 0.0;
    long h = 0;
    std::string d_error;
    try {
      auto forms = reduced_forms(D);
      double sum = 0.0;
      for (const auto& f : forms) sum += 1.0 / static_cast<double>(f.a);
      main = main_term_from_sum(D, sum);
      h = static_cast<long>(forms.size());
    } catch (const Error& e) {
      d_error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    for (const Family& fam : families) {
      PrecisionProfile row;
      row.D = D;
      row.family = fam;
      if (!d_error.empty()) {
        row.error = d_error;
        rows.push_back(row);
        continue;
      }
      try {
        row.degree = fam.kind == FamilyKind::Weber ? 3 * h : h;
        row.estimated_bits = family_ratio(fam, D) * main;
        if (opts.mode == BenchMode::Construct) {
          if (h > opts.max_h)
            throw Error(ErrorKind::InvalidArgument, "class number " + std::to_string(h) + " exceeds the cap " +
                                                        std::to_string(opts.max_h));
          check_family(fam, D);
          BuildReport rep;
          auto start = std::chrono::steady_clock::now();
          ClassPolynomial poly = build_class_polynomial(fam, D, {}, &rep);
          auto stop = std::chrono::steady_clock::now();
          row.measured_height = log_height(poly);
          row.storage_bits = storage_bits(poly);
          row.working_prec = rep.working_prec;
          row.millis = std::chrono::duration<double, std::milli>(stop - start).count();
        }
      } catch (const Error& e) {
        row.error = std::string(to_string(e.kind())) + ": " + e.what();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string format_bench_table(const std::vector<PrecisionProfile>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-14s %7s %12s %10s %9s %8s %10s  %s\n", "D", "family", "degree",
                "est_bits", "height", "storage", "prec", "millis", "error");
  out << line;
  auto opt = [](const auto& v, int digits) -> std::string {
    if (!v) return "-";
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(*v)>>) return fixed(*v, digits);
    else return std::to_string(*v);
  };
  std::map<long long, std::pair<std::optional<double>, std::optional<double>>> ratio_parts;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-12lld %-14s %7ld %12.1f %10s %9s %8s %10s  %s\n", r.D, r.family.tag().c_str(),
                  r.degree, r.estimated_bits, opt(r.measured_height, 2).c_str(), opt(r.storage_bits, 0).c_str(),
                  opt(r.working_prec, 0).c_str(), opt(r.millis, 1).c_str(), r.error.c_str());
    out << line;
    if (r.family.kind == FamilyKind::Hilbert) ratio_parts[r.D].first = r.measured_height;
    if (r.family.kind == FamilyKind::Ramanujan) ratio_parts[r.D].second = r.measured_height;
  }
  double total = 0.0;
  int count = 0;
  for (const auto& [D, parts] : ratio_parts) {
    if (parts.first && parts.second && *parts.second > 0) {
      total += *parts.first / *parts.second;
      ++count;
    }
  }
  if (count > 0)
    out << "height ratio hilbert/ramanujan: mean " << fixed(total / count, 2) << " over " << count
        << " discriminants\n";
  return out.str();
}

std::string format_bench_records(const std::vector<PrecisionProfile>& rows) {
  std::ostringstream out;
  for (const auto& r : rows) {
    nlohmann::json j;
    j["D"] = r.D;
    j["family"] = r.family.tag();
    j["degree"] = r.degree;
    j["estimated_bits"] = r.estimated_bits;
    j["measured_height"] = r.measured_height ? nlohmann::json(*r.measured_height) : nlohmann::json(nullptr);
    j["storage_bits"] = r.storage_bits ? nlohmann::json(*r.storage_bits) : nlohmann::json(nullptr);
    j["working_prec"] = r.working_prec ? nlohmann::json(*r.working_prec) : nlohmann::json(nullptr);
    j["millis"] = r.millis ? nlohmann::json(*r.millis) : nlohmann::json(nullptr);
    j["error"] = r.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.error);
    out << j.dump() << "\n";
  }
  return out.str();
}

}  // namespace ramcm
