#include "ramcm/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ramcm/cache.hpp"
#include "ramcm/cm.hpp"
#include "ramcm/precision.hpp"

namespace ramcm {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

long long parse_ll(const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "not an integer: '" + s + "'");
  }
}

Family family_from_flags(const std::string& name, int l, const std::string& pair) {
  if (name == "hilbert") return Family::hilbert();
  if (name == "weber") return Family::weber();
  if (name == "ramanujan") return Family::ramanujan();
  if (name == "eta-l") {
    if (l == 0) throw Error(ErrorKind::InvalidArgument, "--family eta-l needs --l");
    return Family::single_eta(l);
  }
  if (name == "eta-p1p2") {
    auto parts = split(pair, ',');
    if (parts.size() != 2) throw Error(ErrorKind::InvalidArgument, "--family eta-p1p2 needs --pair p1,p2");
    return Family::double_eta(static_cast<int>(parse_ll(parts[0])), static_cast<int>(parse_ll(parts[1])));
  }
  return Family::from_tag(name);
}

std::string poly_json(const ClassPolynomial& poly) {
  nlohmann::json j;
  j["family"] = poly.family.tag();
  j["D"] = poly.D;
  j["degree"] = poly.degree();
  j["coeffs"] = nlohmann::json::array();
  for (const auto& c : poly.coeffs) j["coeffs"].push_back(c.get_str());
  return j.dump();
}

std::string curve_text(const CurveParams& E) {
  std::ostringstream out;
  out << "p = " << E.p.get_str() << "\n"
      << "a = " << E.a.get_str() << "\n"
      << "b = " << E.b.get_str() << "\n"
      << "m = " << E.m.get_str() << "\n"
      << "D = " << E.D << "\n"
      << "j = " << E.j.get_str() << "\n";
  return out.str();
}

std::string curve_json(const CurveParams& E) {
  nlohmann::json j;
  j["p"] = E.p.get_str();
  j["a"] = E.a.get_str();
  j["b"] = E.b.get_str();
  j["m"] = E.m.get_str();
  j["D"] = E.D;
  j["j"] = E.j.get_str();
  return j.dump();
}

std::vector<long long> parse_d_range(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts.size() < 2 || parts.size() > 3)
    throw Error(ErrorKind::InvalidArgument, "--d-range expects start:stop[:step]");
  long long start = parse_ll(parts[0]), stop = parse_ll(parts[1]);
  long long step = parts.size() == 3 ? parse_ll(parts[2]) : 1;
  if (step <= 0) throw Error(ErrorKind::InvalidArgument, "--d-range step must be positive");
  std::vector<long long> out;
  for (long long d = start; d <= stop; d += step) out.push_back(d);
  return out;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidDiscriminant:
    case ErrorKind::UnsupportedPair:
    case ErrorKind::InertPrime:
    case ErrorKind::NotRamified:
    case ErrorKind::UnsupportedFamily:
    case ErrorKind::UnsupportedK:
    case ErrorKind::DegenerateJ:
    case ErrorKind::NoSystem:
      return kExitPrecondition;
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::NonConvergent:
      return kExitPrecision;
    case ErrorKind::SearchExhausted:
    case ErrorKind::Inconclusive:
    case ErrorKind::NoCubicFactor:
      return kExitSearch;
    case ErrorKind::CacheCorrupt:
      return kExitCache;
    default:
      return kExitIo;
  }
}

std::vector<Family> parse_family_list(const std::string& spec) {
  if (spec == "none" || spec.empty()) return {};
  if (spec == "all")
    return {Family::hilbert(),          Family::single_eta(13),      Family::weber(),
            Family::double_eta(5, 7),   Family::double_eta(3, 13),   Family::ramanujan()};
  std::vector<Family> out;
  auto tokens = split(spec, ',');
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string tag = tokens[i];
    // eta-p1p2:5,7 carries its own comma
    if (tag.rfind("eta-p1p2:", 0) == 0 && tag.find(',') == std::string::npos && i + 1 < tokens.size())
      tag += "," + tokens[++i];
    out.push_back(Family::from_tag(tag));
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime-order elliptic curves by complex multiplication", "ramcm"};
  app.require_subcommand(1);

  std::string family_name, pair, out_path, format = "text", cache_dir;
  long long D = 0;
  int l = 0;
  auto* poly_cmd = app.add_subcommand("poly", "Build a class polynomial");
  poly_cmd->add_option("--family", family_name, "hilbert|weber|eta-l|eta-p1p2|ramanujan")->required();
  poly_cmd->add_option("-D", D, "discriminant D (the CM discriminant is -D)")->required();
  poly_cmd->add_option("--l", l, "prime for eta-l");
  poly_cmd->add_option("--pair", pair, "p1,p2 for eta-p1p2");
  poly_cmd->add_option("--out", out_path, "also write the polynomial in cache format");
  poly_cmd->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  unsigned bits = 0;
  std::uint64_t seed = 1;
  std::string curve_family = "ramanujan";
  auto* curve_cmd = app.add_subcommand("curve", "Generate a prime-order curve");
  curve_cmd->add_option("-D", D, "discriminant D")->required();
  curve_cmd->add_option("--bits", bits, "bit length of p")->required();
  curve_cmd->add_option("--family", curve_family, "hilbert|weber|eta-l|ramanujan");
  curve_cmd->add_option("--l", l, "prime for eta-l");
  curve_cmd->add_option("--seed", seed, "random seed");
  curve_cmd->add_option("--cache", cache_dir, "polynomial cache directory");
  curve_cmd->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  std::string d_list, d_range, families = "all", mode = "estimate", records;
  long max_h = 200;
  auto* bench_cmd = app.add_subcommand("bench", "Precision and size benchmark");
  bench_cmd->add_option("--d-list", d_list, "comma separated discriminants");
  bench_cmd->add_option("--d-range", d_range, "start:stop[:step]");
  bench_cmd->add_option("--families", families, "all|none|comma separated tags");
  bench_cmd->add_option("--mode", mode, "estimate|construct")->check(CLI::IsMember({"estimate", "construct"}));
  bench_cmd->add_option("--max-h", max_h, "class number cap for construct mode");
  bench_cmd->add_option("--records", records, "write line-delimited JSON records here");
  bench_cmd->add_option("--format", format, "table|jsonl");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  try {
    if (poly_cmd->parsed()) {
      Family fam = family_from_flags(family_name, l, pair);
      ClassPolynomial poly = build_class_polynomial(fam, D);
      if (!out_path.empty()) write_polynomial_file(out_path, poly);
      out << (format == "json" ? poly_json(poly) : poly.to_string()) << "\n";
      return kExitOk;
    }
    if (curve_cmd->parsed()) {
      Family fam = family_from_flags(curve_family, l, pair);
      require_discriminant(D);
      if (D % 8 != 3)
        throw Error(ErrorKind::InvalidDiscriminant, "prime orders need D = 3 mod 8, got " + std::to_string(D));
      check_family(fam, D);
      std::optional<ClassPolynomial> poly;
      if (!cache_dir.empty()) poly = load_polynomial(cache_dir, fam, D);
      if (!poly) {
        poly = build_class_polynomial(fam, D);
        if (!cache_dir.empty()) store_polynomial(cache_dir, *poly);
      }
      CurveParams E = generate_prime_order_curve(D, bits, fam, seed, &*poly);
      out << (format == "json" ? curve_json(E) + "\n" : curve_text(E));
      return kExitOk;
    }
    if (bench_cmd->parsed()) {
      std::vector<long long> Ds;
      for (const auto& tok : split(d_list, ',')) Ds.push_back(parse_ll(tok));
      if (!d_range.empty())
        for (long long d : parse_d_range(d_range)) Ds.push_back(d);
      BenchOptions opts;
      opts.mode = mode == "construct" ? BenchMode::Construct : BenchMode::Estimate;
      opts.max_h = max_h;
      auto rows = bench_report(Ds, parse_family_list(families), opts);
      out << (format == "jsonl" ? format_bench_records(rows) : format_bench_table(rows));
      if (!records.empty()) {
        std::ofstream rec(records, std::ios::trunc);
        if (!rec) throw Error(ErrorKind::Io, "cannot write " + records);
        rec << format_bench_records(rows);
        if (!rec) throw Error(ErrorKind::Io, "write failed for " + records);
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitPrecondition;
}

}  // namespace ramcm
