#include "ramcm/cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ramcm/error.hpp"

namespace ramcm {

namespace {

constexpr std::string_view kMagic = "ramcm-classpoly v1";

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

[[noreturn]] void corrupt(const std::string& why) { throw Error(ErrorKind::CacheCorrupt, "cache entry: " + why); }

std::string field(const std::string& header, const std::string& key) {
  std::string needle = " " + key + "=";
  auto pos = header.find(needle);
  if (pos == std::string::npos) corrupt("header lacks " + key);
  pos += needle.size();
  auto end = header.find(' ', pos);
  return header.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t polynomial_checksum(const ClassPolynomial& poly) {
  std::string body = poly.family.tag() + "\n" + std::to_string(poly.D) + "\n";
  for (const auto& c : poly.coeffs) body += c.get_str() + "\n";
  return fnv1a64(body);
}

std::string serialize_polynomial(const ClassPolynomial& poly) {
  std::ostringstream out;
  out << kMagic << " family=" << poly.family.tag() << " D=" << poly.D << " degree=" << poly.degree()
      << " checksum=" << hex64(polynomial_checksum(poly)) << "\n";
  for (const auto& c : poly.coeffs) out << c.get_str() << "\n";
  return out.str();
}

ClassPolynomial parse_polynomial(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header) || header.rfind(kMagic, 0) != 0) corrupt("bad header");
  ClassPolynomial poly;
  int degree = 0;
  try {
    poly.family = Family::from_tag(field(header, "family"));
    poly.D = std::stoll(field(header, "D"));
    degree = std::stoi(field(header, "degree"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CacheCorrupt) throw;
    corrupt(e.what());
  } catch (const std::exception&) {
    corrupt("unreadable header values");
  }
  std::string checksum = field(header, "checksum");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    mpz_class c;
    if (c.set_str(line, 10) != 0) corrupt("bad coefficient '" + line + "'");
    poly.coeffs.push_back(c);
  }
  if (poly.degree() != degree) corrupt("degree does not match coefficient count");
  if (hex64(polynomial_checksum(poly)) != checksum) corrupt("checksum mismatch");
  return poly;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const Family& family, long long D) {
  std::string tag = family.tag();
  for (char& ch : tag)
    if (ch == ':' || ch == ',') ch = '_';
  return dir / (tag + "_D" + std::to_string(D) + ".poly");
}

void write_polynomial_file(const std::filesystem::path& path, const ClassPolynomial& poly) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out << serialize_polynomial(poly);
    if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot rename into " + path.string() + ": " + ec.message());
}

ClassPolynomial read_polynomial_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_polynomial(buf.str());
}

void store_polynomial(const std::filesystem::path& dir, const ClassPolynomial& poly) {
  write_polynomial_file(cache_path(dir, poly.family, poly.D), poly);
}

std::optional<ClassPolynomial> load_polynomial(const std::filesystem::path& dir, const Family& family, long long D) {
  auto path = cache_path(dir, family, D);
  if (!std::filesystem::exists(path)) return std::nullopt;
  ClassPolynomial poly = read_polynomial_file(path);
  if (poly.family != family || poly.D != D) corrupt("entry " + path.string() + " holds a different polynomial");
  return poly;
}

}  // namespace ramcm
