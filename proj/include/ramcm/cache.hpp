#pragma once

// Text cache of class polynomials: a header line followed by one decimal
// coefficient per line, constant term first.
//
//   ramcm-classpoly v1 family=<tag> D=<D> degree=<n> checksum=<hex>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ramcm/classpoly.hpp"

namespace ramcm {

std::uint64_t fnv1a64(std::string_view data);
/// Checksum over family tag, D and coefficients.
std::uint64_t polynomial_checksum(const ClassPolynomial& poly);

std::string serialize_polynomial(const ClassPolynomial& poly);
/// Throws CacheCorrupt on any malformed or mismatching content.
ClassPolynomial parse_polynomial(const std::string& text);

std::filesystem::path cache_path(const std::filesystem::path& dir, const Family& family, long long D);
/// Writes to a temporary file and renames it into place.
void write_polynomial_file(const std::filesystem::path& path, const ClassPolynomial& poly);
ClassPolynomial read_polynomial_file(const std::filesystem::path& path);

void store_polynomial(const std::filesystem::path& dir, const ClassPolynomial& poly);
/// nullopt when no entry exists; CacheCorrupt when one exists but is bad.
std::optional<ClassPolynomial> load_polynomial(const std::filesystem::path& dir, const Family& family, long long D);

}  // namespace ramcm
