#pragma once

// Line-oriented coordinate format for cached matrices:
//
//   rows cols field          field is QQ or a decimal prime
//   row col value            1-based; value is num[/den] (QQ) or a residue
//   ...
//   0 0 0                    terminator
//
// Entries are written in (col, row) order. Readers reject duplicates, zero
// values, out-of-range indices and a missing terminator.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "hamcoh/sparse_matrix.hpp"

namespace hamcoh {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

void write_matrix(std::ostream& out, const SparseExactMatrix& m);
SparseExactMatrix read_matrix(std::istream& in);

void save_matrix(const std::filesystem::path& path, const SparseExactMatrix& m);
SparseExactMatrix load_matrix(const std::filesystem::path& path);

/// Bumped whenever the monomial order or the wedge order changes; part of
/// every cache key.
inline constexpr int kMonomialOrderVersion = 1;

/// Identifies one cached differential.
struct CacheKey {
  int n = 1;
  int degree = 0;
  int weight = 0;
  std::string scope = "full";  // full | horizontal | subalgebra
  bool torus_zero = false;
  std::string kind = "differential";

  std::string stem() const;
  std::string canonical() const;
};

/// Directory of cached matrices. Each `<stem>.mtx` has a `<stem>.sha256`
/// sidecar holding SHA-256 of the key text and of the file contents; a
/// mismatching or missing sidecar is a miss.
class MatrixCache {
 public:
  explicit MatrixCache(std::filesystem::path dir);

  /// Cache directory named by HAMCOH_CACHE_DIR, if set.
  static std::optional<std::filesystem::path> default_directory();

  const std::filesystem::path& directory() const { return dir_; }

  std::optional<SparseExactMatrix> load(const CacheKey& key) const;
  void store(const CacheKey& key, const SparseExactMatrix& m) const;
  /// Removes every cached matrix and sidecar; returns the number removed.
  std::size_t clear() const;

 private:
  std::filesystem::path dir_;
};

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace hamcoh
