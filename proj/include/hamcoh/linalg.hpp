#pragma once

// Exact rank and kernel computations for sparse matrices: sparse elimination
// over GF(p), multi-modular rank certificates, and fraction-free elimination
// over the integers for exact confirmation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamcoh/sparse_matrix.hpp"

namespace hamcoh {

/// A prime divides the denominator of some rational entry.
class UnreducibleEntry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact elimination was requested on a matrix above the size threshold.
class ThresholdExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultExactThreshold = 2000;

/// Two primes just below 2^32, in this order.
std::vector<std::uint64_t> default_primes();
/// Prime added when the default pair disagrees.
std::uint64_t fallback_prime();

struct RankCertificate {
  std::size_t rank = 0;
  std::vector<std::uint64_t> primes_used;
  std::vector<std::size_t> per_prime_ranks;
  bool agreement = false;
  bool exact_confirmed = false;
  std::optional<std::size_t> exact_rank;
};

/// Rank over GF(p). A rational matrix is reduced first (UnreducibleEntry if p
/// divides a denominator); a modular matrix must already be over GF(p).
std::size_t rank_mod_p(const SparseExactMatrix& m, std::uint64_t p);

/// Ranks modulo every prime (concurrently when threads > 1). `rank` is the
/// largest modular rank, which is a lower bound for the rational rank;
/// agreement is set when all primes agree. When max(rows, cols) <=
/// exact_threshold the exact rank is computed too and exact_confirmed is set
/// if it matches. Requires at least two primes.
RankCertificate rank_certified(const SparseExactMatrix& m, std::span<const std::uint64_t> primes,
                               std::size_t exact_threshold = kDefaultExactThreshold,
                               int threads = 1);

/// Rational rank via sparse fraction-free elimination over the integers.
std::size_t exact_rank(const SparseExactMatrix& m);

/// Right kernel over QQ. Each vector is primitive integral with its last
/// nonzero coordinate positive. Throws ThresholdExceeded when
/// max(rows, cols) > threshold.
std::vector<std::vector<Rational>> kernel_basis_exact(const SparseExactMatrix& m,
                                                      std::size_t threshold = kDefaultExactThreshold);

/// Scales a rational vector to a primitive integer vector (same direction
/// up to sign; last nonzero coordinate positive).
std::vector<Rational> primitive_integer_vector(std::vector<Rational> v);

}  // namespace hamcoh
