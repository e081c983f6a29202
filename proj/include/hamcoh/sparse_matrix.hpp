#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "hamcoh/rational.hpp"

namespace hamcoh {

/// Coefficient field of a matrix: the rationals, or GF(p) for a prime p that
/// fits in 32 bits (so residue products fit a machine word).
class Field {
 public:
  static Field rationals() { return Field(); }
  static Field prime(std::uint64_t p);

  bool is_rational() const { return !modulus_.has_value(); }
  std::uint64_t modulus() const { return modulus_.value(); }
  const std::optional<std::uint64_t>& modulus_opt() const { return modulus_; }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field() = default;
  std::optional<std::uint64_t> modulus_;
};

template <class Value>
struct Triplet {
  std::size_t row;
  std::size_t col;
  Value value;
};

using RationalTriplet = Triplet<Rational>;
using ResidueTriplet = Triplet<std::uint64_t>;

/// Coordinate-form matrix over QQ or GF(p). Entries are kept sorted by
/// (col, row), unique, and nonzero.
class SparseExactMatrix {
 public:
  /// Zero matrix over QQ.
  SparseExactMatrix(std::size_t rows, std::size_t cols);
  /// Zero matrix over `field`.
  SparseExactMatrix(std::size_t rows, std::size_t cols, Field field);

  /// Canonicalizes values, sums duplicate coordinates and drops zeros. Throws std::out_of_range for
  /// coordinates outside the shape.
  static SparseExactMatrix from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<RationalTriplet> entries);
  static SparseExactMatrix from_triplets(std::size_t rows, std::size_t cols, std::uint64_t p,
                                         std::vector<ResidueTriplet> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }
  std::size_t nonzeros() const;

  /// Valid only over QQ / only over GF(p) respectively.
  const std::vector<RationalTriplet>& rational_entries() const;
  const std::vector<ResidueTriplet>& residue_entries() const;

  /// Entry lookup (binary search); zero if absent.
  Rational rational_at(std::size_t row, std::size_t col) const;

  /// Reduction of a rational matrix into GF(p). Throws UnreducibleEntry if p
  /// divides a denominator.
  SparseExactMatrix reduce_mod(std::uint64_t p) const;

  SparseExactMatrix transpose() const;

  /// Rational matrix-vector product.
  std::vector<Rational> multiply(const std::vector<Rational>& v) const;

  /// Appends a rational column (QQ only).
  SparseExactMatrix with_column(const std::vector<Rational>& column) const;

  friend bool operator==(const SparseExactMatrix& a, const SparseExactMatrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  Field field_;
  std::variant<std::vector<RationalTriplet>, std::vector<ResidueTriplet>> entries_;
};

/// Builds a rational matrix whose columns are the given vectors.
SparseExactMatrix matrix_from_columns(std::size_t rows, const std::vector<std::vector<Rational>>& columns);

}  // namespace hamcoh
