#include "hamcoh/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hamcoh/linalg.hpp"

namespace hamcoh {

namespace {

bool is_probable_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

template <class Value>
void sort_and_merge(std::vector<Triplet<Value>>& entries, std::size_t rows, std::size_t cols,
                    auto&& add, auto&& is_zero) {
  for (const auto& e : entries)
    if (e.row >= rows || e.col >= cols)
      throw std::out_of_range("SparseExactMatrix: entry (" + std::to_string(e.row) + ", " +
                              std::to_string(e.col) + ") outside " + std::to_string(rows) + "x" +
                              std::to_string(cols));
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size();) {
    Triplet<Value> acc = std::move(entries[i]);
    std::size_t j = i + 1;
    for (; j < entries.size() && entries[j].col == acc.col && entries[j].row == acc.row; ++j)
      acc.value = add(acc.value, entries[j].value);
    if (!is_zero(acc.value)) entries[out++] = std::move(acc);
    i = j;
  }
  entries.resize(out);
}

std::uint64_t residue_of(const Rational& q, std::uint64_t p) {
  const Integer prime(static_cast<unsigned long>(p));
  Integer den = q.get_den() % prime;
  if (den == 0)
    throw UnreducibleEntry("prime " + std::to_string(p) + " divides denominator of " + q.get_str());
  Integer num = q.get_num() % prime;
  if (num < 0) num += prime;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), prime.get_mpz_t());
  Integer r = (num * inv) % prime;
  return r.get_ui();
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 32) || !is_probable_prime(p))
    throw std::invalid_argument("Field: modulus must be a prime below 2^32, got " + std::to_string(p));
  Field f;
  f.modulus_ = p;
  return f;
}

SparseExactMatrix::SparseExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), field_(Field::rationals()), entries_(std::vector<RationalTriplet>{}) {}

SparseExactMatrix::SparseExactMatrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field) {
  if (field.is_rational())
    entries_ = std::vector<RationalTriplet>{};
  else
    entries_ = std::vector<ResidueTriplet>{};
}

SparseExactMatrix SparseExactMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                                   std::vector<RationalTriplet> entries) {
  for (auto& e : entries) e.value.canonicalize();
  sort_and_merge(
      entries, rows, cols, [](const Rational& a, const Rational& b) { return Rational(a + b); },
      [](const Rational& a) { return a == 0; });
  SparseExactMatrix m(rows, cols);
  m.entries_ = std::move(entries);
  return m;
}

SparseExactMatrix SparseExactMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                                   std::uint64_t p,
                                                   std::vector<ResidueTriplet> entries) {
  const Field f = Field::prime(p);
  for (auto& e : entries) e.value %= p;
  sort_and_merge(
      entries, rows, cols, [p](std::uint64_t a, std::uint64_t b) { return (a + b) % p; },
      [](std::uint64_t a) { return a == 0; });
  SparseExactMatrix m(rows, cols, f);
  m.entries_ = std::move(entries);
  return m;
}

std::size_t SparseExactMatrix::nonzeros() const {
  return std::visit([](const auto& v) { return v.size(); }, entries_);
}

const std::vector<RationalTriplet>& SparseExactMatrix::rational_entries() const {
  if (!field_.is_rational()) throw std::logic_error("SparseExactMatrix: matrix is not over QQ");
  return std::get<std::vector<RationalTriplet>>(entries_);
}

const std::vector<ResidueTriplet>& SparseExactMatrix::residue_entries() const {
  if (field_.is_rational()) throw std::logic_error("SparseExactMatrix: matrix is not over GF(p)");
  return std::get<std::vector<ResidueTriplet>>(entries_);
}

Rational SparseExactMatrix::rational_at(std::size_t row, std::size_t col) const {
  const auto& e = rational_entries();
  auto it = std::lower_bound(e.begin(), e.end(), std::pair{col, row}, [](const auto& t, const auto& key) {
    return t.col != key.first ? t.col < key.first : t.row < key.second;
  });
  if (it != e.end() && it->col == col && it->row == row) return it->value;
  return 0;
}

SparseExactMatrix SparseExactMatrix::reduce_mod(std::uint64_t p) const {
  std::vector<ResidueTriplet> out;
  out.reserve(nonzeros());
  for (const auto& e : rational_entries()) {
    const std::uint64_t r = residue_of(e.value, p);
    if (r != 0) out.push_back({e.row, e.col, r});
  }
  SparseExactMatrix m(rows_, cols_, Field::prime(p));
  m.entries_ = std::move(out);
  return m;
}

SparseExactMatrix SparseExactMatrix::transpose() const {
  if (field_.is_rational()) {
    std::vector<RationalTriplet> t;
    t.reserve(nonzeros());
    for (const auto& e : rational_entries()) t.push_back({e.col, e.row, e.value});
    return from_triplets(cols_, rows_, std::move(t));
  }
  std::vector<ResidueTriplet> t;
  t.reserve(nonzeros());
  for (const auto& e : residue_entries()) t.push_back({e.col, e.row, e.value});
  return from_triplets(cols_, rows_, field_.modulus(), std::move(t));
}

std::vector<Rational> SparseExactMatrix::multiply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("SparseExactMatrix::multiply: size mismatch");
  std::vector<Rational> out(rows_, Rational(0));
  for (const auto& e : rational_entries())
    if (v[e.col] != 0) out[e.row] += e.value * v[e.col];
  return out;
}

SparseExactMatrix SparseExactMatrix::with_column(const std::vector<Rational>& column) const {
  if (column.size() != rows_) throw std::invalid_argument("with_column: size mismatch");
  std::vector<RationalTriplet> e = rational_entries();
  for (std::size_t r = 0; r < rows_; ++r)
    if (column[r] != 0) e.push_back({r, cols_, column[r]});
  return from_triplets(rows_, cols_ + 1, std::move(e));
}

bool operator==(const SparseExactMatrix& a, const SparseExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || !(a.field_ == b.field_)) return false;
  if (a.field_.is_rational()) {
    const auto& x = a.rational_entries();
    const auto& y = b.rational_entries();
    return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const auto& s, const auto& t) {
      return s.row == t.row && s.col == t.col && s.value == t.value;
    });
  }
  const auto& x = a.residue_entries();
  const auto& y = b.residue_entries();
  return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const auto& s, const auto& t) {
    return s.row == t.row && s.col == t.col && s.value == t.value;
  });
}

SparseExactMatrix matrix_from_columns(std::size_t rows, const std::vector<std::vector<Rational>>& columns) {
  std::vector<RationalTriplet> e;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("matrix_from_columns: size mismatch");
    for (std::size_t r = 0; r < rows; ++r)
      if (columns[c][r] != 0) e.push_back({r, c, columns[c][r]});
  }
  return SparseExactMatrix::from_triplets(rows, columns.size(), std::move(e));
}

}  // namespace hamcoh
