#include <doctest.h>

#include <random>

#include "hamcoh/linalg.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hamcoh;

namespace {

SparseExactMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int density_pct,
                                bool fractions) {
  std::vector<RationalTriplet> entries;
  std::uniform_int_distribution<int> val(-5, 5), den(1, 4), pct(0, 99);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (pct(rng) < density_pct) entries.push_back({r, c, Rational(val(rng), fractions ? den(rng) : 1)});
  return SparseExactMatrix::from_triplets(rows, cols, std::move(entries));
}

/// Product of a random low-rank pair, so ranks are not generically full.
SparseExactMatrix low_rank(std::mt19937& rng, std::size_t rows, std::size_t cols, std::size_t inner) {
  const auto a = testing_support::to_dense(random_matrix(rng, rows, inner, 50, false));
  const auto b = testing_support::to_dense(random_matrix(rng, inner, cols, 50, true));
  std::vector<RationalTriplet> entries;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      mpq_class s = 0;
      for (std::size_t k = 0; k < inner; ++k) s += a[r][k] * b[k][c];
      if (s != 0) entries.push_back({r, c, s});
    }
  return SparseExactMatrix::from_triplets(rows, cols, std::move(entries));
}

}  // namespace

TEST_CASE("default primes") {
  const auto primes = default_primes();
  REQUIRE(primes.size() == 2);
  CHECK(primes[0] == 4294967291ULL);
  CHECK(primes[1] == 4294967279ULL);
  CHECK(fallback_prime() == 4294967231ULL);
}

TEST_CASE("ranks agree with dense elimination") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12, inner = 1 + rng() % 8;
    const auto m = trial % 2 ? low_rank(rng, rows, cols, inner) : random_matrix(rng, rows, cols, 30, true);
    const std::size_t expected = oracle::dense_rank(testing_support::to_dense(m));
    CHECK(exact_rank(m) == expected);
    for (auto p : default_primes()) CHECK(rank_mod_p(m, p) == expected);
    const auto cert = rank_certified(m, default_primes(), 100, 2);
    CHECK(cert.rank == expected);
    CHECK(cert.agreement);
    CHECK(cert.exact_confirmed);
    REQUIRE(cert.exact_rank.has_value());
    CHECK(*cert.exact_rank == expected);
  }
}

TEST_CASE("modular rank drops when the prime divides a minor") {
  // det [[1,1],[1,8]] = 7.
  const auto m = SparseExactMatrix::from_triplets(2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 8}});
  CHECK(rank_mod_p(m, 7) == 1);
  CHECK(rank_mod_p(m, 11) == 2);
  CHECK(exact_rank(m) == 2);
  const auto cert = rank_certified(m, std::vector<std::uint64_t>{7, 11}, 100);
  CHECK_FALSE(cert.agreement);
  CHECK(cert.rank == 2);
}

TEST_CASE("reduction rejects denominators divisible by p") {
  const auto m = SparseExactMatrix::from_triplets(1, 1, {{0, 0, Rational(1, 7)}});
  CHECK_THROWS_AS(rank_mod_p(m, 7), UnreducibleEntry);
  CHECK(rank_mod_p(m, 11) == 1);
  CHECK_THROWS_AS(Field::prime(4), std::invalid_argument);
  CHECK_THROWS(rank_certified(m, std::vector<std::uint64_t>{11}, 10));
}

TEST_CASE("kernel basis is exact and primitive") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = low_rank(rng, 1 + rng() % 8, 1 + rng() % 8, 1 + rng() % 4);
    const auto kernel = kernel_basis_exact(m);
    CHECK(kernel.size() == m.cols() - exact_rank(m));
    for (const auto& v : kernel) {
      for (const auto& x : m.multiply(v)) CHECK(x == 0);
      mpz_class g = 0;
      for (const auto& x : v) {
        CHECK(x.get_den() == 1);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
      }
      CHECK(g == 1);
    }
    if (!kernel.empty()) CHECK(oracle::dense_rank(testing_support::to_dense(matrix_from_columns(m.cols(), kernel))) ==
                               kernel.size());
  }
  const auto big = SparseExactMatrix(5, 5);
  CHECK_THROWS_AS(kernel_basis_exact(big, 4), ThresholdExceeded);
}

TEST_CASE("primitive integer vectors") {
  auto v = primitive_integer_vector({Rational(1, 2), Rational(-1, 3), Rational(0)});
  CHECK(v == std::vector<Rational>{-3, 2, 0});
  CHECK(primitive_integer_vector({0, 0}) == std::vector<Rational>{0, 0});
}

TEST_CASE("sparse matrix construction") {
  const auto m = SparseExactMatrix::from_triplets(2, 3, {{0, 1, 2}, {0, 1, -2}, {1, 2, 5}, {1, 2, 1}});
  CHECK(m.nonzeros() == 1);
  CHECK(m.rational_at(1, 2) == 6);
  CHECK(m.rational_at(0, 1) == 0);
  CHECK_THROWS_AS(SparseExactMatrix::from_triplets(2, 2, {{2, 0, 1}}), std::out_of_range);
  const auto t = m.transpose();
  CHECK(t.rows() == 3);
  CHECK(t.rational_at(2, 1) == 6);
  const auto r = m.reduce_mod(5);
  CHECK(r.residue_entries().front().value == 1);
  CHECK(m.with_column({1, 0}).cols() == 4);
  CHECK(m.multiply({1, 1, 1}) == std::vector<Rational>{0, 6});
}
