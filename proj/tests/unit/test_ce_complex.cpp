#include <doctest.h>

#include <map>
#include <set>

#include "hamcoh/ce_complex.hpp"
#include "hamcoh/linalg.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hamcoh;
using testing_support::oracle_wedges;
using testing_support::to_dense;

namespace {

/// Oracle matrix of d re-indexed by the library's bases.
oracle::Dense oracle_differential(const SectorBasis& src, const SectorBasis& tgt) {
  const auto s = oracle_wedges(src), t = oracle_wedges(tgt);
  return oracle::ce_matrix(s, t, src.spec().n());
}

oracle::Dense compose(const oracle::Dense& a, const oracle::Dense& b, std::size_t inner) {
  const std::size_t rows = a.size(), cols = b.empty() ? 0 : b[0].size();
  oracle::Dense out(rows, std::vector<mpq_class>(cols, 0));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[r][k] != 0)
        for (std::size_t c = 0; c < cols; ++c) out[r][c] += a[r][k] * b[k][c];
  return out;
}

}  // namespace

TEST_CASE("sector enumeration matches brute-force subsets") {
  for (int n = 1; n <= 2; ++n)
    for (int w = -3; w <= 2; ++w)
      for (int d = 0; d <= (n == 1 ? 8 : 3); ++d) {
        const auto basis = enumerate_sector(AlgebraSpec(n), d, w);
        auto mine = oracle_wedges(basis);
        for (auto& w : mine) std::sort(w.begin(), w.end());
        std::sort(mine.begin(), mine.end());
        CHECK(mine == oracle::sector(n, d, w));
      }
}

TEST_CASE("sector dimensions at n = 1") {
  // Values from the brute-force subset oracle.
  const AlgebraSpec spec(1);
  const std::vector<std::size_t> w0{1, 3, 11, 30, 45, 41, 23, 6, 0};
  const std::vector<std::size_t> wm1{0, 2, 6, 10, 14, 12, 4, 0};
  const std::vector<std::size_t> wm2{0, 0, 1, 3, 3, 1, 0};
  const std::vector<std::size_t> w1{0, 4, 22, 60, 108, 128, 90, 32, 4, 0};
  for (std::size_t d = 0; d < w0.size(); ++d) {
    CHECK(enumerate_sector(spec, static_cast<int>(d), 0).size() == w0[d]);
    CHECK(oracle::sector(1, static_cast<int>(d), 0).size() == w0[d]);
  }
  for (std::size_t d = 0; d < wm1.size(); ++d) CHECK(enumerate_sector(spec, static_cast<int>(d), -1).size() == wm1[d]);
  for (std::size_t d = 0; d < wm2.size(); ++d) CHECK(enumerate_sector(spec, static_cast<int>(d), -2).size() == wm2[d]);
  for (std::size_t d = 0; d < w1.size(); ++d) CHECK(enumerate_sector(spec, static_cast<int>(d), 1).size() == w1[d]);
  CHECK(enumerate_sector(spec, 3, -3).empty());
  CHECK(max_sector_degree(spec, 0) == 7);
  CHECK(max_sector_degree(spec, -2) == 5);
}

TEST_CASE("wedges are sorted and weights add up") {
  const auto basis = enumerate_sector(AlgebraSpec(2), 3, 1);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto w = basis.wedge(i);
    CHECK(std::is_sorted(w.begin(), w.end()));
    CHECK(std::adjacent_find(w.begin(), w.end()) == w.end());
    CHECK(wedge_weight(basis.algebra(), w) == 1);
    CHECK(basis.position(w) == i);
    if (i > 0) {
      const auto prev = basis.wedge(i - 1);
      CHECK(std::lexicographical_compare(prev.begin(), prev.end(), w.begin(), w.end()));
    }
  }
}

TEST_CASE("differential matches argument evaluation") {
  for (int n = 1; n <= 2; ++n)
    for (int w = -2; w <= (n == 1 ? 1 : 0); ++w)
      for (int d = 0; d <= (n == 1 ? 7 : 3); ++d) {
        const auto src = enumerate_sector(AlgebraSpec(n), d, w);
        const auto tgt = enumerate_sector(AlgebraSpec(n), d + 1, w);
        if (src.size() * tgt.size() > 6000) continue;
        CAPTURE(n);
        CAPTURE(w);
        CAPTURE(d);
        CHECK(to_dense(assemble_differential(src, tgt)) == oracle_differential(src, tgt));
      }
}

TEST_CASE("d squared vanishes") {
  for (int n = 1; n <= 2; ++n)
    for (int w = -2; w <= 1; ++w)
      for (int d = 0; d + 2 <= (n == 1 ? 8 : 5); ++d) {
        const auto a = enumerate_sector(AlgebraSpec(n), d, w);
        const auto b = enumerate_sector(AlgebraSpec(n), d + 1, w);
        const auto c = enumerate_sector(AlgebraSpec(n), d + 2, w);
        if (a.empty() || b.empty() || c.empty()) continue;
        const auto first = assemble_differential(a, b);
        const auto second = assemble_differential(b, c);
        // Sparse composition: column ranges of `second` indexed by column.
        std::vector<std::size_t> start(b.size() + 1, 0);
        for (const auto& e : second.rational_entries()) ++start[e.col + 1];
        for (std::size_t i = 0; i < b.size(); ++i) start[i + 1] += start[i];
        const auto& se = second.rational_entries();
        bool zero = true;
        std::map<std::size_t, Rational> acc;
        std::size_t current = 0;
        auto flush = [&] {
          for (const auto& [r, v] : acc) zero = zero && v == 0;
          acc.clear();
        };
        for (const auto& e : first.rational_entries()) {
          if (e.col != current) {
            flush();
            current = e.col;
          }
          for (std::size_t k = start[e.row]; k < start[e.row + 1]; ++k) acc[se[k].row] += se[k].value * e.value;
        }
        flush();
        CAPTURE(n);
        CAPTURE(w);
        CAPTURE(d);
        CHECK(zero);
      }
}

namespace {

// Signed image of a wedge under p_i <-> q_i (q_i -> -p_i) or, for
// swap_pairs, under exchanging the first two Darboux pairs.
std::pair<std::vector<GenId>, int> transform(const SectorBasis& basis, std::span<const GenId> w, bool swap_pairs) {
  const int n = basis.spec().n();
  std::vector<GenId> out;
  int sign = 1;
  for (GenId g : w) {
    auto e = basis.algebra().monomial(g).exponents();
    if (swap_pairs) {
      std::swap(e[0], e[1]);
      std::swap(e[n], e[n + 1]);
    } else {
      if (e[n] % 2) sign = -sign;
      std::swap(e[0], e[n]);
    }
    out.push_back(basis.algebra().id_of(Monomial(e)));
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (out[i] > out[j]) sign = -sign;
  std::sort(out.begin(), out.end());
  return {out, sign};
}

std::vector<Rational> orbit_vector(const SectorBasis& basis, const InvariantBasis& inv, std::size_t k) {
  std::vector<Rational> v(basis.size(), Rational(0));
  for (std::size_t t = inv.offsets[k]; t < inv.offsets[k + 1]; ++t) v[inv.members[t]] = inv.signs[t];
  return v;
}

}  // namespace

TEST_CASE("orbit sums are invariant and span disjoint wedges") {
  for (int n = 1; n <= 2; ++n)
    for (int w = -2; w <= 0; ++w)
      for (int d = 0; d <= (n == 1 ? 8 : 5); ++d) {
        const auto basis = enumerate_sector(AlgebraSpec(n), d, w, {SectorScope::full, true});
        const auto inv = invariant_basis(basis);
        std::set<std::size_t> seen;
        for (auto m : inv.members) CHECK(seen.insert(m).second);
        for (std::size_t k = 0; k < inv.size(); ++k) {
          CHECK(inv.signs[inv.offsets[k]] == 1);
          const auto v = orbit_vector(basis, inv, k);
          for (bool swap_pairs : {false, true}) {
            if (swap_pairs && n < 2) continue;
            std::vector<Rational> image(basis.size(), Rational(0));
            for (std::size_t i = 0; i < basis.size(); ++i) {
              if (v[i] == 0) continue;
              const auto [wedge, sign] = transform(basis, basis.wedge(i), swap_pairs);
              const auto j = basis.position(wedge);
              REQUIRE(j);
              image[*j] += v[i] * sign;
            }
            CAPTURE(n);
            CAPTURE(w);
            CAPTURE(d);
            CHECK(image == v);
          }
        }
      }
}

TEST_CASE("invariant differential represents d on orbit sums") {
  for (int n = 1; n <= 2; ++n)
    for (int w = -2; w <= 0; ++w)
      for (int d = 0; d <= (n == 1 ? 8 : 4); ++d) {
        const SectorOptions so{SectorScope::full, true};
        const auto src = enumerate_sector(AlgebraSpec(n), d, w, so);
        const auto tgt = enumerate_sector(AlgebraSpec(n), d + 1, w, so);
        const auto si = invariant_basis(src), ti = invariant_basis(tgt);
        const auto full = assemble_differential(src, tgt);
        const auto reduced = assemble_invariant_differential(src, si, tgt, ti);
        REQUIRE(reduced.rows() == ti.size());
        REQUIRE(reduced.cols() == si.size());
        std::vector<std::vector<Rational>> columns(si.size(), std::vector<Rational>(tgt.size(), Rational(0)));
        for (const auto& e : reduced.rational_entries()) {
          const auto u = orbit_vector(tgt, ti, e.row);
          for (std::size_t r = 0; r < tgt.size(); ++r) columns[e.col][r] += e.value * u[r];
        }
        for (std::size_t k = 0; k < si.size(); ++k) {
          CAPTURE(n);
          CAPTURE(w);
          CAPTURE(d);
          CHECK(full.multiply(orbit_vector(src, si, k)) == columns[k]);
        }
      }
}

TEST_CASE("invariant bases need torus-zero sectors") {
  CHECK_THROWS_AS(invariant_basis(enumerate_sector(AlgebraSpec(1), 2, 0)), std::invalid_argument);
}

TEST_CASE("modular assembly is the reduction of the rational one") {
  const auto src = enumerate_sector(AlgebraSpec(2), 3, 0);
  const auto tgt = enumerate_sector(AlgebraSpec(2), 4, 0);
  const auto q = assemble_differential(src, tgt);
  const std::uint64_t p = default_primes()[0];
  CHECK(assemble_differential(src, tgt, Field::prime(p)) == q.reduce_mod(p));
  CHECK(assemble_differential(src, tgt, Field::rationals(), 4) == q);
}

TEST_CASE("sp action matches argument evaluation and commutes with d") {
  const AlgebraSpec spec(1);
  for (int w = -2; w <= 1; ++w)
    for (int d = 1; d <= 5; ++d) {
      const auto here = enumerate_sector(spec, d, w);
      const auto next = enumerate_sector(spec, d + 1, w);
      if (here.empty()) continue;
      const auto s = oracle_wedges(here);
      for (const auto& h : sp_basis(spec)) {
        const auto action = to_dense(assemble_sp_action(here, h));
        oracle::Dense expected(here.size(), std::vector<mpq_class>(here.size(), 0));
        for (std::size_t r = 0; r < here.size(); ++r)
          for (std::size_t c = 0; c < here.size(); ++c)
            expected[r][c] = oracle::sp_action_entry(s[c], s[r], testing_support::exps_of(h), 1);
        CHECK(action == expected);
        if (next.empty()) continue;
        const auto dm = to_dense(assemble_differential(here, next));
        const auto next_action = to_dense(assemble_sp_action(next, h));
        CHECK(compose(dm, action, here.size()) == compose(next_action, dm, next.size()));
      }
    }
  CHECK_THROWS_AS(assemble_sp_action(enumerate_sector(spec, 1, 0), Monomial::p(spec, 0, 3)),
                  std::invalid_argument);
}

TEST_CASE("torus-zero and horizontal scopes") {
  const AlgebraSpec spec(2);
  const auto full = enumerate_sector(spec, 3, 0);
  const auto torus = enumerate_sector(spec, 3, 0, {SectorScope::full, true});
  const auto horizontal = enumerate_sector(spec, 3, 0, {SectorScope::horizontal, false});
  std::size_t zero = 0, flat = 0;
  for (std::size_t i = 0; i < full.size(); ++i) {
    std::vector<int> t(2, 0);
    bool has_quadratic = false;
    for (auto id : full.wedge(i)) {
      const auto& m = full.algebra().monomial(id);
      const auto tw = m.torus_weight();
      for (int k = 0; k < 2; ++k) t[k] += tw[k];
      has_quadratic = has_quadratic || m.weight() == 0;
    }
    if (t == std::vector<int>{0, 0}) {
      ++zero;
      CHECK(torus.position(full.wedge(i)).has_value());
    }
    if (!has_quadratic) ++flat;
  }
  CHECK(torus.size() == zero);
  CHECK(horizontal.size() == flat);
  const auto sp = enumerate_sector(spec, 2, 0, {SectorScope::subalgebra, false});
  CHECK(sp.size() == 45);
}

TEST_CASE("mismatched sectors are rejected") {
  const AlgebraSpec spec(1);
  const auto a = enumerate_sector(spec, 2, 0);
  CHECK_THROWS_AS(assemble_differential(a, enumerate_sector(spec, 4, 0)), std::invalid_argument);
  CHECK_THROWS_AS(assemble_differential(a, enumerate_sector(spec, 3, -2)), std::invalid_argument);
  CHECK_THROWS_AS(assemble_differential(a, enumerate_sector(AlgebraSpec(2), 3, 0)), std::invalid_argument);
}

TEST_CASE("relative sectors are sp invariant") {
  const AlgebraSpec spec(1);
  const auto rel = relative_sector(spec, 4, 0);
  CHECK(rel.dimension() == 1);
  const auto full = enumerate_sector(spec, 4, 0);
  for (const auto& k : rel.kernel) {
    const auto v = embed_vector(rel.horizontal, full, k);
    for (const auto& h : sp_basis(spec))
      for (const auto& x : assemble_sp_action(full, h).multiply(v)) CHECK(x == 0);
  }
  CHECK(relative_sector(spec, 0, 0).dimension() == 1);
  CHECK(relative_sector(spec, 1, -2).dimension() == 0);
  CHECK(relative_sector(spec, 2, -2).dimension() == 1);
}

TEST_CASE("rendering of wedges") {
  const auto b = enumerate_sector(AlgebraSpec(1), 2, -2);
  REQUIRE(b.size() == 1);
  CHECK(b.describe(0) == "xi[p1]^xi[q1]");
}
