#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "hamcoh/poisson.hpp"

namespace hamcoh {

/// Index of a monomial in the global canonical order (graded, then
/// descending lex). Ids of lower weights never change when the table grows.
using GenId = std::uint32_t;

/// One term of the co-bracket of a basis monomial m: {e_a, e_b} contains
/// coefficient * e_m, with a < b.
struct CobracketTerm {
  GenId a;
  GenId b;
  std::int64_t coefficient;
};

/// Monomial table plus structure constants of the Hamiltonian algebra for a
/// fixed n. Tables are extended lazily one weight at a time; the co-bracket
/// of each weight block is built once on first use. Safe for concurrent use.
class HamiltonianAlgebra {
 public:
  explicit HamiltonianAlgebra(AlgebraSpec spec);
  HamiltonianAlgebra(const HamiltonianAlgebra&) = delete;
  HamiltonianAlgebra& operator=(const HamiltonianAlgebra&) = delete;

  /// Process-wide shared instance for `spec`.
  static std::shared_ptr<const HamiltonianAlgebra> shared(const AlgebraSpec& spec);

  const AlgebraSpec& spec() const { return spec_; }

  /// Half-open id range [first, last) of the monomials of weight w.
  std::pair<GenId, GenId> weight_range(int w) const;
  std::size_t weight_class_size(int w) const;

  const Monomial& monomial(GenId id) const;
  int weight(GenId id) const;
  std::span<const int> torus_weight(GenId id) const;
  GenId id_of(const Monomial& m) const;

  std::span<const CobracketTerm> cobracket(GenId m) const;

 private:
  struct WeightBlock {
    int weight = 0;
    GenId first = 0;
    std::vector<Monomial> monomials;
    std::vector<int> torus;  // n entries per monomial
    std::unordered_map<Monomial, GenId, MonomialHash> lookup;
    mutable std::once_flag cobracket_once;
    mutable std::vector<std::vector<CobracketTerm>> cobracket;
  };

  const WeightBlock& block(int w) const;
  const WeightBlock& block_of(GenId id) const;
  void build_cobracket(const WeightBlock& target) const;

  AlgebraSpec spec_;
  mutable std::shared_mutex mutex_;
  mutable std::vector<std::unique_ptr<WeightBlock>> blocks_;  // index w + 1
};

}  // namespace hamcoh
