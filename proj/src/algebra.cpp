#include "hamcoh/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace hamcoh {

HamiltonianAlgebra::HamiltonianAlgebra(AlgebraSpec spec) : spec_(spec) {}

std::shared_ptr<const HamiltonianAlgebra> HamiltonianAlgebra::shared(const AlgebraSpec& spec) {
  static std::mutex registry_mutex;
  static std::map<int, std::shared_ptr<const HamiltonianAlgebra>> registry;
  std::lock_guard lock(registry_mutex);
  auto& slot = registry[spec.n()];
  if (!slot) slot = std::make_shared<const HamiltonianAlgebra>(spec);
  return slot;
}

const HamiltonianAlgebra::WeightBlock& HamiltonianAlgebra::block(int w) const {
  if (w < -1) throw std::out_of_range("HamiltonianAlgebra: weight below -1");
  const auto slot = static_cast<std::size_t>(w + 1);
  {
    std::shared_lock lock(mutex_);
    if (slot < blocks_.size()) return *blocks_[slot];
  }
  std::unique_lock lock(mutex_);
  while (blocks_.size() <= slot) {
    auto b = std::make_unique<WeightBlock>();
    b->weight = static_cast<int>(blocks_.size()) - 1;
    b->first = blocks_.empty() ? 0
                               : blocks_.back()->first +
                                     static_cast<GenId>(blocks_.back()->monomials.size());
    b->monomials = enumerate_monomials(spec_, b->weight);
    b->torus.reserve(b->monomials.size() * spec_.n());
    for (std::size_t i = 0; i < b->monomials.size(); ++i) {
      b->lookup.emplace(b->monomials[i], b->first + static_cast<GenId>(i));
      for (int t : b->monomials[i].torus_weight()) b->torus.push_back(t);
    }
    blocks_.push_back(std::move(b));
  }
  return *blocks_[slot];
}

const HamiltonianAlgebra::WeightBlock& HamiltonianAlgebra::block_of(GenId id) const {
  for (int w = -1;; ++w) {
    const WeightBlock& b = block(w);
    if (id < b.first + b.monomials.size()) return b;
  }
}

std::pair<GenId, GenId> HamiltonianAlgebra::weight_range(int w) const {
  const WeightBlock& b = block(w);
  return {b.first, b.first + static_cast<GenId>(b.monomials.size())};
}

std::size_t HamiltonianAlgebra::weight_class_size(int w) const {
  return w < -1 ? 0 : count_monomials(spec_, w);
}

const Monomial& HamiltonianAlgebra::monomial(GenId id) const {
  const WeightBlock& b = block_of(id);
  return b.monomials[id - b.first];
}

int HamiltonianAlgebra::weight(GenId id) const { return block_of(id).weight; }

std::span<const int> HamiltonianAlgebra::torus_weight(GenId id) const {
  const WeightBlock& b = block_of(id);
  const std::size_t n = spec_.n();
  return std::span<const int>(b.torus).subspan((id - b.first) * n, n);
}

GenId HamiltonianAlgebra::id_of(const Monomial& m) const {
  if (m.exponents().size() != static_cast<std::size_t>(spec_.num_variables()))
    throw std::invalid_argument("HamiltonianAlgebra: monomial does not match the spec");
  const WeightBlock& b = block(m.weight());
  return b.lookup.at(m);
}

std::span<const CobracketTerm> HamiltonianAlgebra::cobracket(GenId m) const {
  const WeightBlock& b = block_of(m);
  std::call_once(b.cobracket_once, [&] { build_cobracket(b); });
  return b.cobracket[m - b.first];
}

void HamiltonianAlgebra::build_cobracket(const WeightBlock& target) const {
  const int n = spec_.n();
  const int w = target.weight;
  target.cobracket.assign(target.monomials.size(), {});
  // Only pairs with weight(a) + weight(b) = w contribute.
  for (int wa = -1; wa <= w - wa; ++wa) {
    const int wb = w - wa;
    const WeightBlock& ba = block(wa);
    const WeightBlock& bb = block(wb);
    for (std::size_t i = 0; i < ba.monomials.size(); ++i) {
      const Monomial& a = ba.monomials[i];
      const std::size_t j0 = (wa == wb) ? i + 1 : 0;
      for (std::size_t j = j0; j < bb.monomials.size(); ++j) {
        const Monomial& b = bb.monomials[j];
        for (int k = 0; k < n; ++k) {
          const std::int64_t c = static_cast<std::int64_t>(a.p_exponent(k)) * b.q_exponent(k) -
                                 static_cast<std::int64_t>(a.q_exponent(k)) * b.p_exponent(k);
          if (c == 0) continue;
          std::vector<unsigned> e(a.exponents());
          for (std::size_t v = 0; v < e.size(); ++v) e[v] += b.exponents()[v];
          --e[k];
          --e[n + k];
          const GenId ida = ba.first + static_cast<GenId>(i);
          const GenId idb = bb.first + static_cast<GenId>(j);
          const GenId m = target.lookup.at(Monomial(std::move(e)));
          // store with a < b; ids of wa <= wb block already satisfy this
          target.cobracket[m - target.first].push_back({ida, idb, c});
        }
      }
    }
  }
}

}  // namespace hamcoh
