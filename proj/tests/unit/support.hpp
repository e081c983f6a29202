#pragma once

#include <map>
#include <vector>

#include "hamcoh/ce_complex.hpp"
#include "oracles.hpp"

namespace testing_support {

inline oracle::Exps exps_of(const hamcoh::Monomial& m) {
  return oracle::Exps(m.exponents().begin(), m.exponents().end());
}

/// Generators in the library's order, which fixes the sign of the wedge.
inline oracle::Wedge oracle_wedge(const hamcoh::SectorBasis& b, std::size_t i) {
  oracle::Wedge w;
  for (auto id : b.wedge(i)) w.push_back(exps_of(b.algebra().monomial(id)));
  return w;
}

inline std::vector<oracle::Wedge> oracle_wedges(const hamcoh::SectorBasis& b) {
  std::vector<oracle::Wedge> out;
  for (std::size_t i = 0; i < b.size(); ++i) out.push_back(oracle_wedge(b, i));
  return out;
}

inline oracle::Dense to_dense(const hamcoh::SparseExactMatrix& m) {
  oracle::Dense d(m.rows(), std::vector<mpq_class>(m.cols(), 0));
  for (const auto& e : m.rational_entries()) d[e.row][e.col] = e.value;
  return d;
}


}  // namespace testing_support
