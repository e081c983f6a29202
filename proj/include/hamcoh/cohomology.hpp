#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamcoh/ce_complex.hpp"
#include "hamcoh/linalg.hpp"
#include "hamcoh/matrix_io.hpp"

namespace hamcoh {

enum class ComplexKind { absolute, relative, sp, model };

std::string to_string(ComplexKind kind);

struct BettiRow {
  int degree = 0;
  std::size_t dim = 0;
  std::size_t rank_out = 0;  ///< rank of d: C^d -> C^{d+1}
  std::size_t rank_in = 0;   ///< rank of d: C^{d-1} -> C^d
  long long betti = 0;
  bool certified = true;
  RankCertificate out_certificate;
};

struct BettiTable {
  AlgebraSpec spec{1};
  int weight = 0;
  bool reduced = true;
  ComplexKind kind = ComplexKind::absolute;
  bool torus_reduced = false;
  bool symmetry_reduced = false;
  /// True when the rows cover every degree with a nonempty cochain space.
  bool complete = false;
  std::vector<BettiRow> rows;

  const BettiRow* row(int degree) const;
  /// Betti number at `degree`; throws std::out_of_range if not computed.
  long long betti(int degree) const;
  std::map<int, long long> nonzero_betti() const;
  bool all_certified() const;
  long long euler_cochains() const;
  long long euler_betti() const;
  /// Human-readable list of violated table invariants (empty when sound).
  std::vector<std::string> invariant_violations() const;
};

struct EngineOptions {
  std::vector<std::uint64_t> primes = default_primes();
  std::size_t exact_threshold = kDefaultExactThreshold;
  int threads = 1;
  /// Restrict absolute computations to the torus-invariant subcomplex.
  bool torus_reduce = false;
  /// Further restrict to invariants of the signed pair permutations
  /// (implies torus_reduce). Ranks and dimensions then refer to the
  /// invariant subcomplex; Betti numbers are unchanged.
  bool symmetry_reduce = false;
  /// Add fallback_prime() when the supplied primes disagree.
  bool auto_extra_prime = true;
  /// Optional cache for rational differentials.
  std::shared_ptr<const MatrixCache> cache;
};

/// Certified rank of a rational matrix under `opts`. A row counts as
/// certified when every prime agrees, or (after the fallback prime is added)
/// when at least two primes attain the maximal rank; and, where the exact
/// rank was computed, it matches.
RankCertificate certify_rank(const SparseExactMatrix& m, const EngineOptions& opts, bool& certified);

/// H^d_(w)(h_2n) for degree_min <= d <= degree_max.
BettiTable betti_table(const AlgebraSpec& spec, int weight, int degree_min, int degree_max, bool reduced,
                       const EngineOptions& opts = {});
inline BettiTable betti_table(const AlgebraSpec& spec, int weight, int degree_max, bool reduced,
                              const EngineOptions& opts = {}) {
  return betti_table(spec, weight, 0, degree_max, reduced, opts);
}

/// H^d_(w)(h_2n, sp(2n)) over the invariant horizontal subcomplex.
BettiTable betti_table_relative(const AlgebraSpec& spec, int weight, int degree_min, int degree_max,
                                bool reduced = true, const EngineOptions& opts = {});
inline BettiTable betti_table_relative(const AlgebraSpec& spec, int weight, int degree_max,
                                       const EngineOptions& opts = {}) {
  return betti_table_relative(spec, weight, 0, degree_max, true, opts);
}

/// Full CE cohomology of sp(2n) on the exterior algebra of its dual.
BettiTable sp_cohomology(const AlgebraSpec& spec, const EngineOptions& opts = {});

/// Differential C^d -> C^{d+1} of the absolute complex (cached when a cache
/// is configured).
SparseExactMatrix absolute_differential(const AlgebraSpec& spec, int degree, int weight,
                                        const EngineOptions& opts = {});

class EmptyCohomology : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CocycleRepresentative {
  AlgebraSpec spec{1};
  int degree = 0;
  int weight = 0;
  bool relative = false;
  SectorBasis basis;                  ///< coordinates refer to this sector
  std::vector<Rational> coefficients;
  std::size_t image_rank = 0;         ///< rank of the incoming differential
};

/// An exact cocycle that is not a coboundary. Throws EmptyCohomology when
/// the class group vanishes, ThresholdExceeded when exact elimination is not
/// permitted.
CocycleRepresentative extract_representative(const AlgebraSpec& spec, int degree, int weight, bool relative,
                                             const EngineOptions& opts = {});

/// Human-readable rendering "c1*xi[..]^xi[..] + ...".
std::string describe(const CocycleRepresentative& rep);

}  // namespace hamcoh
