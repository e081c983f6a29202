#pragma once

// Weight-graded Chevalley-Eilenberg cochains of the Hamiltonian algebra.
//
// A cochain basis element is a wedge xi_{m_1} ^ ... ^ xi_{m_d} of dual
// generators with strictly increasing monomial ids. Its weight is the sum of
// the monomial weights m_i: the cochain pairs nontrivially only with
// arguments of that total weight. Linear monomials contribute -1, quadratics
// 0, so every (degree, weight) sector is finite.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hamcoh/algebra.hpp"
#include "hamcoh/sparse_matrix.hpp"

namespace hamcoh {

struct DualGenerator {
  GenId monomial_id;
  /// Minus the monomial weight; +1 exactly for linear monomials.
  int dual_weight;
};

DualGenerator dual_generator(const HamiltonianAlgebra& algebra, GenId id);

struct WedgeMonomial {
  std::vector<GenId> generators;  // strictly increasing

  int degree() const { return static_cast<int>(generators.size()); }
  friend bool operator==(const WedgeMonomial&, const WedgeMonomial&) = default;
};

/// Weight of a wedge: sum of the weights of its monomials.
int wedge_weight(const HamiltonianAlgebra& algebra, std::span<const GenId> generators);

enum class SectorScope {
  full,        ///< every wedge of the sector
  horizontal,  ///< wedges with no quadratic (sp) generator
  subalgebra,  ///< wedges of quadratic generators only: cochains of sp(2n)
};

struct SectorOptions {
  SectorScope scope = SectorScope::full;
  /// Keep only wedges annihilated by the Cartan torus of sp(2n). The full
  /// complex splits into torus-eigenspace subcomplexes and every nonzero
  /// eigenspace is acyclic, so cohomology is unchanged.
  bool torus_zero = false;

  friend bool operator==(const SectorOptions&, const SectorOptions&) = default;
};

/// Ordered basis of one (degree, weight) sector, stored flat. Wedges are in
/// lexicographic order of their id sequences.
class SectorBasis {
 public:
  SectorBasis(std::shared_ptr<const HamiltonianAlgebra> algebra, int degree, int weight,
              SectorOptions options, std::vector<GenId> flat);

  const HamiltonianAlgebra& algebra() const { return *algebra_; }
  std::shared_ptr<const HamiltonianAlgebra> algebra_ptr() const { return algebra_; }
  const AlgebraSpec& spec() const { return algebra_->spec(); }
  int degree() const { return degree_; }
  int weight() const { return weight_; }
  const SectorOptions& options() const { return options_; }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  std::span<const GenId> wedge(std::size_t i) const {
    return std::span<const GenId>(flat_).subspan(i * static_cast<std::size_t>(degree_),
                                                 static_cast<std::size_t>(degree_));
  }
  WedgeMonomial wedge_monomial(std::size_t i) const;

  /// Position of a sorted wedge, if present.
  std::optional<std::size_t> position(std::span<const GenId> wedge) const;

  /// "xi[p1]^xi[q1^3]" style rendering for reports.
  std::string describe(std::size_t i) const;

 private:
  std::shared_ptr<const HamiltonianAlgebra> algebra_;
  int degree_;
  int weight_;
  SectorOptions options_;
  std::vector<GenId> flat_;
  std::size_t size_;
};

/// Largest degree with a nonempty cochain sector of this weight.
int max_sector_degree(const AlgebraSpec& spec, int weight);

/// All wedges of `degree` generators whose weights sum to `weight`.
/// Enumeration runs over weight profiles: counts of linear, quadratic and
/// positive-weight generators that balance. An empty basis is valid.
SectorBasis enumerate_sector(const AlgebraSpec& spec, int degree, int weight,
                             SectorOptions options = {});

/// Matrix of the CE differential C^d_(w) -> C^{d+1}_(w); columns follow
/// `source`, rows follow `target`. On generators
///   d xi_m = - sum_{a<b} c^m_{ab} xi_a ^ xi_b,  {e_a, e_b} = sum_m c^m_{ab} e_m,
/// extended as a graded derivation. For subalgebra-scope bases the result is
/// the CE differential of sp(2n) (terms leaving the subalgebra are dropped).
/// Throws std::invalid_argument if the bases disagree on spec, weight,
/// degree or scope.
SparseExactMatrix assemble_differential(const SectorBasis& source, const SectorBasis& target,
                                        Field field = Field::rationals(), int threads = 1);

/// Subspace of a torus-zero sector fixed by the symplectic signed
/// permutations of the Darboux pairs, generated by p_1 -> q_1, q_1 -> -p_1
/// and permutations of the pairs. These come from the connected group
/// Sp(2n) and act trivially on cohomology, so the invariant subcomplex has
/// the same cohomology. Element k is the signed orbit sum of the wedges
/// members[offsets[k] .. offsets[k+1]) with the matching signs; the first
/// member has sign +1. Orbits whose stabilizer acts by -1 carry no
/// invariant and are omitted.
struct InvariantBasis {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> members;
  std::vector<signed char> signs;

  std::size_t size() const { return offsets.empty() ? 0 : offsets.size() - 1; }
};

/// Throws std::invalid_argument unless the sector is torus-zero.
InvariantBasis invariant_basis(const SectorBasis& basis);

/// The differential restricted to invariants, in orbit-sum coordinates.
SparseExactMatrix assemble_invariant_differential(const SectorBasis& source, const InvariantBasis& source_inv,
                                                  const SectorBasis& target, const InvariantBasis& target_inv,
                                                  Field field = Field::rationals(), int threads = 1);

/// Matrix of the coadjoint action of a quadratic monomial h on a sector:
///   L_h xi_m = - sum_{m'} <xi_m, {h, e_{m'}}> xi_{m'},
/// extended as a derivation. Throws std::invalid_argument if h is not
/// quadratic, or if h moves a torus-zero basis out of itself (use the
/// two-basis overload with an unfiltered target then).
SparseExactMatrix assemble_sp_action(const SectorBasis& basis, const Monomial& h);

/// L_h from `source` into `target` (same degree, weight and scope; target
/// must contain every image wedge).
SparseExactMatrix assemble_sp_action(const SectorBasis& source, const SectorBasis& target,
                                     const Monomial& h);

/// Relative cochains C^d_(w)(h_2n, sp(2n)): sp-invariant horizontal cochains.
struct RelativeSector {
  SectorBasis horizontal;                  ///< horizontal (torus-zero) wedges
  std::vector<std::vector<Rational>> kernel;  ///< invariant vectors over `horizontal`
  std::size_t dimension() const { return kernel.size(); }
};

/// Enumerates horizontal wedges and returns a basis of the joint kernel of the
/// sp(2n) action restricted to them. Torus invariance is imposed by
/// enumeration; the remaining sp_basis elements are handled by an exact
/// kernel computation (ThresholdExceeded above `exact_threshold`).
RelativeSector relative_sector(const AlgebraSpec& spec, int degree, int weight,
                               std::size_t exact_threshold = 2000);

/// Embeds coordinates over a sub-basis (e.g. horizontal) into the matching
/// full-scope sector order.
std::vector<Rational> embed_vector(const SectorBasis& from, const SectorBasis& into,
                                   const std::vector<Rational>& coords);

}  // namespace hamcoh
