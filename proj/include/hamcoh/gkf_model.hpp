#pragma once

// Closed-form model of the non-positive-weight cohomology of h_2n: the
// graded-commutative algebra on Gamma, Psi_1..Psi_n (even) and h_1..h_n (odd)
// modulo the ideal generated by Gamma^k Psi_1^k_1 ... Psi_n^k_n with
// k + k_1 + 2 k_2 + ... + n k_n > n, with differential d(h_i) = Psi_i.

#include <string>
#include <utility>
#include <vector>

#include "hamcoh/cohomology.hpp"
#include "hamcoh/sparse_matrix.hpp"

namespace hamcoh {

struct ModelConventions {
  /// Cohomological degree of Gamma. The default 2 is the degree of the
  /// central-extension class, which is what the CE complex of h_2n exhibits;
  /// 2n-1 reproduces the odd-Gamma reading of the theorem.
  int gamma_degree = 2;

  static ModelConventions odd_gamma(int n) { return ModelConventions{2 * n - 1}; }
  friend bool operator==(const ModelConventions&, const ModelConventions&) = default;
};

struct ModelGenerator {
  enum class Kind { gamma, psi, h };
  Kind kind;
  int index;   ///< 1..n for psi and h, 0 for gamma
  int degree;
  int weight;  ///< diagonal convention: Gamma -2, Psi and h 0
  int parity() const { return degree % 2; }
  std::string name() const;
};

/// Gamma, Psi_1..Psi_n, h_1..h_n in that order.
std::vector<ModelGenerator> model_generators(int n, const ModelConventions& conv = {});

struct ModelMonomial {
  int gamma_exp = 0;
  std::vector<int> psi_exps;   ///< k_1..k_n
  std::vector<bool> h_flags;   ///< l_1..l_n

  int n() const { return static_cast<int>(psi_exps.size()); }
  int degree(const ModelConventions& conv = {}) const;
  int weight() const { return -2 * gamma_exp; }
  /// gamma_exp + sum i k_i; the monomial is nonzero in the quotient iff <= n.
  int ideal_load() const;
  bool nonzero() const { return ideal_load() <= n(); }
  /// "Gamma*Psi1^2*h1*h2", "1" for the unit.
  std::string to_string() const;

  friend bool operator==(const ModelMonomial&, const ModelMonomial&) = default;
  friend auto operator<=>(const ModelMonomial&, const ModelMonomial&) = default;
};

/// Nonzero monomials of degree <= degree_max ordered by (degree, weight, lex).
std::vector<ModelMonomial> model_basis(int n, int degree_max, const ModelConventions& conv = {});

struct ModelDifferential {
  std::vector<ModelMonomial> basis;
  /// Index ranges of each degree inside `basis`: [offsets[d], offsets[d+1]).
  std::vector<std::size_t> offsets;
  /// maps[d]: degree d -> degree d+1, for d < degree_max.
  std::vector<SparseExactMatrix> maps;
};

/// The derivation with d(Gamma) = d(Psi_i) = 0, d(h_i) = Psi_i, Koszul
/// signs with the order Gamma, Psi, h, products reduced modulo the ideal.
ModelDifferential model_differential(int n, int degree_max, const ModelConventions& conv = {});

/// Cohomology of the model in one weight (<= 0). Throws std::invalid_argument
/// with "model covers non-positive weight only" for positive weights.
BettiTable predicted_betti(int n, int weight, int degree_max, bool reduced, const ModelConventions& conv = {},
                           const EngineOptions& opts = {});

/// (degree, weight) of the sector housing the one-loop anomaly of the
/// m-extended theory: (4n + m + 1, 0).
std::pair<int, int> anomaly_target(int n, int m);

/// Degree bound of the model: largest degree of a nonzero monomial.
int model_degree_bound(int n, const ModelConventions& conv = {});

}  // namespace hamcoh
