#pragma once

// The Lie algebra of formal Hamiltonian vector fields on the 2n-disk:
// polynomials in Darboux coordinates p_1..p_n, q_1..q_n modulo constants,
// with the Poisson bracket.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamcoh/rational.hpp"

namespace hamcoh {

class AlgebraSpec {
 public:
  explicit AlgebraSpec(int n);

  int n() const { return n_; }
  int num_variables() const { return 2 * n_; }
  /// dim sp(2n) = number of quadratic monomials.
  int sp_dimension() const { return n_ * (2 * n_ + 1); }

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;

 private:
  int n_;
};

/// A monomial p^a q^b of total degree >= 1. The exponent vector holds the
/// p-exponents in slots [0, n) and the q-exponents in slots [n, 2n).
class Monomial {
 public:
  explicit Monomial(std::vector<unsigned> exponents);

  static Monomial p(const AlgebraSpec& spec, int i, unsigned power = 1);
  static Monomial q(const AlgebraSpec& spec, int i, unsigned power = 1);

  const std::vector<unsigned>& exponents() const { return exponents_; }
  int num_pairs() const { return static_cast<int>(exponents_.size() / 2); }
  unsigned p_exponent(int i) const { return exponents_[i]; }
  unsigned q_exponent(int i) const { return exponents_[num_pairs() + i]; }

  int total_degree() const { return degree_; }
  /// Diagonal weight: total degree minus two.
  int weight() const { return degree_ - 2; }
  /// (deg_p - 1, deg_q - 1); sums to weight().
  std::pair<int, int> bidegree() const;
  /// Eigenvalues under the Cartan elements p_i q_i, up to a global sign:
  /// entry i is p_exponent(i) - q_exponent(i).
  std::vector<int> torus_weight() const;

  Monomial operator*(const Monomial& other) const;

  /// "p1^2*q1", "p2*q1*q2", ...
  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<unsigned> exponents_;
  int degree_ = 0;
};

/// Canonical order: by total degree, then lexicographically descending on
/// the exponent vector (so p^2 < pq < q^2). Every downstream index is taken
/// in this order.
struct CanonicalLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// A finite rational combination of monomials. Zero coefficients and
/// constants are never stored.
class PoissonElement {
 public:
  using TermMap = std::map<Monomial, Rational, CanonicalLess>;

  PoissonElement() = default;
  PoissonElement(const Monomial& m, Rational coefficient = 1);  // NOLINT

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of m (zero if absent).
  Rational coefficient(const Monomial& m) const;

  /// Adds c * m; a constant monomial is dropped.
  void add_term(std::vector<unsigned> exponents, const Rational& c);
  void add_term(const Monomial& m, const Rational& c);

  /// Weight if every term has the same weight.
  std::optional<int> homogeneous_weight() const;

  PoissonElement& operator+=(const PoissonElement& other);
  PoissonElement& operator-=(const PoissonElement& other);
  PoissonElement& operator*=(const Rational& c);
  friend PoissonElement operator+(PoissonElement a, const PoissonElement& b) { return a += b; }
  friend PoissonElement operator-(PoissonElement a, const PoissonElement& b) { return a -= b; }
  friend PoissonElement operator*(const Rational& c, PoissonElement a) { return a *= c; }
  friend bool operator==(const PoissonElement&, const PoissonElement&) = default;

  std::string to_string() const;

 private:
  TermMap terms_;
};

/// {f, g} = sum_i (df/dp_i dg/dq_i - df/dq_i dg/dp_i), constant term dropped.
PoissonElement poisson_bracket(const PoissonElement& f, const PoissonElement& g,
                               const AlgebraSpec& spec);

/// All monomials of weight `weight` (total degree weight + 2) in canonical
/// order. Throws std::invalid_argument for weight < -1.
std::vector<Monomial> enumerate_monomials(const AlgebraSpec& spec, int weight);

/// Number of monomials of the given weight: C(weight + 2n + 1, 2n - 1).
std::size_t count_monomials(const AlgebraSpec& spec, int weight);

/// The quadratic monomials, spanning sp(2n).
std::vector<Monomial> sp_basis(const AlgebraSpec& spec);

}  // namespace hamcoh
