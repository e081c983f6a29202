#include "hamcoh/poisson.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hamcoh {

AlgebraSpec::AlgebraSpec(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("AlgebraSpec: n must be >= 1");
}

Monomial::Monomial(std::vector<unsigned> exponents) : exponents_(std::move(exponents)) {
  if (exponents_.empty() || exponents_.size() % 2 != 0)
    throw std::invalid_argument("Monomial: exponent vector must have even positive length");
  degree_ = static_cast<int>(std::accumulate(exponents_.begin(), exponents_.end(), 0u));
  if (degree_ < 1) throw std::invalid_argument("Monomial: constants are not elements of the algebra");
}

Monomial Monomial::p(const AlgebraSpec& spec, int i, unsigned power) {
  std::vector<unsigned> e(spec.num_variables(), 0);
  e.at(i) = power;
  return Monomial(std::move(e));
}

Monomial Monomial::q(const AlgebraSpec& spec, int i, unsigned power) {
  std::vector<unsigned> e(spec.num_variables(), 0);
  e.at(spec.n() + i) = power;
  return Monomial(std::move(e));
}

std::pair<int, int> Monomial::bidegree() const {
  int dp = 0, dq = 0;
  for (int i = 0; i < num_pairs(); ++i) {
    dp += static_cast<int>(p_exponent(i));
    dq += static_cast<int>(q_exponent(i));
  }
  return {dp - 1, dq - 1};
}

std::vector<int> Monomial::torus_weight() const {
  std::vector<int> t(num_pairs());
  for (int i = 0; i < num_pairs(); ++i)
    t[i] = static_cast<int>(p_exponent(i)) - static_cast<int>(q_exponent(i));
  return t;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.exponents_.size() != exponents_.size())
    throw std::invalid_argument("Monomial: mismatched number of variables");
  std::vector<unsigned> e(exponents_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
  return Monomial(std::move(e));
}

std::string Monomial::to_string() const {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](char var, int i, unsigned power) {
    if (power == 0) return;
    if (!first) out << '*';
    first = false;
    out << var << (i + 1);
    if (power > 1) out << '^' << power;
  };
  for (int i = 0; i < num_pairs(); ++i) emit('p', i, p_exponent(i));
  for (int i = 0; i < num_pairs(); ++i) emit('q', i, q_exponent(i));
  return out.str();
}

bool CanonicalLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  return a.exponents() > b.exponents();
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (unsigned e : m.exponents()) h = (h ^ e) * 1099511628211ull;
  return h;
}

PoissonElement::PoissonElement(const Monomial& m, Rational coefficient) {
  add_term(m, coefficient);
}

Rational PoissonElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void PoissonElement::add_term(std::vector<unsigned> exponents, const Rational& c) {
  if (c == 0) return;
  if (std::all_of(exponents.begin(), exponents.end(), [](unsigned e) { return e == 0; })) return;
  add_term(Monomial(std::move(exponents)), c);
}

void PoissonElement::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::optional<int> PoissonElement::homogeneous_weight() const {
  if (terms_.empty()) return std::nullopt;
  const int w = terms_.begin()->first.weight();
  for (const auto& [m, c] : terms_)
    if (m.weight() != w) return std::nullopt;
  return w;
}

PoissonElement& PoissonElement::operator+=(const PoissonElement& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

PoissonElement& PoissonElement::operator-=(const PoissonElement& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

PoissonElement& PoissonElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

std::string PoissonElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << '-';
    first = false;
    Rational a = abs(c);
    if (a != 1) out << a.get_str() << '*';
    out << m.to_string();
  }
  return out.str();
}

PoissonElement poisson_bracket(const PoissonElement& f, const PoissonElement& g,
                               const AlgebraSpec& spec) {
  const auto nvars = static_cast<std::size_t>(spec.num_variables());
  auto check = [&](const PoissonElement& e) {
    for (const auto& [m, c] : e.terms())
      if (m.exponents().size() != nvars)
        throw std::invalid_argument("poisson_bracket: element does not match the algebra spec");
  };
  check(f);
  check(g);

  // {x^a, x^b} = sum_i (a_{p_i} b_{q_i} - a_{q_i} b_{p_i}) x^{a + b - e_{p_i} - e_{q_i}}
  PoissonElement result;
  const int n = spec.n();
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      for (int i = 0; i < n; ++i) {
        const long long c = static_cast<long long>(a.p_exponent(i)) * b.q_exponent(i) -
                            static_cast<long long>(a.q_exponent(i)) * b.p_exponent(i);
        if (c == 0) continue;
        std::vector<unsigned> e(nvars);
        for (std::size_t k = 0; k < nvars; ++k) e[k] = a.exponents()[k] + b.exponents()[k];
        --e[i];
        --e[n + i];
        result.add_term(std::move(e), ca * cb * Rational(static_cast<long>(c)));
      }
    }
  }
  return result;
}

namespace {

// Exponent vectors of the given total degree, lexicographically descending.
void descending_compositions(std::vector<unsigned>& current, std::size_t slot, unsigned remaining,
                             std::vector<Monomial>& out) {
  if (slot + 1 == current.size()) {
    current[slot] = remaining;
    out.emplace_back(current);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    current[slot] = e;
    descending_compositions(current, slot + 1, remaining - e, out);
  }
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<Monomial> enumerate_monomials(const AlgebraSpec& spec, int weight) {
  if (weight < -1) throw std::invalid_argument("enumerate_monomials: weight must be >= -1");
  std::vector<Monomial> out;
  out.reserve(count_monomials(spec, weight));
  std::vector<unsigned> current(spec.num_variables(), 0);
  descending_compositions(current, 0, static_cast<unsigned>(weight + 2), out);
  return out;
}

std::size_t count_monomials(const AlgebraSpec& spec, int weight) {
  if (weight < -1) return 0;
  const std::size_t vars = spec.num_variables();
  return binomial(static_cast<std::size_t>(weight + 2) + vars - 1, vars - 1);
}

std::vector<Monomial> sp_basis(const AlgebraSpec& spec) { return enumerate_monomials(spec, 0); }

}  // namespace hamcoh
