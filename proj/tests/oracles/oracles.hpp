#pragma once

// Slow reference implementations used only by tests. They share no code with
// the library beyond the GMP number types.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

using Exps = std::vector<int>;  // p_1..p_n, q_1..q_n
using Poly = std::map<Exps, mpq_class>;

inline void add(Poly& f, const Exps& e, const mpq_class& c) {
  if (c == 0) return;
  auto& slot = f[e];
  slot += c;
  if (slot == 0) f.erase(e);
}

inline Poly derivative(const Poly& f, std::size_t var) {
  Poly out;
  for (const auto& [e, c] : f) {
    if (e[var] == 0) continue;
    Exps d = e;
    d[var] -= 1;
    add(out, d, c * e[var]);
  }
  return out;
}

inline Poly product(const Poly& f, const Poly& g) {
  Poly out;
  for (const auto& [a, ca] : f)
    for (const auto& [b, cb] : g) {
      Exps e(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
      add(out, e, ca * cb);
    }
  return out;
}

/// {f, g} = sum_i df/dp_i dg/dq_i - df/dq_i dg/dp_i, constants dropped.
inline Poly bracket(const Poly& f, const Poly& g, int n) {
  Poly out;
  for (int i = 0; i < n; ++i) {
    for (const auto& [e, c] : product(derivative(f, i), derivative(g, n + i))) add(out, e, c);
    for (const auto& [e, c] : product(derivative(f, n + i), derivative(g, i))) add(out, e, -c);
  }
  out.erase(Exps(2 * n, 0));
  return out;
}

inline int degree(const Exps& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// All non-constant monomials of total degree lo..hi.
inline std::vector<Exps> monomials(int n, int lo, int hi) {
  std::vector<Exps> out;
  Exps e(2 * n, 0);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == 2 * n - 1) {
      e[var] = left;
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
  };
  for (int d = std::max(lo, 1); d <= hi; ++d) rec(rec, 0, d);
  return out;
}

/// Wedge of dual generators as a sorted list of monomials.
using Wedge = std::vector<Exps>;

/// Every d-subset of monomials whose weights (degree - 2) sum to w.
inline std::vector<Wedge> sector(int n, int d, int w) {
  std::vector<Wedge> out;
  if (d == 0) {
    if (w == 0) out.push_back({});
    return out;
  }
  const auto pool = monomials(n, 1, w + d + 1);  // others weigh at least -1
  Wedge cur;
  auto rec = [&](auto&& self, std::size_t start, int left, int wsum) -> void {
    if (left == 0) {
      if (wsum == w) {
        Wedge s = cur;
        std::sort(s.begin(), s.end());
        out.push_back(s);
      }
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      if (wsum + degree(pool[i]) - 2 - (left - 1) > w) continue;
      cur.push_back(pool[i]);
      self(self, i + 1, left - 1, wsum + degree(pool[i]) - 2);
      cur.pop_back();
    }
  };
  rec(rec, 0, d, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Value of the dual wedge xi_{s_1} ^ ... ^ xi_{s_d} (in the listed order) on
/// the argument tuple (x_1..x_d) of basis monomials: the determinant of the
/// pairing matrix, i.e. the sign of the matching permutation.
inline int evaluate(const Wedge& s, const std::vector<Exps>& args) {
  if (args.size() != s.size()) return 0;
  std::vector<int> perm;
  for (const auto& a : args) {
    const auto it = std::find(s.begin(), s.end(), a);
    if (it == s.end()) return 0;
    perm.push_back(static_cast<int>(it - s.begin()));
  }
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] == perm[j]) return 0;
      if (perm[j] < perm[i]) sign = -sign;
    }
  return sign;
}

/// (d xi_S)(x_0..x_d) = sum_{i<j} (-1)^(i+j) xi_S([x_i, x_j], x_0..^i..^j..x_d).
inline mpq_class ce_differential_entry(const Wedge& s, const Wedge& t, int n) {
  mpq_class total = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      Poly xi{{t[i], 1}}, xj{{t[j], 1}};
      std::vector<Exps> rest;
      for (std::size_t k = 0; k < t.size(); ++k)
        if (k != i && k != j) rest.push_back(t[k]);
      const int sign = (i + j) % 2 ? -1 : 1;
      for (const auto& [m, c] : bracket(xi, xj, n)) {
        std::vector<Exps> args{m};
        args.insert(args.end(), rest.begin(), rest.end());
        if (int v = evaluate(s, args); v != 0) total += sign * v * c;
      }
    }
  return total;
}

/// (L_h xi_S)(x_1..x_d) = - sum_i xi_S(x_1, .., {h, x_i}, .., x_d).
inline mpq_class sp_action_entry(const Wedge& s, const Wedge& t, const Exps& h, int n) {
  mpq_class total = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Poly hp{{h, 1}}, xi{{t[i], 1}};
    for (const auto& [m, c] : bracket(hp, xi, n)) {
      std::vector<Exps> args = t;
      args[i] = m;
      if (int v = evaluate(s, args); v != 0) total -= v * c;
    }
  }
  return total;
}

using Dense = std::vector<std::vector<mpq_class>>;

/// Rank by textbook Gaussian elimination over QQ.
inline std::size_t dense_rank(Dense a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const mpq_class f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Matrix of d from `src` to `tgt` by argument evaluation.
inline Dense ce_matrix(const std::vector<Wedge>& src, const std::vector<Wedge>& tgt, int n) {
  Dense m(tgt.size(), std::vector<mpq_class>(src.size(), 0));
  for (std::size_t r = 0; r < tgt.size(); ++r)
    for (std::size_t c = 0; c < src.size(); ++c) m[r][c] = ce_differential_entry(src[c], tgt[r], n);
  return m;
}

}  // namespace oracle
