#include "hamcoh/gkf_model.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace hamcoh {

namespace {

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("model requires n >= 1");
}

void check_conventions(const ModelConventions& conv) {
  if (conv.gamma_degree < 1) throw std::invalid_argument("gamma degree must be positive");
}

int gamma_cap(int n, const ModelConventions& conv) { return conv.gamma_degree % 2 ? 1 : n; }

}  // namespace

std::string ModelGenerator::name() const {
  switch (kind) {
    case Kind::gamma: return "Gamma";
    case Kind::psi: return "Psi" + std::to_string(index);
    case Kind::h: return "h" + std::to_string(index);
  }
  return "?";
}

std::vector<ModelGenerator> model_generators(int n, const ModelConventions& conv) {
  check_n(n);
  check_conventions(conv);
  std::vector<ModelGenerator> out{{ModelGenerator::Kind::gamma, 0, conv.gamma_degree, -2}};
  for (int i = 1; i <= n; ++i) out.push_back({ModelGenerator::Kind::psi, i, 4 * i, 0});
  for (int i = 1; i <= n; ++i) out.push_back({ModelGenerator::Kind::h, i, 4 * i - 1, 0});
  return out;
}

int ModelMonomial::degree(const ModelConventions& conv) const {
  int d = gamma_exp * conv.gamma_degree;
  for (int i = 0; i < n(); ++i) d += psi_exps[i] * 4 * (i + 1) + (h_flags[i] ? 4 * (i + 1) - 1 : 0);
  return d;
}

int ModelMonomial::ideal_load() const {
  int load = gamma_exp;
  for (int i = 0; i < n(); ++i) load += (i + 1) * psi_exps[i];
  return load;
}

std::string ModelMonomial::to_string() const {
  std::vector<std::string> parts;
  if (gamma_exp == 1) parts.push_back("Gamma");
  if (gamma_exp > 1) parts.push_back("Gamma^" + std::to_string(gamma_exp));
  for (int i = 0; i < n(); ++i) {
    if (psi_exps[i] == 1) parts.push_back("Psi" + std::to_string(i + 1));
    if (psi_exps[i] > 1) parts.push_back("Psi" + std::to_string(i + 1) + "^" + std::to_string(psi_exps[i]));
  }
  for (int i = 0; i < n(); ++i)
    if (h_flags[i]) parts.push_back("h" + std::to_string(i + 1));
  if (parts.empty()) return "1";
  std::string s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) s += "*" + parts[i];
  return s;
}

int model_degree_bound(int n, const ModelConventions& conv) {
  int best = 0;
  for (const auto& m : model_basis(n, 1 << 20, conv)) best = std::max(best, m.degree(conv));
  return best;
}

std::vector<ModelMonomial> model_basis(int n, int degree_max, const ModelConventions& conv) {
  check_n(n);
  check_conventions(conv);
  std::vector<ModelMonomial> out;
  ModelMonomial m;
  m.psi_exps.assign(static_cast<std::size_t>(n), 0);
  m.h_flags.assign(static_cast<std::size_t>(n), false);
  std::function<void(int, int)> psi = [&](int i, int load) {
    if (i == n) {
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        for (int j = 0; j < n; ++j) m.h_flags[j] = (mask >> j) & 1u;
        if (m.degree(conv) <= degree_max) out.push_back(m);
      }
      return;
    }
    for (int k = 0; load + k * (i + 1) <= n; ++k) {
      m.psi_exps[i] = k;
      psi(i + 1, load + k * (i + 1));
    }
    m.psi_exps[i] = 0;
  };
  for (int g = 0; g <= gamma_cap(n, conv); ++g) {
    m.gamma_exp = g;
    psi(0, g);
  }
  std::sort(out.begin(), out.end(), [&](const ModelMonomial& a, const ModelMonomial& b) {
    const int da = a.degree(conv), db = b.degree(conv);
    if (da != db) return da < db;
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    return a < b;
  });
  return out;
}

ModelDifferential model_differential(int n, int degree_max, const ModelConventions& conv) {
  ModelDifferential out;
  out.basis = model_basis(n, degree_max, conv);
  out.offsets.assign(static_cast<std::size_t>(degree_max) + 2, out.basis.size());
  // offsets[d] = first index of degree >= d.
  for (int d = 0; d <= degree_max; ++d) {
    std::size_t first = out.basis.size();
    for (std::size_t i = 0; i < out.basis.size(); ++i)
      if (out.basis[i].degree(conv) >= d) {
        first = i;
        break;
      }
    out.offsets[static_cast<std::size_t>(d)] = first;
  }
  out.offsets[static_cast<std::size_t>(degree_max) + 1] = out.basis.size();

  std::map<ModelMonomial, std::size_t> index;
  for (std::size_t i = 0; i < out.basis.size(); ++i) index[out.basis[i]] = i;
  const int gamma_parity = conv.gamma_degree % 2;
  for (int d = 0; d < degree_max; ++d) {
    const std::size_t s0 = out.offsets[d], s1 = out.offsets[d + 1], t0 = s1, t1 = out.offsets[d + 2];
    std::vector<RationalTriplet> entries;
    for (std::size_t c = s0; c < s1; ++c) {
      const ModelMonomial& src = out.basis[c];
      int odd_before = src.gamma_exp * gamma_parity;
      for (int i = 0; i < n; ++i) {
        if (!src.h_flags[i]) continue;
        ModelMonomial img = src;
        img.h_flags[i] = false;
        img.psi_exps[i] += 1;
        if (img.nonzero()) {
          const auto it = index.find(img);
          if (it == index.end()) throw std::logic_error("model differential left its basis");
          entries.push_back({it->second - t0, c - s0, Rational(odd_before % 2 ? -1 : 1)});
        }
        ++odd_before;
      }
    }
    out.maps.push_back(SparseExactMatrix::from_triplets(t1 - t0, s1 - s0, std::move(entries)));
  }
  return out;
}

BettiTable predicted_betti(int n, int weight, int degree_max, bool reduced, const ModelConventions& conv,
                           const EngineOptions& opts) {
  if (weight > 0) throw std::invalid_argument("model covers non-positive weight only");
  if (degree_max < 0) throw std::invalid_argument("degree_max must be >= 0");
  const ModelDifferential full = model_differential(n, degree_max + 1, conv);

  // Restrict each degree to the requested weight.
  auto select = [&](int d) {
    std::vector<std::size_t> keep;
    for (std::size_t i = full.offsets[d]; i < full.offsets[d + 1]; ++i)
      if (full.basis[i].weight() == weight) keep.push_back(i - full.offsets[d]);
    return keep;
  };
  std::vector<std::vector<std::size_t>> kept;
  for (int d = 0; d <= degree_max + 1; ++d) kept.push_back(select(d));

  BettiTable table;
  table.spec = AlgebraSpec(n);
  table.weight = weight;
  table.reduced = reduced;
  table.kind = ComplexKind::model;
  table.complete = degree_max >= model_degree_bound(n, conv);
  std::vector<std::size_t> rank_out(static_cast<std::size_t>(degree_max) + 1, 0);
  std::vector<bool> ok(rank_out.size(), true);
  std::vector<RankCertificate> certs(rank_out.size());
  for (int d = 0; d <= degree_max; ++d) {
    const auto& src = kept[d];
    const auto& tgt = kept[d + 1];
    std::map<std::size_t, std::size_t> row_of;
    for (std::size_t r = 0; r < tgt.size(); ++r) row_of[tgt[r]] = r;
    std::vector<RationalTriplet> entries;
    for (std::size_t c = 0; c < src.size(); ++c)
      for (const auto& e : full.maps[d].rational_entries())
        if (e.col == src[c])
          if (auto it = row_of.find(e.row); it != row_of.end()) entries.push_back({it->second, c, e.value});
    const auto m = SparseExactMatrix::from_triplets(tgt.size(), src.size(), std::move(entries));
    bool certified = true;
    certs[d] = certify_rank(m, opts, certified);
    rank_out[d] = certs[d].rank;
    ok[d] = certified;
  }
  for (int d = 0; d <= degree_max; ++d) {
    BettiRow row;
    row.degree = d;
    row.dim = kept[d].size();
    if (reduced && d == 0 && weight == 0) row.dim = 0;
    row.rank_out = rank_out[d];
    row.rank_in = d > 0 ? rank_out[d - 1] : 0;
    row.certified = ok[d] && (d == 0 || ok[d - 1]);
    row.out_certificate = certs[d];
    row.betti = static_cast<long long>(row.dim) - static_cast<long long>(row.rank_out) -
                static_cast<long long>(row.rank_in);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::pair<int, int> anomaly_target(int n, int m) {
  check_n(n);
  if (m < 0) throw std::invalid_argument("anomaly_target requires m >= 0");
  return {4 * n + m + 1, 0};
}

}  // namespace hamcoh
