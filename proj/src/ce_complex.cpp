#include "hamcoh/ce_complex.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hamcoh/linalg.hpp"
#include "parallel.hpp"

namespace hamcoh {

DualGenerator dual_generator(const HamiltonianAlgebra& algebra, GenId id) {
  return {id, -algebra.weight(id)};
}

int wedge_weight(const HamiltonianAlgebra& algebra, std::span<const GenId> generators) {
  int w = 0;
  for (GenId g : generators) w += algebra.weight(g);
  return w;
}

SectorBasis::SectorBasis(std::shared_ptr<const HamiltonianAlgebra> algebra, int degree, int weight,
                         SectorOptions options, std::vector<GenId> flat)
    : algebra_(std::move(algebra)),
      degree_(degree),
      weight_(weight),
      options_(options),
      flat_(std::move(flat)),
      size_(degree == 0 ? (flat_.empty() ? 0 : 1) : flat_.size() / static_cast<std::size_t>(degree)) {}

WedgeMonomial SectorBasis::wedge_monomial(std::size_t i) const {
  auto w = wedge(i);
  return WedgeMonomial{std::vector<GenId>(w.begin(), w.end())};
}

std::optional<std::size_t> SectorBasis::position(std::span<const GenId> w) const {
  if (static_cast<int>(w.size()) != degree_) return std::nullopt;
  std::size_t lo = 0, hi = size_;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto m = wedge(mid);
    if (std::lexicographical_compare(m.begin(), m.end(), w.begin(), w.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size_ && std::ranges::equal(wedge(lo), w)) return lo;
  return std::nullopt;
}

std::string SectorBasis::describe(std::size_t i) const {
  auto w = wedge(i);
  if (w.empty()) return "1";
  std::ostringstream out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out << '^';
    out << "xi[" << algebra_->monomial(w[k]).to_string() << ']';
  }
  return out.str();
}

namespace {

// Counts of generators per weight class that balance to the target weight.
struct Profile {
  int linear = 0;
  std::vector<int> positive;  // positive[j-1] = number of weight-j generators
  int positive_total() const { return std::accumulate(positive.begin(), positive.end(), 0); }
};

void positive_profiles(const AlgebraSpec& spec, int budget, int max_part, std::vector<int>& counts,
                       std::vector<std::vector<int>>& out) {
  if (budget == 0) {
    out.push_back(counts);
    return;
  }
  for (int part = std::min(budget, max_part); part >= 1; --part) {
    const int cap = static_cast<int>(std::min<std::size_t>(count_monomials(spec, part), budget / part));
    for (int c = cap; c >= 1; --c) {
      counts[part - 1] = c;
      positive_profiles(spec, budget - c * part, part - 1, counts, out);
      counts[part - 1] = 0;
    }
  }
}

std::vector<Profile> weight_profiles(const AlgebraSpec& spec, int weight) {
  std::vector<Profile> out;
  for (int l = 0; l <= spec.num_variables(); ++l) {
    const int budget = weight + l;
    if (budget < 0) continue;
    std::vector<int> counts(static_cast<std::size_t>(budget), 0);
    std::vector<std::vector<int>> pos;
    positive_profiles(spec, budget, budget, counts, pos);
    for (auto& p : pos) out.push_back(Profile{l, std::move(p)});
  }
  return out;
}

struct ClassPick {
  GenId first;
  GenId last;
  int count;
};

}  // namespace

int max_sector_degree(const AlgebraSpec& spec, int weight) {
  int best = -1;
  for (const auto& p : weight_profiles(spec, weight))
    best = std::max(best, p.linear + p.positive_total() + spec.sp_dimension());
  return best;
}

SectorBasis enumerate_sector(const AlgebraSpec& spec, int degree, int weight, SectorOptions options) {
  if (degree < 0) throw std::invalid_argument("enumerate_sector: degree must be >= 0");
  auto algebra = HamiltonianAlgebra::shared(spec);
  const int sp_dim = spec.sp_dimension();
  const std::size_t n = static_cast<std::size_t>(spec.n());
  std::vector<GenId> flat;
  std::size_t count = 0;

  std::vector<GenId> buf;
  std::vector<int> torus(n, 0);
  std::vector<ClassPick> picks;

  auto emit = [&] {
    if (options.torus_zero && std::any_of(torus.begin(), torus.end(), [](int t) { return t != 0; }))
      return;
    flat.insert(flat.end(), buf.begin(), buf.end());
    ++count;
  };
  auto push = [&](GenId id) {
    buf.push_back(id);
    auto t = algebra->torus_weight(id);
    for (std::size_t i = 0; i < n; ++i) torus[i] += t[i];
  };
  auto pop = [&] {
    auto t = algebra->torus_weight(buf.back());
    for (std::size_t i = 0; i < n; ++i) torus[i] -= t[i];
    buf.pop_back();
  };
  std::function<void(std::size_t, GenId, int)> choose = [&](std::size_t ci, GenId next, int left) {
    if (ci == picks.size()) {
      emit();
      return;
    }
    if (left == 0) {
      if (ci + 1 == picks.size())
        emit();
      else
        choose(ci + 1, picks[ci + 1].first, picks[ci + 1].count);
      return;
    }
    const ClassPick& pick = picks[ci];
    for (GenId id = next; id + static_cast<GenId>(left) <= pick.last; ++id) {
      push(id);
      choose(ci, id + 1, left - 1);
      pop();
    }
  };

  if (options.scope == SectorScope::subalgebra) {
    if (weight == 0 && degree <= sp_dim) {
      auto [f, l] = algebra->weight_range(0);
      picks = {{f, l, degree}};
      choose(0, f, degree);
    }
  } else {
    for (const Profile& p : weight_profiles(spec, weight)) {
      const int s = degree - p.linear - p.positive_total();
      if (s < 0 || s > sp_dim) continue;
      if (options.scope == SectorScope::horizontal && s != 0) continue;
      picks.clear();
      auto add_class = [&](int w, int c) {
        if (c == 0) return;
        auto [f, l] = algebra->weight_range(w);
        picks.push_back({f, l, c});
      };
      add_class(-1, p.linear);
      add_class(0, s);
      for (std::size_t j = 0; j < p.positive.size(); ++j) add_class(static_cast<int>(j) + 1, p.positive[j]);
      if (picks.empty()) {
        emit();  // the empty wedge
        continue;
      }
      choose(0, picks[0].first, picks[0].count);
    }
  }

  // Lexicographic order of id sequences.
  const auto d = static_cast<std::size_t>(degree);
  if (d > 0 && count > 1) {
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(flat.begin() + a * d, flat.begin() + (a + 1) * d,
                                          flat.begin() + b * d, flat.begin() + (b + 1) * d);
    });
    std::vector<GenId> sorted;
    sorted.reserve(flat.size());
    for (auto i : order) sorted.insert(sorted.end(), flat.begin() + i * d, flat.begin() + (i + 1) * d);
    flat = std::move(sorted);
  }
  if (d == 0 && count > 0) {
    // The empty wedge is represented by a single sentinel slot.
    return SectorBasis(std::move(algebra), 0, weight, options, std::vector<GenId>{0});
  }
  return SectorBasis(std::move(algebra), degree, weight, options, std::move(flat));
}

namespace {

void check_compatible(const SectorBasis& source, const SectorBasis& target, int degree_shift,
                      const char* what) {
  if (!(source.spec() == target.spec()))
    throw std::invalid_argument(std::string(what) + ": bases belong to different algebras");
  if (source.weight() != target.weight())
    throw std::invalid_argument(std::string(what) + ": bases have different weights");
  if (target.degree() != source.degree() + degree_shift)
    throw std::invalid_argument(std::string(what) + ": target degree mismatch");
  if (source.options().torus_zero != target.options().torus_zero)
    throw std::invalid_argument(std::string(what) + ": torus filters differ");
}

template <class Value>
std::vector<Triplet<Value>> flatten(std::vector<std::vector<Triplet<Value>>>& chunks) {
  std::size_t total = 0;
  for (const auto& c : chunks) total += c.size();
  std::vector<Triplet<Value>> out;
  out.reserve(total);
  for (auto& c : chunks) {
    std::move(c.begin(), c.end(), std::back_inserter(out));
    c.clear();
    c.shrink_to_fit();
  }
  return out;
}

// Sorted insertion of one id into `rest`; returns number of rest ids below it.
std::size_t rank_in(std::span<const GenId> rest, GenId id) {
  return static_cast<std::size_t>(std::lower_bound(rest.begin(), rest.end(), id) - rest.begin());
}

bool contains(std::span<const GenId> rest, GenId id) {
  return std::binary_search(rest.begin(), rest.end(), id);
}

std::uint64_t to_residue(std::int64_t c, std::uint64_t p) {
  const auto sp = static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(((c % sp) + sp) % sp);
}

// Assembles columns in parallel chunks; `column` fills (row, coefficient)
// pairs for one source index.
template <class ColumnFn>
SparseExactMatrix assemble_columns(std::size_t rows, std::size_t cols, const Field& field, int threads,
                                   ColumnFn&& column) {
  const std::size_t chunk = 256;
  const std::size_t nchunks = (cols + chunk - 1) / chunk;
  if (field.is_rational()) {
    std::vector<std::vector<RationalTriplet>> parts(nchunks);
    detail::parallel_for(nchunks, threads, [&](std::size_t k) {
      std::vector<std::pair<std::size_t, std::int64_t>> entries;
      for (std::size_t j = k * chunk; j < std::min(cols, (k + 1) * chunk); ++j) {
        entries.clear();
        column(j, entries);
        for (auto& [r, c] : entries) parts[k].push_back({r, j, Rational(static_cast<long>(c))});
      }
    });
    return SparseExactMatrix::from_triplets(rows, cols, flatten(parts));
  }
  const std::uint64_t p = field.modulus();
  std::vector<std::vector<ResidueTriplet>> parts(nchunks);
  detail::parallel_for(nchunks, threads, [&](std::size_t k) {
    std::vector<std::pair<std::size_t, std::int64_t>> entries;
    for (std::size_t j = k * chunk; j < std::min(cols, (k + 1) * chunk); ++j) {
      entries.clear();
      column(j, entries);
      for (auto& [r, c] : entries) {
        const auto v = to_residue(c, p);
        if (v) parts[k].push_back({r, j, v});
      }
    }
  });
  return SparseExactMatrix::from_triplets(rows, cols, p, flatten(parts));
}

// Sorts (row, coefficient) pairs and merges duplicates, dropping zeros.
void merge_entries(std::vector<std::pair<std::size_t, std::int64_t>>& e) {
  std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < e.size();) {
    auto acc = e[i];
    std::size_t j = i + 1;
    for (; j < e.size() && e[j].first == acc.first; ++j) acc.second += e[j].second;
    if (acc.second != 0) e[out++] = acc;
    i = j;
  }
  e.resize(out);
}

}  // namespace

namespace {

struct DifferentialKernel {
  const SectorBasis& source;
  const SectorBasis& target;
  bool project = false;
  std::vector<std::span<const CobracketTerm>> cob;

  DifferentialKernel(const SectorBasis& src, const SectorBasis& tgt) : source(src), target(tgt) {
    check_compatible(source, target, 1, "assemble_differential");
    const SectorScope ss = source.options().scope, ts = target.options().scope;
    project = ts == SectorScope::subalgebra;
    if (project ? ss != SectorScope::subalgebra : ts != SectorScope::full)
      throw std::invalid_argument("assemble_differential: unsupported scope combination");
    // Cache co-bracket spans for every generator that occurs.
    if (source.empty() || source.degree() == 0) return;
    GenId max_id = 0;
    for (std::size_t i = 0; i < source.size(); ++i)
      for (GenId g : source.wedge(i)) max_id = std::max(max_id, g);
    cob.resize(static_cast<std::size_t>(max_id) + 1);
    for (std::size_t i = 0; i < source.size(); ++i)
      for (GenId g : source.wedge(i))
        if (cob[g].data() == nullptr) cob[g] = source.algebra().cobracket(g);
  }

  // Appends the unmerged entries of d(wedge j), scaled by `sign`.
  void column(std::size_t j, std::int64_t sign, std::vector<std::pair<std::size_t, std::int64_t>>& entries) const {
    const std::size_t d = static_cast<std::size_t>(source.degree());
    auto w = source.wedge(j);
    std::vector<GenId> rest(d == 0 ? 0 : d - 1), out(d + 1);
    for (std::size_t pos = 0; pos < d; ++pos) {
      std::copy(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos), rest.begin());
      std::copy(w.begin() + static_cast<std::ptrdiff_t>(pos) + 1, w.end(),
                rest.begin() + static_cast<std::ptrdiff_t>(pos));
      for (const CobracketTerm& t : cob[w[pos]]) {
        if (contains(rest, t.a) || contains(rest, t.b)) continue;
        const std::size_t ra = rank_in(rest, t.a), rb = rank_in(rest, t.b);
        // rest[0..ra) a rest[ra..rb) b rest[rb..)
        std::copy(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(ra), out.begin());
        out[ra] = t.a;
        std::copy(rest.begin() + static_cast<std::ptrdiff_t>(ra), rest.begin() + static_cast<std::ptrdiff_t>(rb),
                  out.begin() + static_cast<std::ptrdiff_t>(ra) + 1);
        out[rb + 1] = t.b;
        std::copy(rest.begin() + static_cast<std::ptrdiff_t>(rb), rest.end(),
                  out.begin() + static_cast<std::ptrdiff_t>(rb) + 2);
        const auto row = target.position(out);
        if (!row) {
          if (project) continue;
          throw std::logic_error("assemble_differential: image wedge missing from target sector");
        }
        const bool odd = ((ra + rb + pos) & 1u) != 0;
        entries.emplace_back(*row, odd ? sign * t.coefficient : -sign * t.coefficient);
      }
    }
  }
};

}  // namespace

SparseExactMatrix assemble_differential(const SectorBasis& source, const SectorBasis& target, Field field,
                                        int threads) {
  const DifferentialKernel kernel(source, target);
  return assemble_columns(target.size(), source.size(), field, threads,
                          [&](std::size_t j, std::vector<std::pair<std::size_t, std::int64_t>>& entries) {
    kernel.column(j, 1, entries);
    merge_entries(entries);
  });
}

namespace {

// Signed images of monomial ids under one generator of the pair symmetry
// group: entry m is (id of g(m), sign).
using MonomialAction = std::vector<std::pair<GenId, int>>;

std::vector<MonomialAction> pair_symmetry_generators(const HamiltonianAlgebra& algebra, GenId max_id) {
  const int n = algebra.spec().n();
  std::vector<std::vector<int>> perms;
  if (n >= 2) {
    std::vector<int> swap(static_cast<std::size_t>(n));
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    perms.push_back(swap);
  }
  if (n >= 3) {
    std::vector<int> cycle(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % n;
    perms.push_back(cycle);
  }
  std::vector<MonomialAction> out(1 + perms.size(), MonomialAction(static_cast<std::size_t>(max_id) + 1));
  for (GenId m = 0; m <= max_id; ++m) {
    const Monomial& mono = algebra.monomial(m);
    // p_1 -> q_1, q_1 -> -p_1
    std::vector<unsigned> e(mono.exponents());
    std::swap(e[0], e[static_cast<std::size_t>(n)]);
    out[0][m] = {algebra.id_of(Monomial(std::move(e))), (mono.q_exponent(0) & 1u) ? -1 : 1};
    for (std::size_t k = 0; k < perms.size(); ++k) {
      std::vector<unsigned> f(mono.exponents().size());
      for (int i = 0; i < n; ++i) {
        const auto to = static_cast<std::size_t>(perms[k][static_cast<std::size_t>(i)]);
        f[to] = mono.p_exponent(i);
        f[to + static_cast<std::size_t>(n)] = mono.q_exponent(i);
      }
      out[k + 1][m] = {algebra.id_of(Monomial(std::move(f))), 1};
    }
  }
  return out;
}

}  // namespace

InvariantBasis invariant_basis(const SectorBasis& basis) {
  if (!basis.options().torus_zero)
    throw std::invalid_argument("invariant_basis: sector must be torus-zero");
  InvariantBasis inv;
  inv.offsets.push_back(0);
  if (basis.empty()) return inv;
  if (basis.degree() == 0) {
    inv.members.push_back(0);
    inv.signs.push_back(1);
    inv.offsets.push_back(1);
    return inv;
  }
  GenId max_id = 0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (GenId g : basis.wedge(i)) max_id = std::max(max_id, g);
  const auto gens = pair_symmetry_generators(basis.algebra(), max_id);

  std::vector<signed char> sign_of(basis.size(), 0);
  std::vector<std::size_t> orbit;
  std::vector<GenId> image(static_cast<std::size_t>(basis.degree()));
  for (std::size_t start = 0; start < basis.size(); ++start) {
    if (sign_of[start] != 0) continue;
    orbit.assign(1, start);
    sign_of[start] = 1;
    bool vanishes = false;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      const std::size_t i = orbit[k];
      auto w = basis.wedge(i);
      for (const auto& g : gens) {
        int sign = sign_of[i];
        for (std::size_t t = 0; t < w.size(); ++t) {
          image[t] = g[w[t]].first;
          sign *= g[w[t]].second;
        }
        // sort, tracking the permutation parity
        for (std::size_t a = 1; a < image.size(); ++a)
          for (std::size_t b = a; b > 0 && image[b - 1] > image[b]; --b) {
            std::swap(image[b - 1], image[b]);
            sign = -sign;
          }
        const auto j = basis.position(image);
        if (!j) throw std::logic_error("invariant_basis: sector not closed under the pair symmetry");
        if (sign_of[*j] == 0) {
          sign_of[*j] = static_cast<signed char>(sign);
          orbit.push_back(*j);
        } else if (sign_of[*j] != sign) {
          vanishes = true;
        }
      }
    }
    if (vanishes) continue;
    for (auto i : orbit) {
      inv.members.push_back(i);
      inv.signs.push_back(sign_of[i]);
    }
    inv.offsets.push_back(inv.members.size());
  }
  return inv;
}

SparseExactMatrix assemble_invariant_differential(const SectorBasis& source, const InvariantBasis& source_inv,
                                                  const SectorBasis& target, const InvariantBasis& target_inv,
                                                  Field field, int threads) {
  const DifferentialKernel kernel(source, target);
  std::vector<std::int64_t> orbit_of_rep(target.size(), -1);
  for (std::size_t k = 0; k < target_inv.size(); ++k)
    orbit_of_rep[target_inv.members[target_inv.offsets[k]]] = static_cast<std::int64_t>(k);
  return assemble_columns(target_inv.size(), source_inv.size(), field, threads,
                          [&](std::size_t k, std::vector<std::pair<std::size_t, std::int64_t>>& entries) {
    std::vector<std::pair<std::size_t, std::int64_t>> full;
    for (std::size_t t = source_inv.offsets[k]; t < source_inv.offsets[k + 1]; ++t)
      kernel.column(source_inv.members[t], source_inv.signs[t], full);
    for (const auto& [row, c] : full)
      if (orbit_of_rep[row] >= 0) entries.emplace_back(static_cast<std::size_t>(orbit_of_rep[row]), c);
    merge_entries(entries);
  });
}

namespace {

// table[m] lists (m', -<xi_m, {h, e_m'}>) for all m' up to max_id.
std::vector<std::vector<std::pair<GenId, std::int64_t>>> coadjoint_table(const HamiltonianAlgebra& algebra,
                                                                          const Monomial& h, GenId max_id) {
  std::vector<std::vector<std::pair<GenId, std::int64_t>>> table(static_cast<std::size_t>(max_id) + 1);
  const int n = algebra.spec().n();
  for (int w = -1; w <= algebra.weight(max_id); ++w) {
    auto [f, l] = algebra.weight_range(w);
    for (GenId mp = f; mp < l; ++mp) {
      const Monomial& b = algebra.monomial(mp);
      for (int k = 0; k < n; ++k) {
        const std::int64_t c = static_cast<std::int64_t>(h.p_exponent(k)) * b.q_exponent(k) -
                               static_cast<std::int64_t>(h.q_exponent(k)) * b.p_exponent(k);
        if (c == 0) continue;
        std::vector<unsigned> e(b.exponents());
        for (std::size_t v = 0; v < e.size(); ++v) e[v] += h.exponents()[v];
        --e[k];
        --e[n + k];
        const GenId m = algebra.id_of(Monomial(std::move(e)));
        if (m <= max_id) table[m].emplace_back(mp, -c);
      }
    }
  }
  return table;
}

}  // namespace

SparseExactMatrix assemble_sp_action(const SectorBasis& source, const SectorBasis& target, const Monomial& h) {
  if (h.total_degree() != 2) throw std::invalid_argument("assemble_sp_action: h must be quadratic");
  if (h.exponents().size() != static_cast<std::size_t>(source.spec().num_variables()))
    throw std::invalid_argument("assemble_sp_action: h does not match the algebra spec");
  if (!(source.spec() == target.spec()) || source.weight() != target.weight() ||
      source.degree() != target.degree() || source.options().scope != target.options().scope ||
      (target.options().torus_zero && !source.options().torus_zero))
    throw std::invalid_argument("assemble_sp_action: incompatible bases");

  const HamiltonianAlgebra& algebra = source.algebra();
  const std::size_t d = static_cast<std::size_t>(source.degree());
  GenId max_id = 0;
  for (std::size_t i = 0; i < source.size(); ++i)
    for (GenId g : source.wedge(i)) max_id = std::max(max_id, g);
  const auto table = d == 0 || source.empty() ? decltype(coadjoint_table(algebra, h, 0)){}
                                               : coadjoint_table(algebra, h, max_id);

  return assemble_columns(target.size(), source.size(), Field::rationals(), 1,
                          [&](std::size_t j, std::vector<std::pair<std::size_t, std::int64_t>>& entries) {
    auto w = source.wedge(j);
    std::vector<GenId> rest(d == 0 ? 0 : d - 1), out(d);
    for (std::size_t pos = 0; pos < d; ++pos) {
      std::copy(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos), rest.begin());
      std::copy(w.begin() + static_cast<std::ptrdiff_t>(pos) + 1, w.end(),
                rest.begin() + static_cast<std::ptrdiff_t>(pos));
      for (const auto& [mp, c] : table[w[pos]]) {
        if (contains(rest, mp)) continue;
        const std::size_t r = rank_in(rest, mp);
        std::copy(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(r), out.begin());
        out[r] = mp;
        std::copy(rest.begin() + static_cast<std::ptrdiff_t>(r), rest.end(),
                  out.begin() + static_cast<std::ptrdiff_t>(r) + 1);
        const auto row = target.position(out);
        if (!row) throw std::invalid_argument("assemble_sp_action: image leaves the target basis");
        const bool odd = ((r + pos) & 1u) != 0;
        entries.emplace_back(*row, odd ? -c : c);
      }
    }
    merge_entries(entries);
  });
}

SparseExactMatrix assemble_sp_action(const SectorBasis& basis, const Monomial& h) {
  return assemble_sp_action(basis, basis, h);
}

std::vector<Rational> embed_vector(const SectorBasis& from, const SectorBasis& into,
                                   const std::vector<Rational>& coords) {
  if (coords.size() != from.size()) throw std::invalid_argument("embed_vector: size mismatch");
  std::vector<Rational> out(into.size(), Rational(0));
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (coords[i] == 0) continue;
    const auto pos = into.position(from.wedge(i));
    if (!pos) throw std::invalid_argument("embed_vector: wedge missing from target basis");
    out[*pos] = coords[i];
  }
  return out;
}

RelativeSector relative_sector(const AlgebraSpec& spec, int degree, int weight, std::size_t exact_threshold) {
  SectorBasis horizontal = enumerate_sector(spec, degree, weight, {SectorScope::horizontal, true});
  if (horizontal.empty()) return RelativeSector{std::move(horizontal), {}};
  if (degree == 0) return RelativeSector{std::move(horizontal), {{Rational(1)}}};

  // Non-Cartan elements move torus weight, so their images live in the
  // unfiltered horizontal sector.
  const SectorBasis all_horizontal = enumerate_sector(spec, degree, weight, {SectorScope::horizontal, false});
  std::vector<RationalTriplet> stacked;
  std::size_t row_offset = 0;
  for (const Monomial& h : sp_basis(spec)) {
    const auto t = h.torus_weight();
    if (std::all_of(t.begin(), t.end(), [](int x) { return x == 0; })) continue;  // Cartan: acts by zero
    const SparseExactMatrix action = assemble_sp_action(horizontal, all_horizontal, h);
    for (const auto& e : action.rational_entries()) stacked.push_back({e.row + row_offset, e.col, e.value});
    row_offset += action.rows();
  }
  const auto joint = SparseExactMatrix::from_triplets(row_offset, horizontal.size(), std::move(stacked));
  auto kernel = kernel_basis_exact(joint, exact_threshold);
  return RelativeSector{std::move(horizontal), std::move(kernel)};
}

}  // namespace hamcoh
