#include "hamcoh/cohomology.hpp"

#include <algorithm>
#include <sstream>

#include "parallel.hpp"

namespace hamcoh {

std::string to_string(ComplexKind kind) {
  switch (kind) {
    case ComplexKind::absolute: return "absolute";
    case ComplexKind::relative: return "relative";
    case ComplexKind::sp: return "sp";
    case ComplexKind::model: return "model";
  }
  return "unknown";
}

const BettiRow* BettiTable::row(int degree) const {
  for (const auto& r : rows)
    if (r.degree == degree) return &r;
  return nullptr;
}

long long BettiTable::betti(int degree) const {
  const BettiRow* r = row(degree);
  if (!r) throw std::out_of_range("BettiTable: degree " + std::to_string(degree) + " not computed");
  return r->betti;
}

std::map<int, long long> BettiTable::nonzero_betti() const {
  std::map<int, long long> out;
  for (const auto& r : rows)
    if (r.betti != 0) out[r.degree] = r.betti;
  return out;
}

bool BettiTable::all_certified() const {
  return std::all_of(rows.begin(), rows.end(), [](const BettiRow& r) { return r.certified; });
}

long long BettiTable::euler_cochains() const {
  long long chi = 0;
  for (const auto& r : rows) chi += (r.degree % 2 ? -1 : 1) * static_cast<long long>(r.dim);
  return chi;
}

long long BettiTable::euler_betti() const {
  long long chi = 0;
  for (const auto& r : rows) chi += (r.degree % 2 ? -1 : 1) * r.betti;
  return chi;
}

std::vector<std::string> BettiTable::invariant_violations() const {
  std::vector<std::string> out;
  for (const auto& r : rows) {
    const long long expected = static_cast<long long>(r.dim) - static_cast<long long>(r.rank_out) -
                               static_cast<long long>(r.rank_in);
    if (r.betti != expected) out.push_back("degree " + std::to_string(r.degree) + ": betti != dim - ranks");
    if (r.betti < 0) out.push_back("degree " + std::to_string(r.degree) + ": negative betti");
    if (const BettiRow* prev = row(r.degree - 1); prev && prev->rank_out != r.rank_in)
      out.push_back("degree " + std::to_string(r.degree) + ": rank_in differs from previous rank_out");
  }
  if (complete && euler_cochains() != euler_betti()) out.push_back("Euler characteristic mismatch");
  return out;
}

namespace {

using RankFn = std::function<std::size_t(std::uint64_t)>;

RankCertificate certify(const RankFn& rank_mod, std::optional<std::size_t> exact, const EngineOptions& opts,
                        bool& certified) {
  if (opts.primes.size() < 2) throw std::invalid_argument("at least two primes are required");
  RankCertificate cert;
  cert.primes_used = opts.primes;
  cert.per_prime_ranks.resize(opts.primes.size());
  detail::parallel_for(opts.primes.size(), opts.threads,
                       [&](std::size_t i) { cert.per_prime_ranks[i] = rank_mod(opts.primes[i]); });
  auto summarize = [&] {
    cert.rank = *std::max_element(cert.per_prime_ranks.begin(), cert.per_prime_ranks.end());
    cert.agreement = std::all_of(cert.per_prime_ranks.begin(), cert.per_prime_ranks.end(),
                                 [&](std::size_t r) { return r == cert.rank; });
  };
  summarize();
  const std::uint64_t extra = fallback_prime();
  if (!cert.agreement && opts.auto_extra_prime &&
      std::find(cert.primes_used.begin(), cert.primes_used.end(), extra) == cert.primes_used.end()) {
    cert.primes_used.push_back(extra);
    cert.per_prime_ranks.push_back(rank_mod(extra));
    summarize();
  }
  const auto at_max = std::count(cert.per_prime_ranks.begin(), cert.per_prime_ranks.end(), cert.rank);
  cert.exact_rank = exact;
  cert.exact_confirmed = exact && cert.agreement && *exact == cert.rank;
  certified = (cert.agreement || at_max >= 2) && (!exact || *exact == cert.rank);
  if (exact) cert.rank = *exact;
  return cert;
}

RankCertificate zero_certificate(const EngineOptions& opts, bool exact_known) {
  RankCertificate cert;
  cert.primes_used = opts.primes;
  cert.per_prime_ranks.assign(opts.primes.size(), 0);
  cert.agreement = true;
  if (exact_known) {
    cert.exact_rank = 0;
    cert.exact_confirmed = true;
  }
  return cert;
}

std::string scope_name(SectorScope s) {
  switch (s) {
    case SectorScope::full: return "full";
    case SectorScope::horizontal: return "horizontal";
    case SectorScope::subalgebra: return "subalgebra";
  }
  return "full";
}

SparseExactMatrix rational_differential(const SectorBasis& source, const SectorBasis& target,
                                        const EngineOptions& opts, int threads) {
  CacheKey key{source.spec().n(), source.degree(), source.weight(), scope_name(source.options().scope),
               source.options().torus_zero, "differential"};
  if (opts.cache)
    if (auto hit = opts.cache->load(key); hit && hit->rows() == target.size() && hit->cols() == source.size())
      return std::move(*hit);
  auto m = assemble_differential(source, target, Field::rationals(), threads);
  if (opts.cache) opts.cache->store(key, m);
  return m;
}

// Rank of the differential between two sectors. Above the exact threshold the
// matrix is assembled directly over each prime and no rational copy is made.
RankCertificate differential_rank(const SectorBasis& source, const SectorBasis& target, const EngineOptions& opts,
                                  bool& certified) {
  const bool small = std::max(source.size(), target.size()) <= opts.exact_threshold;
  if (source.empty() || target.empty()) {
    certified = true;
    return zero_certificate(opts, small);
  }
  if (!small) {
    return certify([&](std::uint64_t p) { return rank_mod_p(assemble_differential(source, target, Field::prime(p), 1), p); },
                   std::nullopt, opts, certified);
  }
  const SparseExactMatrix m = rational_differential(source, target, opts, 1);
  return certify([&](std::uint64_t p) { return rank_mod_p(m, p); }, exact_rank(m), opts, certified);
}

// Same for the symmetry-invariant subcomplex.
RankCertificate invariant_differential_rank(const SectorBasis& source, const InvariantBasis& source_inv,
                                            const SectorBasis& target, const InvariantBasis& target_inv,
                                            const EngineOptions& opts, bool& certified) {
  const bool small = std::max(source_inv.size(), target_inv.size()) <= opts.exact_threshold;
  if (source_inv.size() == 0 || target_inv.size() == 0) {
    certified = true;
    return zero_certificate(opts, small);
  }
  if (!small) {
    return certify([&](std::uint64_t p) {
      return rank_mod_p(assemble_invariant_differential(source, source_inv, target, target_inv, Field::prime(p), 1), p);
    }, std::nullopt, opts, certified);
  }
  const SparseExactMatrix m = assemble_invariant_differential(source, source_inv, target, target_inv);
  return certify([&](std::uint64_t p) { return rank_mod_p(m, p); }, exact_rank(m), opts, certified);
}

void fill_rows(BettiTable& table, int lo, int hi, const std::map<int, std::size_t>& dims,
               const std::map<int, std::pair<RankCertificate, bool>>& ranks) {
  for (int d = lo; d <= hi; ++d) {
    BettiRow r;
    r.degree = d;
    r.dim = dims.at(d);
    const auto& [out_cert, out_ok] = ranks.at(d);
    r.rank_out = out_cert.rank;
    r.out_certificate = out_cert;
    r.certified = out_ok;
    if (auto it = ranks.find(d - 1); it != ranks.end()) {
      r.rank_in = it->second.first.rank;
      r.certified = r.certified && it->second.second;
    }
    if (table.reduced && d == 0 && table.weight == 0 && table.kind != ComplexKind::sp) r.dim = 0;
    r.betti = static_cast<long long>(r.dim) - static_cast<long long>(r.rank_out) - static_cast<long long>(r.rank_in);
    table.rows.push_back(std::move(r));
  }
}

void check_range(int lo, int hi) {
  if (lo < 0 || hi < lo) throw std::invalid_argument("degree range must satisfy 0 <= min <= max");
}

}  // namespace

RankCertificate certify_rank(const SparseExactMatrix& m, const EngineOptions& opts, bool& certified) {
  std::optional<std::size_t> exact;
  if (std::max(m.rows(), m.cols()) <= opts.exact_threshold) exact = exact_rank(m);
  return certify([&](std::uint64_t p) { return rank_mod_p(m, p); }, exact, opts, certified);
}

SparseExactMatrix absolute_differential(const AlgebraSpec& spec, int degree, int weight, const EngineOptions& opts) {
  const SectorOptions so{SectorScope::full, opts.torus_reduce};
  return rational_differential(enumerate_sector(spec, degree, weight, so),
                               enumerate_sector(spec, degree + 1, weight, so), opts, opts.threads);
}

BettiTable betti_table(const AlgebraSpec& spec, int weight, int degree_min, int degree_max, bool reduced,
                       const EngineOptions& opts) {
  check_range(degree_min, degree_max);
  const SectorOptions so{SectorScope::full, opts.torus_reduce || opts.symmetry_reduce};
  const int first = std::max(degree_min - 1, 0);
  const int count = degree_max + 2 - first;  // sectors first .. degree_max + 1
  std::vector<std::optional<SectorBasis>> sectors(static_cast<std::size_t>(count));
  detail::parallel_for(sectors.size(), opts.threads, [&](std::size_t i) {
    sectors[i].emplace(enumerate_sector(spec, first + static_cast<int>(i), weight, so));
  });
  std::vector<InvariantBasis> invariants(opts.symmetry_reduce ? sectors.size() : 0);
  detail::parallel_for(invariants.size(), opts.threads,
                       [&](std::size_t i) { invariants[i] = invariant_basis(*sectors[i]); });
  std::vector<std::pair<RankCertificate, bool>> rank_list(static_cast<std::size_t>(count - 1));
  EngineOptions inner = opts;
  inner.threads = 1;
  detail::parallel_for(rank_list.size(), opts.threads, [&](std::size_t i) {
    bool ok = true;
    rank_list[i].first = opts.symmetry_reduce
                             ? invariant_differential_rank(*sectors[i], invariants[i], *sectors[i + 1],
                                                           invariants[i + 1], inner, ok)
                             : differential_rank(*sectors[i], *sectors[i + 1], inner, ok);
    rank_list[i].second = ok;
  });

  BettiTable table;
  table.spec = spec;
  table.weight = weight;
  table.reduced = reduced;
  table.kind = ComplexKind::absolute;
  table.torus_reduced = opts.torus_reduce || opts.symmetry_reduce;
  table.symmetry_reduced = opts.symmetry_reduce;
  table.complete = degree_min == 0 && degree_max >= max_sector_degree(spec, weight);
  std::map<int, std::size_t> dims;
  std::map<int, std::pair<RankCertificate, bool>> ranks;
  for (int i = 0; i < count; ++i)
    dims[first + i] = opts.symmetry_reduce ? invariants[static_cast<std::size_t>(i)].size()
                                           : sectors[static_cast<std::size_t>(i)]->size();
  for (int i = 0; i + 1 < count; ++i) ranks[first + i] = rank_list[static_cast<std::size_t>(i)];
  fill_rows(table, degree_min, degree_max, dims, ranks);
  return table;
}

BettiTable betti_table_relative(const AlgebraSpec& spec, int weight, int degree_min, int degree_max, bool reduced,
                                const EngineOptions& opts) {
  check_range(degree_min, degree_max);
  const int first = std::max(degree_min - 1, 0);
  const int count = degree_max + 2 - first;
  std::vector<std::optional<RelativeSector>> rel(static_cast<std::size_t>(count));
  detail::parallel_for(rel.size(), opts.threads, [&](std::size_t i) {
    rel[i].emplace(relative_sector(spec, first + static_cast<int>(i), weight, opts.exact_threshold));
  });

  std::vector<std::pair<RankCertificate, bool>> rank_list(static_cast<std::size_t>(count - 1));
  EngineOptions inner = opts;
  inner.threads = 1;
  detail::parallel_for(rank_list.size(), opts.threads, [&](std::size_t i) {
    const RelativeSector& src = *rel[i];
    const int d = first + static_cast<int>(i);
    bool ok = true;
    if (src.dimension() == 0) {
      rank_list[i] = {zero_certificate(inner, true), true};
      return;
    }
    const SectorBasis target = enumerate_sector(spec, d + 1, weight, {SectorScope::full, true});
    const SparseExactMatrix dmat = assemble_differential(src.horizontal, target);
    std::vector<std::vector<Rational>> columns;
    for (const auto& k : src.kernel) columns.push_back(primitive_integer_vector(dmat.multiply(k)));
    const SparseExactMatrix restricted = matrix_from_columns(target.size(), columns);
    rank_list[i].first = certify_rank(restricted, inner, ok);
    rank_list[i].second = ok;
  });

  BettiTable table;
  table.spec = spec;
  table.weight = weight;
  table.reduced = reduced;
  table.kind = ComplexKind::relative;
  table.torus_reduced = true;
  table.complete = degree_min == 0 && degree_max >= max_sector_degree(spec, weight);
  std::map<int, std::size_t> dims;
  std::map<int, std::pair<RankCertificate, bool>> ranks;
  for (int i = 0; i < count; ++i) dims[first + i] = rel[static_cast<std::size_t>(i)]->dimension();
  for (int i = 0; i + 1 < count; ++i) ranks[first + i] = rank_list[static_cast<std::size_t>(i)];
  fill_rows(table, degree_min, degree_max, dims, ranks);
  return table;
}

BettiTable sp_cohomology(const AlgebraSpec& spec, const EngineOptions& opts) {
  const int top = spec.sp_dimension();
  const SectorOptions so{SectorScope::subalgebra, false};
  std::vector<std::optional<SectorBasis>> sectors(static_cast<std::size_t>(top + 2));
  for (int d = 0; d <= top + 1; ++d) sectors[static_cast<std::size_t>(d)].emplace(enumerate_sector(spec, d, 0, so));
  std::vector<std::pair<RankCertificate, bool>> rank_list(static_cast<std::size_t>(top + 1));
  EngineOptions inner = opts;
  inner.threads = 1;
  detail::parallel_for(rank_list.size(), opts.threads, [&](std::size_t i) {
    bool ok = true;
    rank_list[i].first = differential_rank(*sectors[i], *sectors[i + 1], inner, ok);
    rank_list[i].second = ok;
  });
  BettiTable table;
  table.spec = spec;
  table.weight = 0;
  table.reduced = false;
  table.kind = ComplexKind::sp;
  table.complete = true;
  std::map<int, std::size_t> dims;
  std::map<int, std::pair<RankCertificate, bool>> ranks;
  for (int d = 0; d <= top + 1; ++d) dims[d] = sectors[static_cast<std::size_t>(d)]->size();
  for (int d = 0; d <= top; ++d) ranks[d] = rank_list[static_cast<std::size_t>(d)];
  fill_rows(table, 0, top, dims, ranks);
  return table;
}

CocycleRepresentative extract_representative(const AlgebraSpec& spec, int degree, int weight, bool relative,
                                             const EngineOptions& opts) {
  if (degree < 0) throw std::invalid_argument("extract_representative: degree must be >= 0");
  auto empty = [&] {
    return EmptyCohomology("empty cohomology: H^" + std::to_string(degree) + "_(" + std::to_string(weight) +
                           ") " + (relative ? "relative " : "") + "vanishes for n=" + std::to_string(spec.n()));
  };
  auto within = [&](std::size_t a, std::size_t b) {
    if (std::max(a, b) > opts.exact_threshold)
      throw ThresholdExceeded("extract_representative: sector exceeds exact threshold " +
                              std::to_string(opts.exact_threshold));
  };

  if (!relative) {
    const SectorOptions so{SectorScope::full, opts.torus_reduce};
    SectorBasis here = enumerate_sector(spec, degree, weight, so);
    const SectorBasis next = enumerate_sector(spec, degree + 1, weight, so);
    within(here.size(), next.size());
    if (here.empty()) throw empty();
    const SparseExactMatrix d_out = assemble_differential(here, next);
    SparseExactMatrix d_in(here.size(), 0);
    if (degree > 0) {
      const SectorBasis prev = enumerate_sector(spec, degree - 1, weight, so);
      within(prev.size(), here.size());
      d_in = assemble_differential(prev, here);
    }
    const std::size_t image = exact_rank(d_in);
    for (auto& v : kernel_basis_exact(d_out, opts.exact_threshold)) {
      if (exact_rank(d_in.with_column(v)) == image + 1)
        return CocycleRepresentative{spec, degree, weight, false, std::move(here), std::move(v), image};
    }
    throw empty();
  }

  const RelativeSector here = relative_sector(spec, degree, weight, opts.exact_threshold);
  if (here.dimension() == 0) throw empty();
  SectorBasis full_here = enumerate_sector(spec, degree, weight, {SectorScope::full, true});
  const SectorBasis full_next = enumerate_sector(spec, degree + 1, weight, {SectorScope::full, true});
  within(full_here.size(), full_next.size());
  const SparseExactMatrix d_out = assemble_differential(here.horizontal, full_next);
  std::vector<std::vector<Rational>> images;
  for (const auto& k : here.kernel) images.push_back(d_out.multiply(k));
  // Relative cocycles: combinations x of invariant vectors with d(Kx) = 0.
  const auto cocycles = kernel_basis_exact(matrix_from_columns(full_next.size(), images), opts.exact_threshold);

  std::vector<std::vector<Rational>> incoming;
  if (degree > 0) {
    const RelativeSector prev = relative_sector(spec, degree - 1, weight, opts.exact_threshold);
    if (prev.dimension() > 0) {
      const SparseExactMatrix d_prev = assemble_differential(prev.horizontal, full_here);
      for (const auto& k : prev.kernel) incoming.push_back(d_prev.multiply(k));
    }
  }
  const SparseExactMatrix d_in = matrix_from_columns(full_here.size(), incoming);
  const std::size_t image = exact_rank(d_in);
  for (const auto& x : cocycles) {
    std::vector<Rational> v(here.horizontal.size(), Rational(0));
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += x[j] * here.kernel[j][i];
    auto embedded = primitive_integer_vector(embed_vector(here.horizontal, full_here, v));
    if (exact_rank(d_in.with_column(embedded)) == image + 1)
      return CocycleRepresentative{spec, degree, weight, true, std::move(full_here), std::move(embedded), image};
  }
  throw empty();
}

std::string describe(const CocycleRepresentative& rep) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < rep.coefficients.size(); ++i) {
    const Rational& c = rep.coefficients[i];
    if (c == 0) continue;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << '-';
    first = false;
    const Rational a = abs(c);
    if (a != 1) out << a.get_str() << '*';
    out << rep.basis.describe(i);
  }
  return first ? "0" : out.str();
}

}  // namespace hamcoh
