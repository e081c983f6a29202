#include "hamcoh/linalg.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <numeric>
#include <queue>

namespace hamcoh {

std::vector<std::uint64_t> default_primes() { return {4294967291ull, 4294967279ull}; }

std::uint64_t fallback_prime() { return 4294967231ull; }

namespace {

template <class V>
struct SparseRow {
  std::vector<std::uint32_t> cols;
  std::vector<V> vals;
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // Fermat; p is prime and a != 0 mod p.
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

std::uint64_t residue(const Rational& q, std::uint64_t p) {
  const auto& num = q.get_num();
  const auto& den = q.get_den();
  if (num.fits_slong_p() && den.fits_ulong_p()) {
    const long sn = num.get_si();
    const std::uint64_t d = den.get_ui() % p;
    if (d == 0)
      throw UnreducibleEntry("prime " + std::to_string(p) + " divides denominator of " + q.get_str());
    const auto sp = static_cast<long long>(p);
    const std::uint64_t n = static_cast<std::uint64_t>(((sn % sp) + sp) % sp);
    return d == 1 ? n : n * mod_inverse(d, p) % p;
  }
  const Integer prime(static_cast<unsigned long>(p));
  Integer d = den % prime;
  if (d == 0)
    throw UnreducibleEntry("prime " + std::to_string(p) + " divides denominator of " + q.get_str());
  Integer n = num % prime;
  if (n < 0) n += prime;
  return n.get_ui() * mod_inverse(d.get_ui(), p) % p;
}

// Removes rows/columns carrying a single live entry; each removal accounts
// for one unit of rank independent of the field. Returns the peeled count and
// marks dead rows/columns.
template <class V>
std::size_t peel_singletons(const std::vector<SparseRow<V>>& rows, std::size_t ncols,
                            std::vector<char>& row_dead, std::vector<char>& col_dead) {
  const std::size_t nrows = rows.size();
  row_dead.assign(nrows, 0);
  col_dead.assign(ncols, 0);
  std::vector<std::uint32_t> row_count(nrows), col_count(ncols, 0);
  std::vector<std::size_t> col_start(ncols + 1, 0);
  for (std::size_t r = 0; r < nrows; ++r) {
    row_count[r] = static_cast<std::uint32_t>(rows[r].cols.size());
    for (auto c : rows[r].cols) ++col_start[c + 1];
  }
  for (std::size_t c = 0; c < ncols; ++c) {
    col_count[c] = static_cast<std::uint32_t>(col_start[c + 1]);
    col_start[c + 1] += col_start[c];
  }
  std::vector<std::uint32_t> col_rows(col_start[ncols]);
  {
    std::vector<std::size_t> fill(col_start.begin(), col_start.end() - 1);
    for (std::size_t r = 0; r < nrows; ++r)
      for (auto c : rows[r].cols) col_rows[fill[c]++] = static_cast<std::uint32_t>(r);
  }

  std::vector<std::uint32_t> col_queue, row_queue;
  for (std::size_t c = 0; c < ncols; ++c)
    if (col_count[c] == 1) col_queue.push_back(static_cast<std::uint32_t>(c));
  for (std::size_t r = 0; r < nrows; ++r)
    if (row_count[r] == 1) row_queue.push_back(static_cast<std::uint32_t>(r));

  std::size_t peeled = 0;
  auto kill_row = [&](std::uint32_t r) {
    row_dead[r] = 1;
    for (auto c : rows[r].cols) {
      if (col_dead[c]) continue;
      if (--col_count[c] == 1) col_queue.push_back(c);
    }
  };
  auto kill_col = [&](std::uint32_t c) {
    col_dead[c] = 1;
    for (std::size_t k = col_start[c]; k < col_start[c + 1]; ++k) {
      const auto r = col_rows[k];
      if (row_dead[r]) continue;
      if (--row_count[r] == 1) row_queue.push_back(r);
    }
  };
  while (!col_queue.empty() || !row_queue.empty()) {
    if (!col_queue.empty()) {
      const auto c = col_queue.back();
      col_queue.pop_back();
      if (col_dead[c] || col_count[c] != 1) continue;
      std::uint32_t r = 0;
      for (std::size_t k = col_start[c]; k < col_start[c + 1]; ++k)
        if (!row_dead[col_rows[k]]) r = col_rows[k];
      ++peeled;
      kill_row(r);
      kill_col(c);
    } else {
      const auto r = row_queue.back();
      row_queue.pop_back();
      if (row_dead[r] || row_count[r] != 1) continue;
      std::uint32_t c = 0;
      for (auto cc : rows[r].cols)
        if (!col_dead[cc]) c = cc;
      ++peeled;
      kill_row(r);
      kill_col(c);
    }
  }
  return peeled;
}

// Restricts to live rows/columns, renumbers columns by increasing count
// (sparse columns lead, which limits fill) and orders rows by length.
template <class V>
std::vector<SparseRow<V>> compact(std::vector<SparseRow<V>>& rows, std::size_t ncols,
                                  const std::vector<char>& row_dead,
                                  const std::vector<char>& col_dead, std::size_t& live_cols) {
  std::vector<std::uint32_t> count(ncols, 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (row_dead[r]) continue;
    for (auto c : rows[r].cols)
      if (!col_dead[c]) ++count[c];
  }
  std::vector<std::uint32_t> order;
  for (std::size_t c = 0; c < ncols; ++c)
    if (!col_dead[c] && count[c] > 0) order.push_back(static_cast<std::uint32_t>(c));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return count[a] < count[b]; });
  std::vector<std::uint32_t> relabel(ncols, 0);
  for (std::size_t i = 0; i < order.size(); ++i) relabel[order[i]] = static_cast<std::uint32_t>(i);
  live_cols = order.size();

  std::vector<SparseRow<V>> out;
  std::vector<std::pair<std::uint32_t, V>> tmp;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (row_dead[r]) continue;
    tmp.clear();
    for (std::size_t k = 0; k < rows[r].cols.size(); ++k)
      if (!col_dead[rows[r].cols[k]]) tmp.emplace_back(relabel[rows[r].cols[k]], std::move(rows[r].vals[k]));
    if (tmp.empty()) continue;
    std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow<V> row;
    for (auto& [c, v] : tmp) {
      row.cols.push_back(c);
      row.vals.push_back(std::move(v));
    }
    out.push_back(std::move(row));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.cols.size() < b.cols.size(); });
  return out;
}

struct ModOps {
  using Value = std::uint64_t;
  std::uint64_t p;

  static bool is_zero(Value v) { return v == 0; }
  static Value zero() { return 0; }
  void normalize(SparseRow<Value>& row) const {
    const Value inv = mod_inverse(row.vals.front(), p);
    for (auto& v : row.vals) v = v * inv % p;
  }
  // acc -= acc[lead] * pivot; pivot lead coefficient is 1.
  template <class Touch>
  void eliminate(std::vector<Value>& acc, std::uint32_t lead, const SparseRow<Value>& pivot,
                 const std::vector<std::uint32_t>&, Touch&& touch) const {
    const Value coef = acc[lead];
    for (std::size_t k = 1; k < pivot.cols.size(); ++k) {
      const auto c = pivot.cols[k];
      const Value t = coef * pivot.vals[k] % p;
      acc[c] = acc[c] >= t ? acc[c] - t : acc[c] + p - t;
      touch(c);
    }
    acc[lead] = 0;
  }
};

struct IntegerOps {
  using Value = Integer;

  static bool is_zero(const Value& v) { return v == 0; }
  static Value zero() { return 0; }
  static void normalize(SparseRow<Value>& row) {
    Integer g = 0;
    for (const auto& v : row.vals) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) return;
    }
    if (row.vals.front() < 0) g = -g;
    for (auto& v : row.vals) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
  // acc <- a * acc - b * pivot with a/b the reduced ratio of the two leads.
  template <class Touch>
  void eliminate(std::vector<Value>& acc, std::uint32_t lead, const SparseRow<Value>& pivot,
                 const std::vector<std::uint32_t>& touched, Touch&& touch) const {
    Integer a = pivot.vals.front(), b = acc[lead], g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());
    if (a != 1)
      for (auto c : touched)
        if (acc[c] != 0) acc[c] *= a;
    for (std::size_t k = 1; k < pivot.cols.size(); ++k) {
      const auto c = pivot.cols[k];
      acc[c] -= b * pivot.vals[k];
      touch(c);
    }
    acc[lead] = 0;
  }
};

// Row-by-row echelon form. Every stored pivot row has its leading column
// strictly left of all its other entries, so a new row is reduced in a
// single left-to-right sweep driven by a min-heap of touched columns.
template <class Ops>
std::size_t echelon_rank(std::vector<SparseRow<typename Ops::Value>> rows, std::size_t ncols,
                         const Ops& ops) {
  using V = typename Ops::Value;
  std::vector<std::int64_t> pivot_of(ncols, -1);
  std::vector<SparseRow<V>> pivots;
  std::vector<V> acc(ncols, Ops::zero());
  std::vector<char> queued(ncols, 0);
  std::vector<std::uint32_t> heap, touched;
  const auto cmp = std::greater<std::uint32_t>{};

  for (auto& row : rows) {
    if (pivots.size() == ncols) break;
    heap.clear();
    touched.clear();
    for (std::size_t k = 0; k < row.cols.size(); ++k) {
      const auto c = row.cols[k];
      acc[c] = std::move(row.vals[k]);
      queued[c] = 1;
      heap.push_back(c);
      touched.push_back(c);
    }
    std::make_heap(heap.begin(), heap.end(), cmp);
    auto touch = [&](std::uint32_t c) {
      if (queued[c]) return;
      queued[c] = 1;
      heap.push_back(c);
      std::push_heap(heap.begin(), heap.end(), cmp);
      touched.push_back(c);
    };
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), cmp);
      const auto j = heap.back();
      heap.pop_back();
      queued[j] = 0;
      if (Ops::is_zero(acc[j])) continue;
      if (pivot_of[j] >= 0) {
        ops.eliminate(acc, j, pivots[static_cast<std::size_t>(pivot_of[j])], touched, touch);
        continue;
      }
      SparseRow<V> pivot;
      pivot.cols.push_back(j);
      pivot.vals.push_back(acc[j]);
      std::sort(heap.begin(), heap.end());
      for (auto c : heap)
        if (!Ops::is_zero(acc[c])) {
          pivot.cols.push_back(c);
          pivot.vals.push_back(acc[c]);
        }
      ops.normalize(pivot);
      pivot_of[j] = static_cast<std::int64_t>(pivots.size());
      pivots.push_back(std::move(pivot));
      break;
    }
    for (auto c : touched) {
      acc[c] = Ops::zero();
      queued[c] = 0;
    }
  }
  return pivots.size();
}

template <class V>
std::size_t peel_and_eliminate(std::vector<SparseRow<V>> rows, std::size_t ncols, const auto& ops) {
  std::vector<char> row_dead, col_dead;
  const std::size_t peeled = peel_singletons(rows, ncols, row_dead, col_dead);
  std::size_t live_cols = 0;
  auto remaining = compact(rows, ncols, row_dead, col_dead, live_cols);
  return peeled + echelon_rank(std::move(remaining), live_cols, ops);
}

// Rank over GF(p) by repeated Schur complements. Each round takes, for every
// column, the shortest row leading there as a pivot; pivot rows are used
// unreduced, so they stay sparse, and the remaining rows are reduced against
// them into a smaller matrix on the unpivoted columns.
std::size_t schur_rank(std::vector<SparseRow<std::uint64_t>> rows, std::size_t ncols, const ModOps& ops) {
  using V = std::uint64_t;
  std::size_t rank = 0;
  std::vector<V> acc;
  std::vector<char> queued;
  std::vector<std::uint32_t> heap, touched;
  const auto cmp = std::greater<std::uint32_t>{};
  while (!rows.empty()) {
    std::vector<char> row_dead, col_dead;
    rank += peel_singletons(rows, ncols, row_dead, col_dead);
    rows = compact(rows, ncols, row_dead, col_dead, ncols);
    if (rows.empty()) break;

    std::vector<std::int64_t> pivot_of(ncols, -1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto& slot = pivot_of[rows[r].cols.front()];
      if (slot < 0 || rows[r].cols.size() < rows[static_cast<std::size_t>(slot)].cols.size())
        slot = static_cast<std::int64_t>(r);
    }
    std::vector<char> is_pivot_row(rows.size(), 0);
    std::size_t npivots = 0;
    for (auto r : pivot_of)
      if (r >= 0) {
        is_pivot_row[static_cast<std::size_t>(r)] = 1;
        ops.normalize(rows[static_cast<std::size_t>(r)]);
        ++npivots;
      }
    rank += npivots;

    acc.assign(ncols, 0);
    queued.assign(ncols, 0);
    std::vector<SparseRow<V>> next;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (is_pivot_row[r]) continue;
      auto& row = rows[r];
      heap.clear();
      touched.clear();
      for (std::size_t k = 0; k < row.cols.size(); ++k) {
        const auto c = row.cols[k];
        acc[c] = row.vals[k];
        queued[c] = 1;
        heap.push_back(c);
        touched.push_back(c);
      }
      std::make_heap(heap.begin(), heap.end(), cmp);
      auto touch = [&](std::uint32_t c) {
        if (queued[c]) return;
        queued[c] = 1;
        heap.push_back(c);
        std::push_heap(heap.begin(), heap.end(), cmp);
        touched.push_back(c);
      };
      SparseRow<V> out;
      while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        const auto j = heap.back();
        heap.pop_back();
        queued[j] = 0;
        if (acc[j] == 0) continue;
        if (pivot_of[j] >= 0) {
          ops.eliminate(acc, j, rows[static_cast<std::size_t>(pivot_of[j])], touched, touch);
          continue;
        }
        out.cols.push_back(j);
        out.vals.push_back(acc[j]);
      }
      for (auto c : touched) {
        acc[c] = 0;
        queued[c] = 0;
      }
      row = SparseRow<V>{};
      if (!out.cols.empty()) next.push_back(std::move(out));
    }
    rows = std::move(next);
  }
  return rank;
}

std::vector<SparseRow<std::uint64_t>> residue_rows(const SparseExactMatrix& m, std::uint64_t p) {
  std::vector<SparseRow<std::uint64_t>> rows(m.rows());
  // entries are sorted by (col, row) so each row's columns arrive in order
  if (m.field().is_rational()) {
    for (const auto& e : m.rational_entries()) {
      const auto r = residue(e.value, p);
      if (r == 0) continue;
      rows[e.row].cols.push_back(static_cast<std::uint32_t>(e.col));
      rows[e.row].vals.push_back(r);
    }
  } else {
    for (const auto& e : m.residue_entries()) {
      rows[e.row].cols.push_back(static_cast<std::uint32_t>(e.col));
      rows[e.row].vals.push_back(e.value);
    }
  }
  return rows;
}

// Integer rows with the same row space dimension: each row scaled by the
// lcm of its denominators.
std::vector<SparseRow<Integer>> integer_rows(const SparseExactMatrix& m) {
  std::vector<SparseRow<Rational>> q(m.rows());
  for (const auto& e : m.rational_entries()) {
    q[e.row].cols.push_back(static_cast<std::uint32_t>(e.col));
    q[e.row].vals.push_back(e.value);
  }
  std::vector<SparseRow<Integer>> rows(m.rows());
  for (std::size_t r = 0; r < q.size(); ++r) {
    Integer l = 1;
    for (const auto& v : q[r].vals) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    rows[r].cols = std::move(q[r].cols);
    for (const auto& v : q[r].vals) rows[r].vals.push_back(v.get_num() * (l / v.get_den()));
  }
  return rows;
}

}  // namespace

std::size_t rank_mod_p(const SparseExactMatrix& m, std::uint64_t p) {
  const Field f = Field::prime(p);
  if (!m.field().is_rational() && !(m.field() == f))
    throw std::invalid_argument("rank_mod_p: matrix is over GF(" + std::to_string(m.field().modulus()) +
                                "), not GF(" + std::to_string(p) + ")");
  if (m.nonzeros() == 0) return 0;
  if (m.rows() > m.cols()) return schur_rank(residue_rows(m.transpose(), p), m.rows(), ModOps{p});
  return schur_rank(residue_rows(m, p), m.cols(), ModOps{p});
}

std::size_t exact_rank(const SparseExactMatrix& m) {
  if (m.nonzeros() == 0) return 0;
  return peel_and_eliminate(integer_rows(m), m.cols(), IntegerOps{});
}

RankCertificate rank_certified(const SparseExactMatrix& m, std::span<const std::uint64_t> primes,
                               std::size_t exact_threshold, int threads) {
  if (primes.size() < 2) throw std::invalid_argument("rank_certified: at least two primes required");
  if (!m.field().is_rational()) throw std::invalid_argument("rank_certified: matrix must be over QQ");
  RankCertificate cert;
  cert.primes_used.assign(primes.begin(), primes.end());
  cert.per_prime_ranks.resize(primes.size());
  if (threads > 1) {
    std::vector<std::future<std::size_t>> jobs;
    for (auto p : primes) jobs.push_back(std::async(std::launch::async, [&m, p] { return rank_mod_p(m, p); }));
    for (std::size_t i = 0; i < jobs.size(); ++i) cert.per_prime_ranks[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < primes.size(); ++i) cert.per_prime_ranks[i] = rank_mod_p(m, primes[i]);
  }
  cert.rank = *std::max_element(cert.per_prime_ranks.begin(), cert.per_prime_ranks.end());
  cert.agreement = std::all_of(cert.per_prime_ranks.begin(), cert.per_prime_ranks.end(),
                               [&](std::size_t r) { return r == cert.rank; });
  if (std::max(m.rows(), m.cols()) <= exact_threshold) {
    cert.exact_rank = exact_rank(m);
    cert.exact_confirmed = cert.agreement && *cert.exact_rank == cert.rank;
  }
  return cert;
}

std::vector<Rational> primitive_integer_vector(std::vector<Rational> v) {
  Integer l = 1, g = 0;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  for (auto& x : v) {
    x *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g == 0) return v;
  auto last = std::find_if(v.rbegin(), v.rend(), [](const Rational& x) { return x != 0; });
  if (*last < 0) g = -g;
  for (auto& x : v) x /= g;
  return v;
}

std::vector<std::vector<Rational>> kernel_basis_exact(const SparseExactMatrix& m, std::size_t threshold) {
  if (std::max(m.rows(), m.cols()) > threshold)
    throw ThresholdExceeded("kernel_basis_exact: " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + " exceeds exact threshold " +
                            std::to_string(threshold));
  const std::size_t nrows = m.rows(), ncols = m.cols();

  // Dense fraction-free (Bareiss) echelon form; rows carry no denominators.
  std::vector<std::vector<Integer>> a(nrows, std::vector<Integer>(ncols, 0));
  {
    auto rows = integer_rows(m);
    for (std::size_t r = 0; r < nrows; ++r)
      for (std::size_t k = 0; k < rows[r].cols.size(); ++k) a[r][rows[r].cols[k]] = rows[r].vals[k];
  }
  std::vector<std::size_t> pivot_cols;
  Integer prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
    std::size_t i = rank;
    while (i < nrows && a[i][c] == 0) ++i;
    if (i == nrows) continue;
    std::swap(a[i], a[rank]);
    for (std::size_t r = rank + 1; r < nrows; ++r) {
      for (std::size_t k = c + 1; k < ncols; ++k) {
        a[r][k] = a[rank][c] * a[r][k] - a[r][c] * a[rank][k];
        mpz_divexact(a[r][k].get_mpz_t(), a[r][k].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    pivot_cols.push_back(c);
    ++rank;
  }

  std::vector<char> is_pivot(ncols, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(ncols, Rational(0));
    x[f] = 1;
    for (std::size_t i = rank; i-- > 0;) {
      const std::size_t pc = pivot_cols[i];
      Rational s = 0;
      for (std::size_t k = pc + 1; k < ncols; ++k)
        if (a[i][k] != 0 && x[k] != 0) s += Rational(a[i][k]) * x[k];
      x[pc] = -s / Rational(a[i][pc]);
    }
    basis.push_back(primitive_integer_vector(std::move(x)));
  }
  return basis;
}

}  // namespace hamcoh
