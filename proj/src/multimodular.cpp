#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "modarith.hpp"
#include "sdet/errors.hpp"
#include "sdet/exactla.hpp"

namespace sdet::la {

using detail::Montgomery;
using detail::u128;
using detail::u64;

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mulmod = [n](u64 a, u64 b) { return static_cast<u64>(static_cast<u128>(a) * b % n); };
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = 1, base = a % n, e = d;
    while (e) {
      if (e & 1) x = mulmod(x, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

constexpr u64 kPrimeCeiling = 1ULL << 62;

// The first `count` primes below 2^62, in decreasing order.
std::vector<u64> primes_below_word(std::size_t count) {
  static std::mutex mu;
  static std::vector<u64> cache;
  std::lock_guard lock(mu);
  u64 candidate = cache.empty() ? kPrimeCeiling - 1 : cache.back() - 2;
  while (cache.size() < count) {
    if (is_prime_u64(candidate)) cache.push_back(candidate);
    candidate -= 2;
  }
  return {cache.begin(), cache.begin() + count};
}

u64 reduce_mod(const mpz_class& v, u64 p) {
  return mpz_fdiv_ui(v.get_mpz_t(), p);  // p < 2^62 fits in unsigned long
}

struct Entry {
  int col;
  u64 val;
};

using Row = std::vector<Entry>;

int permutation_sign(std::vector<int> perm) {
  int sign = 1;
  for (int i = 0; i < static_cast<int>(perm.size()); ++i) {
    while (perm[i] != i) {
      std::swap(perm[i], perm[perm[i]]);
      sign = -sign;
    }
  }
  return sign;
}

// Sparse LU-style elimination modulo one prime. Pivots follow a Markowitz
// rule restricted to the sparsest columns; once the active block becomes
// dense the remainder is finished with dense elimination.
class ModularEliminator {
 public:
  ModularEliminator(const ScaledIntegerMatrix& m, u64 p)
      : mg_(p), n_(m.rows), rows_(n_), row_active_(n_, 1), col_active_(n_, 1),
        col_count_(n_, 0), col_rows_(n_), stamp_(n_, 0) {
    for (int i = 0; i < n_; ++i) {
      Row& row = rows_[i];
      row.reserve(m.row_entries[i].size());
      for (const auto& [j, v] : m.row_entries[i]) {
        u64 x = reduce_mod(v, p);
        if (x) row.push_back({j, mg_.to(x)});
      }
      std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
      for (const auto& e : row) {
        ++col_count_[e.col];
        col_rows_[e.col].push_back(i);
      }
      active_nnz_ += row.size();
    }
  }

  u64 determinant() {
    u64 det = mg_.to(1);
    row_order_.reserve(n_);
    col_order_.reserve(n_);
    for (int step = 0; step < n_; ++step) {
      const std::size_t remaining = static_cast<std::size_t>(n_ - step);
      if (remaining >= 32 && active_nnz_ * 4 >= remaining * remaining) {
        u64 tail = dense_tail();
        if (tail == 0) return 0;
        det = mg_.mul(det, tail);
        break;
      }
      int pr = -1, pc = -1;
      if (!choose_pivot(pr, pc)) return 0;
      const u64 pv = value_at(pr, pc);
      det = mg_.mul(det, pv);
      eliminate(pr, pc, pv);
    }
    u64 plain = mg_.from(det);
    if (permutation_sign(row_order_) * permutation_sign(col_order_) < 0) plain = plain ? mg_.modulus() - plain : 0;
    return plain;
  }

 private:
  u64 value_at(int r, int c) const {
    const Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int col) { return e.col < col; });
    return (it != row.end() && it->col == c) ? it->val : 0;
  }

  // Visits each live row of column c exactly once, compacting the list.
  template <class F>
  void for_rows_in_column(int c, F&& f) {
    ++epoch_;
    auto& list = col_rows_[c];
    std::size_t keep = 0;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const int r = list[k];
      if (!row_active_[r] || stamp_[r] == epoch_ || value_at(r, c) == 0) continue;
      stamp_[r] = epoch_;
      list[keep++] = r;
    }
    list.resize(keep);
    for (std::size_t k = 0; k < keep; ++k) f(list[k]);
  }

  bool choose_pivot(int& pr, int& pc) {
    int min_count = n_ + 1;
    for (int c = 0; c < n_; ++c)
      if (col_active_[c] && col_count_[c] < min_count) min_count = col_count_[c];
    if (min_count == 0) return false;
    constexpr int kCandidateColumns = 4;
    long best_cost = -1;
    int seen = 0;
    for (int c = 0; c < n_ && seen < kCandidateColumns; ++c) {
      if (!col_active_[c] || col_count_[c] != min_count) continue;
      ++seen;
      for_rows_in_column(c, [&](int r) {
        const long cost = static_cast<long>(col_count_[c] - 1) * static_cast<long>(rows_[r].size() - 1);
        if (best_cost < 0 || cost < best_cost || (cost == best_cost && (r < pr || (r == pr && c < pc)))) {
          best_cost = cost;
          pr = r;
          pc = c;
        }
      });
    }
    return best_cost >= 0;
  }

  void eliminate(int pr, int pc, u64 pv) {
    row_active_[pr] = 0;
    col_active_[pc] = 0;
    row_order_.push_back(pr);
    col_order_.push_back(pc);
    const Row& prow = rows_[pr];
    for (const auto& e : prow) --col_count_[e.col];
    active_nnz_ -= prow.size();
    const u64 pinv = mg_.inv(pv);
    std::vector<int> targets;
    for_rows_in_column(pc, [&](int r) { targets.push_back(r); });
    Row merged;
    for (int r : targets) {
      Row& row = rows_[r];
      const u64 f = mg_.mul(value_at(r, pc), pinv);
      merged.clear();
      merged.reserve(row.size() + prow.size());
      std::size_t a = 0, b = 0;
      while (a < row.size() || b < prow.size()) {
        if (b == prow.size() || (a < row.size() && row[a].col < prow[b].col)) {
          merged.push_back(row[a++]);
        } else if (a == row.size() || prow[b].col < row[a].col) {
          const u64 v = mg_.neg(mg_.mul(f, prow[b].val));
          if (v) {
            merged.push_back({prow[b].col, v});
            ++col_count_[prow[b].col];
            col_rows_[prow[b].col].push_back(r);
          }
          ++b;
        } else {
          const u64 v = mg_.sub(row[a].val, mg_.mul(f, prow[b].val));
          if (v)
            merged.push_back({row[a].col, v});
          else
            --col_count_[row[a].col];
          ++a;
          ++b;
        }
      }
      active_nnz_ += merged.size();
      active_nnz_ -= row.size();
      row.swap(merged);
    }
    // The pivot column is now empty among active rows.
    col_rows_[pc].clear();
    col_rows_[pc].shrink_to_fit();
    Row().swap(rows_[pr]);
  }

  // Dense elimination of the active block. Returns the product of its
  // pivots (Montgomery form) and appends the pivot positions to the orders.
  u64 dense_tail() {
    std::vector<int> rmap, cmap;
    for (int i = 0; i < n_; ++i)
      if (row_active_[i]) rmap.push_back(i);
    for (int j = 0; j < n_; ++j)
      if (col_active_[j]) cmap.push_back(j);
    const int m = static_cast<int>(rmap.size());
    std::vector<int> col_local(n_, -1);
    for (int j = 0; j < m; ++j) col_local[cmap[j]] = j;
    std::vector<u64> a(static_cast<std::size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i)
      for (const auto& e : rows_[rmap[i]]) a[static_cast<std::size_t>(i) * m + col_local[e.col]] = e.val;
    std::vector<int> local_rows(m);
    for (int i = 0; i < m; ++i) local_rows[i] = i;
    u64 det = mg_.to(1);
    for (int k = 0; k < m; ++k) {
      int piv = -1;
      for (int i = k; i < m; ++i)
        if (a[static_cast<std::size_t>(local_rows[i]) * m + k]) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      std::swap(local_rows[k], local_rows[piv]);
      u64* prow = &a[static_cast<std::size_t>(local_rows[k]) * m];
      det = mg_.mul(det, prow[k]);
      row_order_.push_back(rmap[local_rows[k]]);
      col_order_.push_back(cmap[k]);
      const u64 pinv = mg_.inv(prow[k]);
      for (int i = k + 1; i < m; ++i) {
        u64* row = &a[static_cast<std::size_t>(local_rows[i]) * m];
        if (!row[k]) continue;
        const u64 f = mg_.mul(row[k], pinv);
        row[k] = 0;
        for (int j = k + 1; j < m; ++j)
          if (prow[j]) row[j] = mg_.sub(row[j], mg_.mul(f, prow[j]));
      }
    }
    return det;
  }

  Montgomery mg_;
  int n_;
  std::vector<Row> rows_;
  std::vector<char> row_active_, col_active_;
  std::vector<int> col_count_;
  std::vector<std::vector<int>> col_rows_;
  std::vector<unsigned> stamp_;
  unsigned epoch_ = 0;
  std::size_t active_nnz_ = 0;
  std::vector<int> row_order_, col_order_;
};

}  // namespace

u64 det_mod_prime(const ScaledIntegerMatrix& m, u64 p) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant: matrix is not square");
  if (p < 3 || p >= kPrimeCeiling || (p & 1) == 0)
    throw std::invalid_argument("det_mod_prime: need an odd prime below 2^62");
  if (m.rows == 0) return 1;
  ModularEliminator elim(m, p);
  return elim.determinant();
}

double hadamard_log2(const ScaledIntegerMatrix& m) {
  auto log2_of = [](const mpz_class& v) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return static_cast<double>(exp) + std::log2(mant);
  };
  std::vector<mpz_class> col_sq(m.cols);
  double by_rows = 0;
  for (const auto& row : m.row_entries) {
    mpz_class s = 0;
    for (const auto& [j, v] : row) {
      mpz_class sq = v * v;
      s += sq;
      col_sq[j] += sq;
    }
    if (sgn(s) == 0) return -INFINITY;
    by_rows += 0.5 * log2_of(s);
  }
  double by_cols = 0;
  for (const auto& s : col_sq) {
    if (sgn(s) == 0) return -INFINITY;
    by_cols += 0.5 * log2_of(s);
  }
  return std::min(by_rows, by_cols);
}

mpq_class det_multimodular(const SparseMatrix& sm, const MultimodularOptions& opts, MultimodularStats* stats) {
  if (sm.rows() != sm.cols()) throw std::invalid_argument("determinant: matrix is not square");
  if (sm.rows() == 0) return 1;
  const ScaledIntegerMatrix m = to_integer(sm);
  const double bound = hadamard_log2(m);
  if (stats) {
    stats->hadamard_log2 = bound;
    stats->primes_used = 0;
  }
  if (bound == -INFINITY) return 0;  // a zero row or column

  // |det| <= 2^bound, and the symmetric residue range must cover
  // [-2^bound, 2^bound], so the modulus product has to exceed 2^(bound+1).
  // Each prime contributes at least 61 bits; the margin absorbs the
  // floating point rounding in `bound`.
  const double need_bits = bound + 1.0 + 1e-6 * (1.0 + std::abs(bound));
  const std::size_t reconstruct_count = static_cast<std::size_t>(std::max(1.0, std::ceil(need_bits / 61.0)));
  const std::vector<u64> primes = primes_below_word(reconstruct_count + 1);

  std::vector<u64> residues(primes.size());
  const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(primes.size())));
  if (threads == 1) {
    for (std::size_t k = 0; k < primes.size(); ++k) residues[k] = det_mod_prime(m, primes[k]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mu;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t k; (k = next.fetch_add(1)) < primes.size();) {
          try {
            residues[k] = det_mod_prime(m, primes[k]);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Garner-style incremental CRT over the reconstruction primes.
  mpz_class value = 0, modulus = 1;
  for (std::size_t k = 0; k < reconstruct_count; ++k) {
    const u64 p = primes[k];
    const u64 current = reduce_mod(value, p);
    const u64 diff = residues[k] >= current ? residues[k] - current : residues[k] + p - current;
    mpz_class mod_p = reduce_mod(modulus, p), inv;
    mpz_class pz;
    mpz_import(pz.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
    mpz_invert(inv.get_mpz_t(), mod_p.get_mpz_t(), pz.get_mpz_t());
    const u64 t = static_cast<u64>((static_cast<u128>(diff) * reduce_mod(inv, p)) % p);
    value += modulus * mpz_class(static_cast<unsigned long>(t));
    modulus *= pz;
  }
  mpz_class half = modulus / 2;
  if (value > half) value -= modulus;

  const u64 check_prime = primes.back();
  if (reduce_mod(value, check_prime) != residues.back())
    throw InternalError("multi-modular determinant: verification prime disagrees with reconstruction");
  if (stats) stats->primes_used = static_cast<int>(primes.size());

  mpq_class det(value, m.total_scale());
  det.canonicalize();
  return det;
}

}  // namespace sdet::la
