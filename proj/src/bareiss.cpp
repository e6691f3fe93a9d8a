#include <stdexcept>
#include <vector>

#include "sdet/exactla.hpp"

namespace sdet::la {

namespace {

using DenseZ = std::vector<std::vector<mpz_class>>;

DenseZ densify(const ScaledIntegerMatrix& m) {
  DenseZ a(m.rows, std::vector<mpz_class>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (const auto& [j, v] : m.row_entries[i]) a[i][j] = v;
  return a;
}

// One fraction-free elimination step: rows below `pr` are updated on the
// columns after `pc` so that every entry stays an integer minor.
void bareiss_step(DenseZ& a, int pr, int pc, const mpz_class& prev) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  const mpz_class& p = a[pr][pc];
  mpz_class t;
  for (int i = pr + 1; i < rows; ++i) {
    const bool zero_lead = sgn(a[i][pc]) == 0;
    for (int j = pc + 1; j < cols; ++j) {
      mpz_class& x = a[i][j];
      if (zero_lead) {
        if (sgn(x) == 0) continue;
        x *= p;
      } else {
        x *= p;
        mpz_submul(x.get_mpz_t(), a[i][pc].get_mpz_t(), a[pr][j].get_mpz_t());
      }
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
    }
    a[i][pc] = 0;
  }
}

// Row with the fewest nonzeros right of `pc`; ties go to the lowest index.
int choose_pivot_row(const DenseZ& a, int from, int pc) {
  int best = -1;
  int best_count = 0;
  const int cols = static_cast<int>(a[0].size());
  for (int i = from; i < static_cast<int>(a.size()); ++i) {
    if (sgn(a[i][pc]) == 0) continue;
    int count = 0;
    for (int j = pc + 1; j < cols; ++j) count += sgn(a[i][j]) != 0;
    if (best < 0 || count < best_count) {
      best = i;
      best_count = count;
    }
  }
  return best;
}

}  // namespace

// Two-step fraction-free elimination: pivot rows k and k+1 clear columns
// k and k+1 of every lower row at once, so each entry is divided by the
// previous pivot once per two columns instead of once per column.
mpq_class det_bareiss(const SparseMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix is not square");
  const int n = m.rows();
  if (n == 0) return 1;
  ScaledIntegerMatrix im = to_integer(m);
  for (const auto& row : im.row_entries)
    if (row.empty()) return 0;
  DenseZ a = densify(im);
  int sign = 1;
  mpz_class prev = 1;
  mpz_class t, c0, c1, c2;
  int k = 0;
  while (k < n) {
    const int pr = choose_pivot_row(a, k, k);
    if (pr < 0) return 0;
    if (pr != k) {
      std::swap(a[pr], a[k]);
      sign = -sign;
    }
    if (k + 1 == n) break;
    // Second pivot: a lower row whose one-step value in column k+1 is nonzero.
    int second = -1;
    for (int i = k + 1; i < n && second < 0; ++i) {
      t = a[k][k] * a[i][k + 1];
      mpz_submul(t.get_mpz_t(), a[i][k].get_mpz_t(), a[k][k + 1].get_mpz_t());
      if (sgn(t) != 0) second = i;
    }
    if (second < 0) return 0;
    if (second != k + 1) {
      std::swap(a[second], a[k + 1]);
      sign = -sign;
    }
    if (k + 2 == n) {
      bareiss_step(a, k, k, prev);
      prev = a[k][k];
      k = n - 1;
      break;
    }
    c0 = a[k][k] * a[k + 1][k + 1];
    mpz_submul(c0.get_mpz_t(), a[k][k + 1].get_mpz_t(), a[k + 1][k].get_mpz_t());
    mpz_divexact(c0.get_mpz_t(), c0.get_mpz_t(), prev.get_mpz_t());
    for (int i = k + 2; i < n; ++i) {
      c1 = a[k][k + 1] * a[i][k];
      mpz_submul(c1.get_mpz_t(), a[k][k].get_mpz_t(), a[i][k + 1].get_mpz_t());
      mpz_divexact(c1.get_mpz_t(), c1.get_mpz_t(), prev.get_mpz_t());
      c2 = a[k + 1][k] * a[i][k + 1];
      mpz_submul(c2.get_mpz_t(), a[k + 1][k + 1].get_mpz_t(), a[i][k].get_mpz_t());
      mpz_divexact(c2.get_mpz_t(), c2.get_mpz_t(), prev.get_mpz_t());
      const bool pure = sgn(c1) == 0 && sgn(c2) == 0;
      for (int j = k + 2; j < n; ++j) {
        mpz_class& x = a[i][j];
        if (pure && sgn(x) == 0) continue;
        x *= c0;
        if (!pure) {
          mpz_addmul(x.get_mpz_t(), a[k + 1][j].get_mpz_t(), c1.get_mpz_t());
          mpz_addmul(x.get_mpz_t(), a[k][j].get_mpz_t(), c2.get_mpz_t());
        }
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
      a[i][k + 1] = 0;
    }
    // Row k+1 gets its one-step values so the trailing pivot is consistent.
    for (int j = k + 1; j < n; ++j) {
      mpz_class& x = a[k + 1][j];
      x *= a[k][k];
      mpz_submul(x.get_mpz_t(), a[k + 1][k].get_mpz_t(), a[k][j].get_mpz_t());
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
    }
    a[k + 1][k] = 0;
    prev = c0;
    k += 2;
  }
  mpq_class det(sign < 0 ? mpz_class(-a[n - 1][n - 1]) : a[n - 1][n - 1], im.total_scale());
  det.canonicalize();
  return det;
}

int rank_exact(const SparseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) return 0;
  ScaledIntegerMatrix im = to_integer(m);
  DenseZ a = densify(im);
  const int rows = m.rows();
  const int cols = m.cols();
  int rank = 0;
  mpz_class prev = 1;
  for (int c = 0; c < cols && rank < rows; ++c) {
    const int pr = choose_pivot_row(a, rank, c);
    if (pr < 0) continue;
    if (pr != rank) std::swap(a[pr], a[rank]);
    bareiss_step(a, rank, c, prev);
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

}  // namespace sdet::la
