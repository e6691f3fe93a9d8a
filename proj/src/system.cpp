#include "sdet/system.hpp"

#include <stdexcept>
#include <string>

namespace sdet {

namespace {

void check_equation_index(const TensorAssignment& t, const EquationIndex& e) {
  if (e.size() != t.r - 1)
    throw std::invalid_argument("equation index " + e.to_string() + " must have " +
                                std::to_string(t.r - 1) + " elements");
  Combination check = e;
  check.n = t.n();
  check.validate();
}

}  // namespace

EquationBlock build_equation(const TensorAssignment& t, const EquationIndex& e) {
  check_equation_index(t, e);
  const int n = t.n();
  EquationBlock block;
  block.index = e;
  block.index.n = n;
  block.entries.reserve(static_cast<std::size_t>(n - e.size()) * t.d);
  for (int s = 1; s <= n; ++s) {
    if (block.index.contains(s)) continue;
    const auto [position, sign] = insertion_sign(s, block.index);
    const Combination subset = block.index.with(s);
    const std::uint64_t col = rank_combination(subset);
    const VectorQ& v = t.entries[col];
    for (int k = 0; k < t.d; ++k) {
      if (sgn(v[k]) == 0) continue;
      block.entries.push_back({col, k, sign > 0 ? v[k] : mpq_class(-v[k])});
    }
  }
  return block;
}

namespace {

// Rows come from the (r-1)-subsets of 1..universe in dictionary order.
la::SparseMatrix assemble_rows(const TensorAssignment& t, int universe) {
  const int n = t.n();
  const int k = t.r - 1;
  const std::uint64_t blocks = binomial_u64(universe, k);
  const std::uint64_t cols = binomial_u64(n, t.r);
  la::SparseMatrix m(static_cast<int>(blocks * t.d), static_cast<int>(cols));
  if (k > universe) return m;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  std::uint64_t block = 0;
  do {
    EquationIndex e;
    e.n = n;
    e.elements = cur;
    for (const auto& entry : build_equation(t, e).entries)
      m.set(static_cast<int>(block * t.d + entry.coordinate), static_cast<int>(entry.column), entry.value);
    ++block;
  } while (k > 0 && next_combination(cur, universe));
  return m;
}

}  // namespace

SystemMatrix build_matrix(const TensorAssignment& t) {
  return SystemMatrix(t.r, t.d, assemble_rows(t, t.n() - 1), false);
}

SystemMatrix build_full_matrix(const TensorAssignment& t) {
  return SystemMatrix(t.r, t.d, assemble_rows(t, t.n()), true);
}

int SystemMatrix::row_index(const EquationIndex& e, int coordinate) const {
  if (coordinate < 1 || coordinate > d_) throw std::invalid_argument("row_index: coordinate out of range");
  const int universe = full_ ? r_ * d_ : r_ * d_ - 1;
  if (e.size() != r_ - 1) throw std::invalid_argument("row_index: wrong equation index size");
  for (int v : e.elements)
    if (v < 1 || v > universe)
      throw std::invalid_argument("row_index: equation " + e.to_string() + " is not in this system");
  return static_cast<int>(rank_combination(std::span<const int>(e.elements), universe) * d_ + (coordinate - 1));
}

int SystemMatrix::col_index(const Combination& c) const {
  return static_cast<int>(rank_combination(std::span<const int>(c.elements), r_ * d_));
}

la::SparseMatrix relation_residual(const TensorAssignment& t, const Combination& n_tuple) {
  if (t.r < 2) throw std::invalid_argument("relations need r >= 2");
  if (n_tuple.size() != t.r - 2)
    throw std::invalid_argument("relation index must have r-2 elements");
  Combination base = n_tuple;
  base.n = t.n();
  base.validate();
  la::SparseMatrix residual(t.d, static_cast<int>(binomial_u64(t.n(), t.r)));
  for (int s = 1; s <= t.n(); ++s) {
    if (base.contains(s)) continue;
    const int q = insertion_sign(s, base).position;
    const bool negative = (s + q - 1) % 2 != 0;
    for (const auto& entry : build_equation(t, base.with(s)).entries)
      residual.add(entry.coordinate, static_cast<int>(entry.column), negative ? mpq_class(-entry.value) : entry.value);
  }
  return residual;
}

bool verify_relation(const TensorAssignment& t, const Combination& n_tuple) {
  return relation_residual(t, n_tuple).is_zero();
}

std::vector<std::pair<Combination, int>> column_dependence_witness(const Combination& x) {
  x.validate();
  const int k = x.size();  // r + 1
  const int r = k - 1;
  if (r < 1) throw std::invalid_argument("column_dependence_witness: need at least two indices");
  std::vector<std::pair<Combination, int>> out;
  out.reserve(k);
  // Facets from the one omitting x_{r+1} down to the one omitting x_1.
  for (int j = k; j >= 1; --j) {
    const int exponent = (r + 1 - j) + x[j - 1];
    out.emplace_back(x.without_position(j - 1), exponent % 2 == 0 ? 1 : -1);
  }
  return out;
}

std::vector<mpq_class> apply_column_combination(const SystemMatrix& m,
                                                const std::vector<std::pair<Combination, int>>& combo) {
  std::vector<mpq_class> out(m.rows());
  for (const auto& [subset, coeff] : combo) {
    const int col = m.col_index(subset);
    for (int i = 0; i < m.rows(); ++i) {
      const mpq_class v = m.matrix().get(i, col);
      if (sgn(v) != 0) out[i] += coeff * v;
    }
  }
  return out;
}

}  // namespace sdet
