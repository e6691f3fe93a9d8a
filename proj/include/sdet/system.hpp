#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sdet/combinatorics.hpp"
#include "sdet/exactla.hpp"
#include "sdet/tensor.hpp"

namespace sdet {

/// (m_1 < ... < m_{r-1}) labelling one vector equation.
using EquationIndex = Combination;

/// One scalar entry of an equation block: column = dictionary rank of the
/// r-subset, coordinate = 0-based basis index.
struct BlockEntry {
  std::uint64_t column;
  int coordinate;
  mpq_class value;
};

/// The d scalar rows of one vector equation, as a sparse list.
struct EquationBlock {
  EquationIndex index;
  std::vector<BlockEntry> entries;
};

/// For each s outside `e`, the column of e ∪ {s} receives sign * v where
/// (position, sign) = insertion_sign(s, e) and v is the tensor entry.
EquationBlock build_equation(const TensorAssignment& t, const EquationIndex& e);

/// The square matrix of the truncated system: one block of d rows per
/// (r-1)-subset of 1..rd-1 in dictionary order, coordinates 1..d inside a
/// block; columns are the r-subsets of 1..rd in dictionary order.
class SystemMatrix {
 public:
  int r() const { return r_; }
  int d() const { return d_; }
  int rows() const { return matrix_.rows(); }
  int cols() const { return matrix_.cols(); }
  const la::SparseMatrix& matrix() const { return matrix_; }

  /// Row of coordinate (1-based) inside the block of `e`.
  int row_index(const EquationIndex& e, int coordinate) const;
  int col_index(const Combination& c) const;

  friend SystemMatrix build_matrix(const TensorAssignment& t);
  friend SystemMatrix build_full_matrix(const TensorAssignment& t);

 private:
  SystemMatrix(int r, int d, la::SparseMatrix m, bool full) : r_(r), d_(d), full_(full), matrix_(std::move(m)) {}
  int r_;
  int d_;
  bool full_;
  la::SparseMatrix matrix_;
};

/// Square matrix of the truncated system (equations with max index < rd).
SystemMatrix build_matrix(const TensorAssignment& t);

/// The untruncated system: every (r-1)-subset of 1..rd, d * C(rd, r-1) rows.
SystemMatrix build_full_matrix(const TensorAssignment& t);

/// Evaluates the signed sum of full-system blocks that the relation indexed
/// by the (r-2)-subset `n_tuple` prescribes, and reports whether it is the
/// zero block.
bool verify_relation(const TensorAssignment& t, const Combination& n_tuple);

/// The signed combination itself (row = coordinate, column = r-subset rank).
la::SparseMatrix relation_residual(const TensorAssignment& t, const Combination& n_tuple);

/// Facet columns of the (r+1)-subset x together with the alternating
/// coefficients that cancel when all facets carry the same vector.
std::vector<std::pair<Combination, int>> column_dependence_witness(const Combination& x);

/// Applies a witness to a built matrix: sum of coefficient * column.
std::vector<mpq_class> apply_column_combination(const SystemMatrix& m,
                                                const std::vector<std::pair<Combination, int>>& combo);

}  // namespace sdet
