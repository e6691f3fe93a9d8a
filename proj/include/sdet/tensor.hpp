#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "sdet/combinatorics.hpp"
#include "sdet/partition.hpp"

namespace sdet {

/// Coordinates of a vector of V_d in the fixed basis e_1..e_d.
using VectorQ = std::vector<mpq_class>;

/// Dense d x d rational matrix, row-major.
struct MatrixQ {
  int dim = 0;
  std::vector<mpq_class> data;

  explicit MatrixQ(int d = 0) : dim(d), data(static_cast<std::size_t>(d) * d) {}
  static MatrixQ identity(int d);

  mpq_class& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * dim + j]; }
  const mpq_class& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * dim + j]; }

  VectorQ apply(const VectorQ& v) const;
  friend MatrixQ operator*(const MatrixQ& a, const MatrixQ& b);
};

/// Labels every r-subset of {1..rd} (indexed by dictionary rank) with a
/// basis index 1..d.
struct BasisAssignment {
  int r = 0;
  int d = 0;
  std::vector<int> labels;

  BasisAssignment() = default;
  BasisAssignment(int r_, int d_, std::vector<int> labels_);

  int n() const { return r * d; }
  int label(const Combination& c) const { return labels[rank_combination(c)]; }

  friend bool operator==(const BasisAssignment&, const BasisAssignment&) = default;
};

/// One vector of V_d per r-subset of {1..rd}, indexed by dictionary rank.
struct TensorAssignment {
  int r = 0;
  int d = 0;
  std::vector<VectorQ> entries;

  TensorAssignment() = default;
  TensorAssignment(int r_, int d_, std::vector<VectorQ> entries_);
  /// All-zero tensor.
  TensorAssignment(int r_, int d_);

  int n() const { return r * d; }
  const VectorQ& at(const Combination& c) const { return entries[rank_combination(c)]; }
  VectorQ& at(const Combination& c) { return entries[rank_combination(c)]; }

  friend bool operator==(const TensorAssignment&, const TensorAssignment&) = default;
};

/// The canonical witness E^(r)_d: the subset i_1<...<i_r gets a_t where
/// i_t lies in block S_{a_t} = {r*a-(r-1),...,r*a} and t-1 = sum(i) mod r.
BasisAssignment generate_E(int r, int d);

/// Basis label for one r-subset under generate_E.
int witness_label(const Combination& c, int r);

/// omega_P: every hyperedge is labelled with the part containing it.
/// The partition must cover K^r_n with n = r*d.
BasisAssignment partition_to_tensor(const DPartition& p);
DPartition tensor_to_partition(const BasisAssignment& b);

/// Embeds each label i as the unit vector e_i.
TensorAssignment tensor_from_basis(const BasisAssignment& b);

/// Some (r+1)-subset whose r facets all carry equal vectors, found by a
/// full scan in dictionary order (so the first witness is returned).
std::optional<Combination> detect_degenerate_simplex(const TensorAssignment& t);

/// Replaces every entry v by m*v.
TensorAssignment apply_transform(const MatrixQ& m, const TensorAssignment& t);

/// Exact determinant of a small dense rational matrix (Gaussian elimination
/// over Q). Used for det(M) in the equivariance law.
mpq_class determinant(const MatrixQ& m);

}  // namespace sdet
