#include "sdet/tensor.hpp"

#include <stdexcept>
#include <string>

#include "sdet/errors.hpp"

namespace sdet {

MatrixQ MatrixQ::identity(int d) {
  MatrixQ m(d);
  for (int i = 0; i < d; ++i) m(i, i) = 1;
  return m;
}

VectorQ MatrixQ::apply(const VectorQ& v) const {
  if (static_cast<int>(v.size()) != dim)
    throw std::invalid_argument("matrix-vector product: dimension mismatch");
  VectorQ out(dim);
  for (int i = 0; i < dim; ++i) {
    mpq_class acc = 0;
    for (int j = 0; j < dim; ++j)
      if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

MatrixQ operator*(const MatrixQ& a, const MatrixQ& b) {
  if (a.dim != b.dim) throw std::invalid_argument("matrix product: dimension mismatch");
  MatrixQ out(a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int k = 0; k < a.dim; ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (int j = 0; j < a.dim; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

mpq_class determinant(const MatrixQ& m) {
  MatrixQ a = m;
  const int n = a.dim;
  mpq_class det = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    while (piv < n && sgn(a(piv, k)) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      mpq_class f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

namespace {

void check_shape(int r, int d) {
  if (r < 1 || d < 1) throw std::invalid_argument("tensor: need r >= 1 and d >= 1");
}

}  // namespace

BasisAssignment::BasisAssignment(int r_, int d_, std::vector<int> labels_)
    : r(r_), d(d_), labels(std::move(labels_)) {
  check_shape(r, d);
  if (labels.size() != binomial_u64(static_cast<long>(r) * d, r))
    throw std::invalid_argument("basis assignment: expected C(rd,r) labels");
  for (int l : labels)
    if (l < 1 || l > d) throw std::invalid_argument("basis assignment: label out of range");
}

TensorAssignment::TensorAssignment(int r_, int d_, std::vector<VectorQ> entries_)
    : r(r_), d(d_), entries(std::move(entries_)) {
  check_shape(r, d);
  if (entries.size() != binomial_u64(static_cast<long>(r) * d, r))
    throw std::invalid_argument("tensor: expected C(rd,r) entries");
  for (const auto& v : entries)
    if (static_cast<int>(v.size()) != d)
      throw std::invalid_argument("tensor: every entry must have length d");
}

TensorAssignment::TensorAssignment(int r_, int d_) : r(r_), d(d_) {
  check_shape(r, d);
  entries.assign(binomial_u64(static_cast<long>(r) * d, r), VectorQ(d));
}

int witness_label(const Combination& c, int r) {
  long sum = 0;
  for (int v : c.elements) sum += v;
  const int t = static_cast<int>(sum % r);  // 0-based position
  return (c.elements[t] + r - 1) / r;
}

BasisAssignment generate_E(int r, int d) {
  if (r < 2) throw std::invalid_argument("generate_E: need r >= 2");
  if (d < 1) throw std::invalid_argument("generate_E: need d >= 1");
  const int n = r * d;
  BasisAssignment b;
  b.r = r;
  b.d = d;
  b.labels.reserve(binomial_u64(n, r));
  std::vector<int> cur(r);
  for (int i = 0; i < r; ++i) cur[i] = i + 1;
  Combination c;
  c.n = n;
  do {
    c.elements = cur;
    b.labels.push_back(witness_label(c, r));
  } while (next_combination(cur, n));
  return b;
}

BasisAssignment partition_to_tensor(const DPartition& p) {
  if (p.n() != p.r() * p.d())
    throw InvalidPartition("partition_to_tensor: partition must cover K^r_{rd}");
  return BasisAssignment(p.r(), p.d(), p.labels());
}

DPartition tensor_to_partition(const BasisAssignment& b) {
  return DPartition::from_labels(b.n(), b.r, b.d, b.labels);
}

TensorAssignment tensor_from_basis(const BasisAssignment& b) {
  TensorAssignment t(b.r, b.d);
  for (std::size_t k = 0; k < b.labels.size(); ++k) t.entries[k][b.labels[k] - 1] = 1;
  return t;
}

std::optional<Combination> detect_degenerate_simplex(const TensorAssignment& t) {
  const int n = t.n();
  const int k = t.r + 1;
  if (k > n) return std::nullopt;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  std::vector<int> facet(t.r);
  do {
    const VectorQ* first = nullptr;
    bool equal = true;
    for (int skip = 0; skip < k && equal; ++skip) {
      for (int i = 0, j = 0; i < k; ++i)
        if (i != skip) facet[j++] = cur[i];
      const VectorQ& v = t.entries[rank_combination(std::span<const int>(facet), n)];
      if (!first)
        first = &v;
      else
        equal = v == *first;
    }
    if (equal) return Combination(cur, n);
  } while (next_combination(cur, n));
  return std::nullopt;
}

TensorAssignment apply_transform(const MatrixQ& m, const TensorAssignment& t) {
  if (m.dim != t.d)
    throw std::invalid_argument("apply_transform: matrix is " + std::to_string(m.dim) + "x" +
                                std::to_string(m.dim) + " but d = " + std::to_string(t.d));
  TensorAssignment out(t.r, t.d);
  for (std::size_t k = 0; k < t.entries.size(); ++k) out.entries[k] = m.apply(t.entries[k]);
  return out;
}

}  // namespace sdet
