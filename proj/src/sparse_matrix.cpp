#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sdet/errors.hpp"
#include "sdet/exactla.hpp"

namespace sdet::la {

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix: negative dimension");
}

std::size_t SparseMatrix::nnz() const {
  std::size_t total = 0;
  for (const auto& r : data_) total += r.size();
  return total;
}

void SparseMatrix::add(int i, int j, const mpq_class& v) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw std::out_of_range("matrix: index out of range");
  if (sgn(v) == 0) return;
  auto [it, inserted] = data_[i].try_emplace(j, v);
  if (!inserted) {
    it->second += v;
    if (sgn(it->second) == 0) data_[i].erase(it);
  }
}

void SparseMatrix::set(int i, int j, const mpq_class& v) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw std::out_of_range("matrix: index out of range");
  if (sgn(v) == 0)
    data_[i].erase(j);
  else
    data_[i][j] = v;
}

mpq_class SparseMatrix::get(int i, int j) const {
  auto it = data_[i].find(j);
  return it == data_[i].end() ? mpq_class(0) : it->second;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) t.data_[j].emplace(i, v);
  return t;
}

std::vector<mpq_class> SparseMatrix::column(int j) const {
  std::vector<mpq_class> out(rows_);
  for (int i = 0; i < rows_; ++i) out[i] = get(i, j);
  return out;
}

SparseMatrix SparseMatrix::identity(int n) {
  SparseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

mpz_class ScaledIntegerMatrix::total_scale() const {
  mpz_class s = 1;
  for (const auto& f : row_scale) s *= f;
  return s;
}

ScaledIntegerMatrix to_integer(const SparseMatrix& m) {
  ScaledIntegerMatrix out;
  out.rows = m.rows();
  out.cols = m.cols();
  out.row_entries.resize(m.rows());
  out.row_scale.assign(m.rows(), 1);
  for (int i = 0; i < m.rows(); ++i) {
    mpz_class scale = 1;
    for (const auto& [j, v] : m.row(i)) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
    auto& row = out.row_entries[i];
    row.reserve(m.row(i).size());
    for (const auto& [j, v] : m.row(i)) {
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
      row.emplace_back(j, q * v.get_num());
    }
    out.row_scale[i] = scale;
  }
  return out;
}

Backend resolve_backend(int rows, const DetOptions& opts) {
  if (opts.backend != Backend::Auto) return opts.backend;
  return rows >= opts.auto_threshold ? Backend::Multimodular : Backend::Bareiss;
}

mpq_class determinant(const SparseMatrix& m, const DetOptions& opts) {
  if (resolve_backend(m.rows(), opts) == Backend::Multimodular)
    return det_multimodular(m, MultimodularOptions{opts.threads});
  return det_bareiss(m);
}

void write_coordinate(std::ostream& os, const SparseMatrix& m) {
  os << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (int i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) os << i + 1 << ' ' << j + 1 << ' ' << v.get_str() << '\n';
}

SparseMatrix read_coordinate(std::istream& is) {
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError(lineno, "missing header 'rows cols nnz'");
  std::istringstream hs(line);
  long rows = -1, cols = -1, nnz = -1;
  if (!(hs >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0)
    throw ParseError(lineno, "malformed header, expected 'rows cols nnz'");
  SparseMatrix m(static_cast<int>(rows), static_cast<int>(cols));
  for (long k = 0; k < nnz; ++k) {
    if (!next_line()) throw ParseError(lineno, "expected " + std::to_string(nnz) + " entries");
    std::istringstream ls(line);
    long i = 0, j = 0;
    std::string value;
    if (!(ls >> i >> j >> value)) throw ParseError(lineno, "malformed entry");
    if (i < 1 || i > rows || j < 1 || j > cols) throw ParseError(lineno, "entry index out of range");
    mpq_class q;
    if (q.set_str(value, 10) != 0 || sgn(q.get_den()) == 0) throw ParseError(lineno, "bad rational '" + value + "'");
    q.canonicalize();
    m.add(static_cast<int>(i - 1), static_cast<int>(j - 1), q);
  }
  return m;
}

}  // namespace sdet::la
