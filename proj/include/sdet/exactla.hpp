#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace sdet::la {

/// Sparse exact rational matrix with row-major storage. Zero entries are
/// never stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const;

  /// Adds `v` to entry (i, j); the entry is dropped if it becomes zero.
  void add(int i, int j, const mpq_class& v);
  void set(int i, int j, const mpq_class& v);
  mpq_class get(int i, int j) const;

  const std::map<int, mpq_class>& row(int i) const { return data_[i]; }

  SparseMatrix transpose() const;
  bool is_zero() const { return nnz() == 0; }

  /// Column `j` as a dense vector.
  std::vector<mpq_class> column(int j) const;

  static SparseMatrix identity(int n);

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::map<int, mpq_class>> data_;
};

/// Rows scaled to integers. `row_scale[i]` is the positive factor row i
/// was multiplied by, so det(original) = det(integer) / prod(row_scale).
struct ScaledIntegerMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, mpz_class>>> row_entries;
  std::vector<mpz_class> row_scale;

  mpz_class total_scale() const;
};

ScaledIntegerMatrix to_integer(const SparseMatrix& m);

/// Fraction-free (Bareiss) determinant. Throws std::invalid_argument if
/// the matrix is not square.
mpq_class det_bareiss(const SparseMatrix& m);

struct MultimodularOptions {
  int threads = 1;
};

/// Summary of the last multi-modular run on this thread; mostly for
/// reporting.
struct MultimodularStats {
  int primes_used = 0;
  double hadamard_log2 = 0;
};

/// Determinant via residues modulo primes just below 2^62, recombined by
/// Chinese remaindering. The prime count is chosen from the Hadamard bound
/// and one extra prime cross-checks the reconstruction.
mpq_class det_multimodular(const SparseMatrix& m, const MultimodularOptions& opts = {},
                           MultimodularStats* stats = nullptr);

/// Determinant of the integer matrix modulo a single prime p < 2^62.
std::uint64_t det_mod_prime(const ScaledIntegerMatrix& m, std::uint64_t p);

/// Upper bound on log2 |det| for an integer matrix (Hadamard, best of the
/// row and column forms).
double hadamard_log2(const ScaledIntegerMatrix& m);

/// Rank over Q.
int rank_exact(const SparseMatrix& m);

enum class Backend { Bareiss, Multimodular, Auto };

struct DetOptions {
  Backend backend = Backend::Auto;
  int auto_threshold = 400;  // rows; multimodular at or above this size
  int threads = 1;
};

mpq_class determinant(const SparseMatrix& m, const DetOptions& opts = {});
/// Backend that `determinant` would use for a matrix with `rows` rows.
Backend resolve_backend(int rows, const DetOptions& opts);

/// Coordinate text dump: "rows cols nnz" then "row col value" (1-based).
void write_coordinate(std::ostream& os, const SparseMatrix& m);
SparseMatrix read_coordinate(std::istream& is);

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

}  // namespace sdet::la
