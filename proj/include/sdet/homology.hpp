#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sdet/exactla.hpp"
#include "sdet/partition.hpp"

namespace sdet {

/// E_s(H): every s-subset contained in at least one hyperedge, in
/// dictionary order.
std::vector<Combination> skeleton_edges(const Hypergraph& h, int s);

/// Reduced cellular chain complex of X(H). Degree k (for -1 <= k <= r-1)
/// is generated by E_{k+1}(H); degree -1 holds the single augmentation
/// generator. boundary(k) maps degree k to degree k-1.
class ChainComplex {
 public:
  int r() const { return r_; }
  int top_degree() const { return r_ - 1; }

  const std::vector<Combination>& generators(int degree) const { return generators_.at(degree + 1); }
  std::size_t dimension(int degree) const;
  const la::SparseMatrix& boundary(int k) const { return boundaries_.at(k); }

  friend ChainComplex build_chain_complex(const Hypergraph& h);

 private:
  int r_ = 0;
  std::vector<std::vector<Combination>> generators_;  // index degree + 1
  std::vector<la::SparseMatrix> boundaries_;          // index k = 0..r-1
};

ChainComplex build_chain_complex(const Hypergraph& h);

/// Reduced Betti numbers b_{-1}, ..., b_{r-1}.
struct BettiVector {
  std::vector<long> values;  // values[k + 1] = b_k

  long operator[](int degree) const {
    const int i = degree + 1;
    return i >= 0 && i < static_cast<int>(values.size()) ? values[i] : 0;
  }
  bool all_zero() const;
  std::string to_string() const;

  friend bool operator==(const BettiVector&, const BettiVector&) = default;
};

BettiVector betti_numbers(const ChainComplex& c);
BettiVector betti_numbers(const Hypergraph& h);

/// Alternating count of generators, sum over -1 <= k <= r-1 of
/// (-1)^(k+1) * dim(degree k). Equals the same alternating sum of the
/// reduced Betti numbers.
long euler_characteristic(const Hypergraph& h);
long euler_characteristic(const BettiVector& b);

/// |E_k(H_i)| = C(rd, k) for every part and every k <= r-1.
bool is_prehomogeneous(const DPartition& p);
/// Pre-homogeneous and every part holds C(rd-1, r-1) hyperedges.
bool is_homogeneous(const DPartition& p);

/// Compares sum_i rank(top boundary of H_i) with the rank of the full
/// system matrix of omega_P. Throws PreconditionError unless P is
/// pre-homogeneous.
struct RankComparison {
  int boundary_rank = 0;
  int system_rank = 0;
  bool equal() const { return boundary_rank == system_rank; }
};
RankComparison rank_equality(const DPartition& p);
bool rank_equality_check(const DPartition& p);

struct SkeletonDeficit {
  int part;      // 1-based
  int level;     // k
  std::uint64_t have;
  std::uint64_t need;
};

struct ClassificationReport {
  int n = 0, r = 0, d = 0;
  mpq_class det;
  bool prehomogeneous = false;
  bool homogeneous = false;
  std::vector<std::size_t> part_sizes;
  std::vector<BettiVector> betti;            // per part
  std::vector<SkeletonDeficit> deficits;     // empty iff pre-homogeneous
  bool det_nonzero = false;                  // condition (1)
  bool all_betti_zero = false;               // condition (2), includes pre-homogeneity
  bool top_betti_zero = false;               // condition (3), includes pre-homogeneity
  bool consistent = false;                   // (1) <=> (2) <=> (3) and det != 0 => homogeneous
};

ClassificationReport classify_partition(const DPartition& p, const la::DetOptions& opts = {});

/// Lazily walks ordered d-partitions of K^r_n as label vectors in
/// lexicographic order (last hyperedge varies fastest). With
/// `homogeneous_only`, only assignments with equal part sizes.
class PartitionEnumerator {
 public:
  static constexpr std::uint64_t kDefaultCap = 1ULL << 21;

  /// Throws ResourceError when the number of partitions exceeds `cap`.
  PartitionEnumerator(int n, int r, int d, bool homogeneous_only, std::uint64_t cap = kDefaultCap);

  std::uint64_t total() const { return total_; }
  std::optional<DPartition> next();

 private:
  int n_, r_, d_;
  bool homogeneous_only_;
  std::uint64_t total_ = 0;
  bool started_ = false;
  bool done_ = false;
  std::vector<int> labels_;
};

std::vector<DPartition> enumerate_partitions(int n, int r, int d, bool homogeneous_only,
                                             std::uint64_t cap = PartitionEnumerator::kDefaultCap);

/// Uniform value in [0, bound) drawn from `rng` by rejection, so sequences
/// are reproducible across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Every hyperedge gets an independent uniform label.
DPartition random_partition(int n, int r, int d, std::mt19937_64& rng);
/// Uniform among label vectors with equal part sizes (C(n,r) must be a
/// multiple of d).
DPartition random_equal_partition(int n, int r, int d, std::mt19937_64& rng);

}  // namespace sdet
