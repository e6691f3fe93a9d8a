#pragma once

#include <cstdint>
#include <vector>

#include "sdet/combinatorics.hpp"

namespace sdet {

/// An r-uniform hypergraph on vertices 1..n. Hyperedges are kept sorted in
/// dictionary order without duplicates.
class Hypergraph {
 public:
  Hypergraph(int n, int r, std::vector<Combination> hyperedges = {});

  /// K^r_n.
  static Hypergraph complete(int n, int r);

  int n() const { return n_; }
  int r() const { return r_; }
  const std::vector<Combination>& hyperedges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }

 private:
  int n_;
  int r_;
  std::vector<Combination> edges_;
};

/// An ordered d-partition of the hyperedges of K^r_n. Part indices are
/// 1-based in the public API.
class DPartition {
 public:
  /// Throws InvalidPartition if a hyperedge is missing, repeated, or
  /// malformed.
  DPartition(int n, int r, int d, std::vector<std::vector<Combination>> parts);

  /// `labels[rank]` is the 1-based part of the hyperedge with that
  /// dictionary rank among the r-subsets of 1..n.
  static DPartition from_labels(int n, int r, int d, std::vector<int> labels);

  int n() const { return n_; }
  int r() const { return r_; }
  int d() const { return d_; }

  const std::vector<Combination>& part(int i) const { return parts_.at(i - 1); }
  const std::vector<std::vector<Combination>>& parts() const { return parts_; }
  const std::vector<int>& labels() const { return labels_; }

  Hypergraph part_hypergraph(int i) const { return Hypergraph(n_, r_, part(i)); }

  friend bool operator==(const DPartition& a, const DPartition& b) {
    return a.n_ == b.n_ && a.r_ == b.r_ && a.d_ == b.d_ && a.labels_ == b.labels_;
  }

 private:
  DPartition() = default;
  void fill_parts_from_labels();

  int n_ = 0;
  int r_ = 0;
  int d_ = 0;
  std::vector<std::vector<Combination>> parts_;
  std::vector<int> labels_;
};

}  // namespace sdet
