#include "sdet/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sdet/errors.hpp"

namespace sdet {

Hypergraph::Hypergraph(int n, int r, std::vector<Combination> hyperedges)
    : n_(n), r_(r), edges_(std::move(hyperedges)) {
  if (n < 0 || r < 1) throw std::invalid_argument("hypergraph: need n >= 0 and r >= 1");
  for (auto& e : edges_) {
    e.n = n;
    e.validate();
    if (e.size() != r)
      throw std::invalid_argument("hypergraph: hyperedge " + e.to_string() + " does not have " +
                                  std::to_string(r) + " vertices");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

Hypergraph Hypergraph::complete(int n, int r) { return Hypergraph(n, r, all_combinations(n, r)); }

DPartition::DPartition(int n, int r, int d, std::vector<std::vector<Combination>> parts)
    : n_(n), r_(r), d_(d) {
  if (n < r || r < 1 || d < 1) throw std::invalid_argument("partition: need 1 <= r <= n, d >= 1");
  if (static_cast<int>(parts.size()) != d)
    throw InvalidPartition("partition: expected " + std::to_string(d) + " parts, got " +
                           std::to_string(parts.size()));
  labels_.assign(binomial_u64(n, r), 0);
  for (int i = 0; i < d; ++i) {
    for (auto& e : parts[i]) {
      e.n = n;
      try {
        e.validate();
      } catch (const std::invalid_argument& ex) {
        throw InvalidPartition(ex.what());
      }
      if (e.size() != r) throw InvalidPartition("partition: hyperedge " + e.to_string() + " has wrong size");
      auto& slot = labels_[rank_combination(e)];
      if (slot != 0)
        throw InvalidPartition("partition: hyperedge " + e.to_string() + " assigned more than once");
      slot = i + 1;
    }
  }
  for (std::size_t k = 0; k < labels_.size(); ++k)
    if (labels_[k] == 0)
      throw InvalidPartition("partition: hyperedge " +
                             unrank_combination(k, r, n).to_string() + " is in no part");
  fill_parts_from_labels();
}

DPartition DPartition::from_labels(int n, int r, int d, std::vector<int> labels) {
  if (n < r || r < 1 || d < 1) throw std::invalid_argument("partition: need 1 <= r <= n, d >= 1");
  if (labels.size() != binomial_u64(n, r))
    throw InvalidPartition("partition: label vector has wrong length");
  for (int l : labels)
    if (l < 1 || l > d) throw InvalidPartition("partition: label out of range 1.." + std::to_string(d));
  DPartition p;
  p.n_ = n;
  p.r_ = r;
  p.d_ = d;
  p.labels_ = std::move(labels);
  p.fill_parts_from_labels();
  return p;
}

void DPartition::fill_parts_from_labels() {
  parts_.assign(d_, {});
  std::vector<int> cur(r_);
  for (int i = 0; i < r_; ++i) cur[i] = i + 1;
  std::size_t k = 0;
  do {
    Combination c;
    c.n = n_;
    c.elements = cur;
    parts_[labels_[k++] - 1].push_back(std::move(c));
  } while (next_combination(cur, n_));
}

}  // namespace sdet
