#include "sdet/homology.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sdet/det_sr.hpp"
#include "sdet/errors.hpp"
#include "sdet/system.hpp"
#include "sdet/tensor.hpp"

namespace sdet {

std::vector<Combination> skeleton_edges(const Hypergraph& h, int s) {
  if (s < 1 || s > h.r()) throw std::invalid_argument("skeleton_edges: need 1 <= s <= r");
  std::vector<Combination> out;
  std::vector<int> pick(s);
  for (const auto& e : h.hyperedges()) {
    for (int i = 0; i < s; ++i) pick[i] = i + 1;
    do {
      Combination c;
      c.n = h.n();
      c.elements.reserve(s);
      for (int p : pick) c.elements.push_back(e[p - 1]);
      out.push_back(std::move(c));
    } while (next_combination(pick, h.r()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t ChainComplex::dimension(int degree) const {
  const int i = degree + 1;
  return i >= 0 && i < static_cast<int>(generators_.size()) ? generators_[i].size() : 0;
}

ChainComplex build_chain_complex(const Hypergraph& h) {
  ChainComplex c;
  c.r_ = h.r();
  c.generators_.resize(h.r() + 1);
  c.generators_[0].push_back(Combination({}, h.n()));
  for (int s = 1; s <= h.r(); ++s) c.generators_[s] = skeleton_edges(h, s);
  c.boundaries_.reserve(h.r());
  for (int k = 0; k < h.r(); ++k) {
    const auto& source = c.generators_[k + 1];  // k+1 vertices
    const auto& target = c.generators_[k];      // k vertices
    la::SparseMatrix m(static_cast<int>(target.size()), static_cast<int>(source.size()));
    for (std::size_t j = 0; j < source.size(); ++j) {
      for (int drop = 0; drop <= k; ++drop) {
        const Combination face = source[j].without_position(drop);
        auto it = std::lower_bound(target.begin(), target.end(), face);
        if (it == target.end() || *it != face)
          throw InternalError("chain complex: face " + face.to_string() + " missing from skeleton");
        m.set(static_cast<int>(it - target.begin()), static_cast<int>(j), drop % 2 == 0 ? 1 : -1);
      }
    }
    c.boundaries_.push_back(std::move(m));
  }
  return c;
}

bool BettiVector::all_zero() const {
  return std::all_of(values.begin(), values.end(), [](long v) { return v == 0; });
}

std::string BettiVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
  os << ')';
  return os.str();
}

BettiVector betti_numbers(const ChainComplex& c) {
  const int r = c.r();
  // rank[k] = rank of boundary(k); boundary(-1) and boundary(r) vanish.
  std::vector<long> rank(r + 1, 0);
  for (int k = 0; k < r; ++k) rank[k] = la::rank_exact(c.boundary(k));
  BettiVector b;
  b.values.resize(r + 1);
  for (int k = -1; k <= r - 1; ++k) {
    const long own = k >= 0 ? rank[k] : 0;
    const long above = k + 1 < r ? rank[k + 1] : 0;
    b.values[k + 1] = static_cast<long>(c.dimension(k)) - own - above;
  }
  return b;
}

BettiVector betti_numbers(const Hypergraph& h) { return betti_numbers(build_chain_complex(h)); }

long euler_characteristic(const Hypergraph& h) {
  long chi = 1;  // degree -1, weight (-1)^0
  for (int s = 1; s <= h.r(); ++s) {
    const long count = static_cast<long>(skeleton_edges(h, s).size());
    chi += s % 2 == 0 ? count : -count;
  }
  return chi;
}

long euler_characteristic(const BettiVector& b) {
  long chi = 0;
  for (std::size_t i = 0; i < b.values.size(); ++i) chi += i % 2 == 0 ? b.values[i] : -b.values[i];
  return chi;
}

namespace {

void require_rd(const DPartition& p) {
  if (p.n() != p.r() * p.d())
    throw std::invalid_argument("partition must be of K^r_{rd} (n = " + std::to_string(p.n()) +
                                ", r*d = " + std::to_string(p.r() * p.d()) + ")");
}

std::vector<SkeletonDeficit> skeleton_deficits(const DPartition& p) {
  std::vector<SkeletonDeficit> out;
  for (int i = 1; i <= p.d(); ++i) {
    const Hypergraph h = p.part_hypergraph(i);
    for (int k = 1; k <= p.r() - 1; ++k) {
      const std::uint64_t need = binomial_u64(p.n(), k);
      const std::uint64_t have = h.size() == 0 ? 0 : skeleton_edges(h, k).size();
      if (have != need) out.push_back({i, k, have, need});
    }
  }
  return out;
}

}  // namespace

bool is_prehomogeneous(const DPartition& p) {
  require_rd(p);
  return skeleton_deficits(p).empty();
}

bool is_homogeneous(const DPartition& p) {
  if (!is_prehomogeneous(p)) return false;
  const std::uint64_t per_part = binomial_u64(p.n() - 1, p.r() - 1);
  for (int i = 1; i <= p.d(); ++i)
    if (p.part(i).size() != per_part) return false;
  return true;
}

RankComparison rank_equality(const DPartition& p) {
  if (!is_prehomogeneous(p)) throw PreconditionError("rank_equality_check: partition is not pre-homogeneous");
  RankComparison out;
  for (int i = 1; i <= p.d(); ++i) {
    const ChainComplex c = build_chain_complex(p.part_hypergraph(i));
    out.boundary_rank += la::rank_exact(c.boundary(p.r() - 1));
  }
  out.system_rank = la::rank_exact(build_full_matrix(tensor_from_basis(partition_to_tensor(p))).matrix());
  return out;
}

bool rank_equality_check(const DPartition& p) { return rank_equality(p).equal(); }

ClassificationReport classify_partition(const DPartition& p, const la::DetOptions& opts) {
  require_rd(p);
  ClassificationReport rep;
  rep.n = p.n();
  rep.r = p.r();
  rep.d = p.d();
  rep.det = det_Sr(partition_to_tensor(p), opts);
  rep.deficits = skeleton_deficits(p);
  rep.prehomogeneous = rep.deficits.empty();
  const std::uint64_t per_part = binomial_u64(p.n() - 1, p.r() - 1);
  rep.homogeneous = rep.prehomogeneous;
  bool all_zero = true, top_zero = true;
  for (int i = 1; i <= p.d(); ++i) {
    rep.part_sizes.push_back(p.part(i).size());
    if (p.part(i).size() != per_part) rep.homogeneous = false;
    BettiVector b = betti_numbers(p.part_hypergraph(i));
    all_zero = all_zero && b.all_zero();
    top_zero = top_zero && b[p.r() - 1] == 0;
    rep.betti.push_back(std::move(b));
  }
  rep.det_nonzero = sgn(rep.det) != 0;
  rep.all_betti_zero = rep.prehomogeneous && all_zero;
  rep.top_betti_zero = rep.prehomogeneous && top_zero;
  rep.consistent = rep.det_nonzero == rep.all_betti_zero && rep.all_betti_zero == rep.top_betti_zero &&
                   (!rep.det_nonzero || rep.homogeneous);
  return rep;
}

PartitionEnumerator::PartitionEnumerator(int n, int r, int d, bool homogeneous_only, std::uint64_t cap)
    : n_(n), r_(r), d_(d), homogeneous_only_(homogeneous_only) {
  if (n < r || r < 1 || d < 1) throw std::invalid_argument("enumerate_partitions: need 1 <= r <= n, d >= 1");
  const std::uint64_t edges = binomial_u64(n, r);
  mpz_class count;
  if (!homogeneous_only) {
    mpz_ui_pow_ui(count.get_mpz_t(), static_cast<unsigned long>(d), edges);
  } else if (edges % d != 0) {
    count = 0;
  } else {
    // multinomial edges! / ((edges/d)!)^d
    count = 1;
    const std::uint64_t each = edges / d;
    std::uint64_t left = edges;
    for (int i = 0; i < d; ++i) {
      count *= binomial(static_cast<long>(left), static_cast<long>(each));
      left -= each;
    }
  }
  if (count > mpz_class(static_cast<unsigned long>(cap)))
    throw ResourceError("enumerate_partitions: " + count.get_str() + " partitions exceed the cap of " +
                        std::to_string(cap));
  total_ = count.get_ui();
  done_ = total_ == 0;
  labels_.resize(edges);
  if (homogeneous_only) {
    const std::uint64_t each = d ? edges / d : 0;
    for (std::uint64_t k = 0; k < edges; ++k) labels_[k] = static_cast<int>(k / std::max<std::uint64_t>(each, 1)) + 1;
  } else {
    std::fill(labels_.begin(), labels_.end(), 1);
  }
}

std::optional<DPartition> PartitionEnumerator::next() {
  if (done_) return std::nullopt;
  if (started_) {
    bool advanced;
    if (homogeneous_only_) {
      advanced = std::next_permutation(labels_.begin(), labels_.end());
    } else {
      advanced = false;
      for (std::size_t k = labels_.size(); k-- > 0;) {
        if (labels_[k] < d_) {
          ++labels_[k];
          advanced = true;
          break;
        }
        labels_[k] = 1;
      }
    }
    if (!advanced) {
      done_ = true;
      return std::nullopt;
    }
  }
  started_ = true;
  return DPartition::from_labels(n_, r_, d_, labels_);
}

std::vector<DPartition> enumerate_partitions(int n, int r, int d, bool homogeneous_only, std::uint64_t cap) {
  PartitionEnumerator e(n, r, d, homogeneous_only, cap);
  std::vector<DPartition> out;
  out.reserve(e.total());
  while (auto p = e.next()) out.push_back(std::move(*p));
  return out;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

DPartition random_partition(int n, int r, int d, std::mt19937_64& rng) {
  std::vector<int> labels(binomial_u64(n, r));
  for (auto& l : labels) l = static_cast<int>(uniform_below(rng, d)) + 1;
  return DPartition::from_labels(n, r, d, std::move(labels));
}

DPartition random_equal_partition(int n, int r, int d, std::mt19937_64& rng) {
  const std::uint64_t edges = binomial_u64(n, r);
  if (edges % d != 0) throw std::invalid_argument("random_equal_partition: C(n,r) is not divisible by d");
  std::vector<int> labels(edges);
  for (std::uint64_t k = 0; k < edges; ++k) labels[k] = static_cast<int>(k / (edges / d)) + 1;
  for (std::uint64_t k = edges; k > 1; --k) std::swap(labels[k - 1], labels[uniform_below(rng, k)]);
  return DPartition::from_labels(n, r, d, std::move(labels));
}

}  // namespace sdet
