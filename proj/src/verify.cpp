#include "sdet/verify.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "sdet/det_sr.hpp"
#include "sdet/homology.hpp"
#include "sdet/system.hpp"

namespace sdet {

TensorAssignment random_tensor(int r, int d, std::mt19937_64& rng, int num_bound, int den_bound) {
  TensorAssignment t(r, d);
  for (auto& v : t.entries)
    for (auto& c : v) {
      const long p = static_cast<long>(uniform_below(rng, 2 * num_bound + 1)) - num_bound;
      const long q = static_cast<long>(uniform_below(rng, den_bound)) + 1;
      c = mpq_class(p, q);
      c.canonicalize();
    }
  return t;
}

MatrixQ random_invertible_matrix(int d, std::mt19937_64& rng, int bound) {
  for (;;) {
    MatrixQ m(d);
    for (auto& x : m.data) x = static_cast<long>(uniform_below(rng, 2 * bound + 1)) - bound;
    if (sgn(determinant(m)) != 0) return m;
  }
}

void plant_degenerate_simplex(TensorAssignment& t, const Combination& x, const VectorQ& v) {
  if (x.size() != t.r + 1) throw std::invalid_argument("plant_degenerate_simplex: need an (r+1)-subset");
  for (int j = 0; j < x.size(); ++j) t.at(x.without_position(j)) = v;
}

bool all_parts_spanning_trees(const DPartition& p) {
  if (p.r() != 2) throw std::invalid_argument("all_parts_spanning_trees: graphs only (r = 2)");
  for (int i = 1; i <= p.d(); ++i) {
    std::vector<int> parent(p.n() + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    int merges = 0;
    for (const auto& e : p.part(i)) {
      const int a = find(e[0]), b = find(e[1]);
      if (a == b) return false;
      parent[a] = b;
      ++merges;
    }
    if (merges != p.n() - 1) return false;
  }
  return true;
}

}  // namespace sdet

namespace sdet::verify {

namespace {

constexpr std::size_t kMaxMessages = 10;

struct Recorder {
  SuiteResult& out;

  void check(bool ok, const std::string& what) {
    ++out.checks;
    if (ok) return;
    ++out.failures;
    if (out.messages.size() < kMaxMessages) out.messages.push_back(what);
  }
  void fact(const std::string& key, const std::string& value) { out.facts.emplace_back(key, value); }
};

std::string shape(int r, int d) { return "(r,d)=(" + std::to_string(r) + "," + std::to_string(d) + ")"; }

int trials_or(const SuiteOptions& o, int fallback) { return o.trials > 0 ? o.trials : fallback; }

Combination random_subset(int k, int n, std::mt19937_64& rng) {
  return unrank_combination(uniform_below(rng, binomial_u64(n, k)), k, n);
}

VectorQ random_nonzero_vector(int d, std::mt19937_64& rng) {
  for (;;) {
    VectorQ v(d);
    bool nonzero = false;
    for (auto& c : v) {
      c = mpq_class(static_cast<long>(uniform_below(rng, 11)) - 5, static_cast<long>(uniform_below(rng, 4)) + 1);
      c.canonicalize();
      nonzero = nonzero || sgn(c) != 0;
    }
    if (nonzero) return v;
  }
}

void suite_vanishing(const SuiteOptions& o, std::mt19937_64& rng, Recorder& rec) {
  const int trials = trials_or(o, 100);
  for (auto [r, d] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
    for (int t = 0; t < trials; ++t) {
      TensorAssignment tensor = random_tensor(r, d, rng);
      const Combination x = random_subset(r + 1, r * d, rng);
      plant_degenerate_simplex(tensor, x, random_nonzero_vector(d, rng));
      const std::string tag = shape(r, d) + " trial " + std::to_string(t) + " simplex " + x.to_string();
      rec.check(sgn(det_Sr(tensor, o.det)) == 0, tag + ": determinant is not zero");
      rec.check(detect_degenerate_simplex(tensor).has_value(), tag + ": degenerate simplex not detected");
      const auto column = apply_column_combination(build_matrix(tensor), column_dependence_witness(x));
      bool zero = true;
      for (const auto& v : column) zero = zero && sgn(v) == 0;
      rec.check(zero, tag + ": column witness does not vanish");
    }
  }
}

void suite_sl_invariance(const SuiteOptions& o, std::mt19937_64& rng, Recorder& rec) {
  const int trials = trials_or(o, 50);
  for (auto [r, d] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
    const unsigned long power = binomial_u64(r * d - 1, r - 1);
    for (int t = 0; t < trials; ++t) {
      const TensorAssignment tensor = random_tensor(r, d, rng);
      const MatrixQ m = random_invertible_matrix(d, rng);
      const mpq_class dm = determinant(m);
      mpq_class scale;
      mpz_pow_ui(scale.get_num_mpz_t(), dm.get_num_mpz_t(), power);
      mpz_pow_ui(scale.get_den_mpz_t(), dm.get_den_mpz_t(), power);
      scale.canonicalize();
      const mpq_class lhs = det_Sr(apply_transform(m, tensor), o.det);
      const mpq_class rhs = scale * det_Sr(tensor, o.det);
      rec.check(lhs == rhs, shape(r, d) + " trial " + std::to_string(t) + ": " + lhs.get_str() + " != " + rhs.get_str());
    }
  }
}

void suite_relations(const SuiteOptions& o, std::mt19937_64& rng, Recorder& rec) {
  const int trials = trials_or(o, 100);
  for (auto [r, d] : {std::pair{2, 2}, {3, 2}, {3, 3}, {4, 2}}) {
    const auto tuples = all_combinations(r * d, r - 2);
    for (int t = 0; t < trials; ++t) {
      const TensorAssignment tensor = random_tensor(r, d, rng);
      for (const auto& n_tuple : tuples)
        rec.check(verify_relation(tensor, n_tuple),
                  shape(r, d) + " trial " + std::to_string(t) + ": relation " + n_tuple.to_string() + " is not zero");
    }
  }
}

void suite_rank_equality(const SuiteOptions& o, std::mt19937_64& rng, Recorder& rec) {
  const int trials = trials_or(o, 200);
  long drawn = 0;
  for (int t = 0; t < trials; ++t) {
    DPartition p = random_partition(6, 3, 2, rng);
    ++drawn;
    while (!is_prehomogeneous(p)) {
      p = random_partition(6, 3, 2, rng);
      ++drawn;
    }
    const RankComparison c = rank_equality(p);
    rec.check(c.equal(), "sample " + std::to_string(t) + ": boundary rank " + std::to_string(c.boundary_rank) +
                             " != system rank " + std::to_string(c.system_rank));
  }
  const RankComparison c = rank_equality(tensor_to_partition(generate_E(3, 2)));
  rec.check(c.equal(), "witness partition (3,2): ranks differ");
  rec.fact("partitions drawn", std::to_string(drawn));
  rec.fact("witness rank", std::to_string(c.system_rank));
}

void suite_theorem_r2d2(const SuiteOptions& o, std::mt19937_64&, Recorder& rec) {
  long nonzero = 0, trees = 0, total = 0;
  PartitionEnumerator e(4, 2, 2, false);
  while (auto p = e.next()) {
    ++total;
    const ClassificationReport rep = classify_partition(*p, o.det);
    const bool oracle = all_parts_spanning_trees(*p);
    nonzero += rep.det_nonzero;
    trees += oracle;
    std::string labels;
    for (int l : p->labels()) labels += std::to_string(l);
    rec.check(rep.det_nonzero == oracle, "partition " + labels + ": det " + rep.det.get_str() +
                                             " but spanning-tree oracle says " + (oracle ? "yes" : "no"));
    rec.check(rep.consistent, "partition " + labels + ": classification conditions disagree");
  }
  rec.fact("partitions", std::to_string(total));
  rec.fact("nonzero det", std::to_string(nonzero));
  rec.fact("spanning-tree pairs", std::to_string(trees));
}

void suite_theorem_r3(const SuiteOptions& o, std::mt19937_64& rng, Recorder& rec) {
  const int trials = trials_or(o, 10000);
  long nonzero = 0, homogeneous = 0, prehomogeneous = 0;
  auto one = [&](const DPartition& p, const std::string& tag) {
    const ClassificationReport rep = classify_partition(p, o.det);
    nonzero += rep.det_nonzero;
    homogeneous += rep.homogeneous;
    prehomogeneous += rep.prehomogeneous;
    rec.check(rep.consistent, tag + ": det " + rep.det.get_str() + ", conditions disagree");
  };
  for (int t = 0; t < trials; ++t) one(random_partition(6, 3, 2, rng), "uniform sample " + std::to_string(t));
  for (int t = 0; t < trials; ++t) one(random_equal_partition(6, 3, 2, rng), "equal-size sample " + std::to_string(t));
  rec.fact("partitions", std::to_string(2L * trials));
  rec.fact("nonzero det", std::to_string(nonzero));
  rec.fact("pre-homogeneous", std::to_string(prehomogeneous));
  rec.fact("homogeneous", std::to_string(homogeneous));
}

la::SparseMatrix random_sparse_integer(int n, bool force_singular, std::mt19937_64& rng) {
  la::SparseMatrix m(n, n);
  const std::uint64_t per_row = std::min<std::uint64_t>(n, 4);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, static_cast<long>(uniform_below(rng, 7)) - 3);
    for (std::uint64_t k = 0; k < per_row; ++k)
      m.set(i, static_cast<int>(uniform_below(rng, n)), static_cast<long>(uniform_below(rng, 7)) - 3);
  }
  if (force_singular && n > 1) {
    // Last row becomes a combination of two others.
    const int a = static_cast<int>(uniform_below(rng, n - 1));
    const int b = static_cast<int>(uniform_below(rng, n - 1));
    const long ca = static_cast<long>(uniform_below(rng, 5)) - 2;
    const long cb = static_cast<long>(uniform_below(rng, 5)) - 2;
    for (int j = 0; j < n; ++j) m.set(n - 1, j, ca * m.get(a, j) + cb * m.get(b, j));
  } else if (force_singular) {
    m.set(0, 0, 0);
  }
  return m;
}

void suite_backend_agreement(const SuiteOptions& o, std::mt19937_64& rng, Recorder& rec) {
  const int trials = trials_or(o, 500);
  long singular = 0;
  for (int t = 0; t < trials; ++t) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 200));
    const la::SparseMatrix m = random_sparse_integer(n, t % 5 == 0, rng);
    const mpq_class a = la::det_bareiss(m);
    const mpq_class b = la::det_multimodular(m, {o.det.threads});
    singular += sgn(a) == 0;
    rec.check(a == b, "matrix " + std::to_string(t) + " (" + std::to_string(n) + "x" + std::to_string(n) +
                          "): bareiss " + a.get_str() + " != multimodular " + b.get_str());
  }
  rec.fact("matrices", std::to_string(trials));
  rec.fact("singular", std::to_string(singular));
}

void suite_euler(const SuiteOptions& o, std::mt19937_64& rng, Recorder& rec) {
  for (int r = 1; r <= 12; ++r)
    for (int d = 1; d <= 12; ++d)
      rec.check(euler_identity_check(r, d), "identity fails at " + shape(r, d));
  const int trials = trials_or(o, 50);
  for (int t = 0; t < trials; ++t) {
    const int r = 2 + static_cast<int>(uniform_below(rng, 2));
    const int n = r + 1 + static_cast<int>(uniform_below(rng, 4));
    std::vector<Combination> edges;
    for (const auto& c : all_combinations(n, r))
      if (uniform_below(rng, 2)) edges.push_back(c);
    const Hypergraph h(n, r, edges);
    const long from_cells = euler_characteristic(h);
    const long from_betti = euler_characteristic(betti_numbers(h));
    rec.check(from_cells == from_betti, "hypergraph " + std::to_string(t) + ": cell count " +
                                            std::to_string(from_cells) + " != Betti sum " + std::to_string(from_betti));
  }
}

// Sum over every basis assignment of (product of selected coordinates) times
// the determinant of that basis tensor.
mpq_class multilinear_expansion(const TensorAssignment& t, const std::map<std::vector<int>, mpq_class>& basis_dets) {
  mpq_class total = 0;
  for (const auto& [labels, det] : basis_dets) {
    if (sgn(det) == 0) continue;
    mpq_class term = det;
    for (std::size_t k = 0; k < labels.size() && sgn(term) != 0; ++k) term *= t.entries[k][labels[k] - 1];
    total += term;
  }
  return total;
}

void suite_multilinear(const SuiteOptions& o, std::mt19937_64& rng, Recorder& rec) {
  const int r = 2, d = 2;
  const std::size_t slots = binomial_u64(r * d, r);
  std::map<std::vector<int>, mpq_class> basis_dets;
  std::vector<int> labels(slots, 1);
  for (;;) {
    basis_dets[labels] = det_Sr(BasisAssignment(r, d, labels), o.det);
    std::size_t k = slots;
    while (k > 0 && labels[k - 1] == d) labels[--k] = 1;
    if (k == 0) break;
    ++labels[k - 1];
  }
  long nonzero_basis = 0;
  for (const auto& [l, v] : basis_dets) nonzero_basis += sgn(v) != 0;
  const int trials = trials_or(o, 20);
  for (int t = 0; t < trials; ++t) {
    const TensorAssignment tensor = random_tensor(r, d, rng);
    const mpq_class direct = det_Sr(tensor, o.det);
    const mpq_class expanded = multilinear_expansion(tensor, basis_dets);
    rec.check(direct == expanded,
              "tensor " + std::to_string(t) + ": det " + direct.get_str() + " != expansion " + expanded.get_str());
    // Column linearity in one random slot.
    const std::size_t slot = uniform_below(rng, slots);
    const VectorQ u = random_nonzero_vector(d, rng), w = random_nonzero_vector(d, rng);
    const mpq_class alpha(static_cast<long>(uniform_below(rng, 9)) - 4), beta(static_cast<long>(uniform_below(rng, 9)) - 4);
    TensorAssignment tu = tensor, tw = tensor, mix = tensor;
    tu.entries[slot] = u;
    tw.entries[slot] = w;
    for (int k = 0; k < d; ++k) mix.entries[slot][k] = alpha * u[k] + beta * w[k];
    const mpq_class lhs = det_Sr(mix, o.det);
    const mpq_class rhs = alpha * det_Sr(tu, o.det) + beta * det_Sr(tw, o.det);
    rec.check(lhs == rhs, "tensor " + std::to_string(t) + ": slot " + std::to_string(slot) + " is not linear");
  }
  rec.fact("basis assignments", std::to_string(basis_dets.size()));
  rec.fact("nonzero basis determinants", std::to_string(nonzero_basis));
}

using SuiteFn = void (*)(const SuiteOptions&, std::mt19937_64&, Recorder&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"vanishing", suite_vanishing},
      {"sl-invariance", suite_sl_invariance},
      {"relations", suite_relations},
      {"rank-equality", suite_rank_equality},
      {"theorem-r2d2", suite_theorem_r2d2},
      {"theorem-r3", suite_theorem_r3},
      {"backend-agreement", suite_backend_agreement},
      {"euler", suite_euler},
      {"multilinear", suite_multilinear},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  for (const auto& [suite, fn] : registry()) {
    if (suite != name) continue;
    SuiteResult out;
    out.suite = name;
    out.seed = opts.seed;
    std::mt19937_64 rng(opts.seed);
    Recorder rec{out};
    fn(opts, rng, rec);
    return out;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace sdet::verify
