#include <doctest.h>

#include <random>

#include "sdet/det_sr.hpp"
#include "sdet/errors.hpp"
#include "sdet/homology.hpp"
#include "sdet/tensor.hpp"
#include "sdet/verify.hpp"

using namespace sdet;

namespace {

// Block index a with i in {ra-(r-1), ..., ra}.
int block_of(int i, int r) { return (i + r - 1) / r; }

Combination comb(std::vector<int> e, int n) { return Combination(std::move(e), n); }

}  // namespace

TEST_CASE("generate_E worked examples") {
  CHECK(witness_label(comb({1, 2, 7, 14, 28}, 30), 5) == 2);
  CHECK(witness_label(comb({26, 27, 28, 29, 30}, 30), 5) == 6);
  CHECK(witness_label(comb({1, 2, 3}, 6), 3) == 1);
  const BasisAssignment e = generate_E(5, 6);
  CHECK(e.label(comb({1, 2, 7, 14, 28}, 30)) == 2);
  CHECK(e.label(comb({26, 27, 28, 29, 30}, 30)) == 6);
  CHECK_THROWS_AS(generate_E(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(generate_E(3, 0), std::invalid_argument);
}

TEST_CASE("generate_E labels satisfy the residue rule") {
  for (int r = 2; r <= 5; ++r)
    for (int d = 1; d <= 4; ++d) {
      const BasisAssignment e = generate_E(r, d);
      const auto subsets = all_combinations(r * d, r);
      REQUIRE(e.labels.size() == subsets.size());
      for (std::size_t k = 0; k < subsets.size(); ++k) {
        int sum = 0;
        for (int v : subsets[k].elements) sum += v;
        const int t = sum % r;  // t - 1 in 1-based terms
        CHECK(e.labels[k] == block_of(subsets[k][t], r));
      }
    }
}

TEST_CASE("r = 3 witness matches the case split on i + j + k mod 3") {
  for (int d = 2; d <= 5; ++d) {
    const BasisAssignment e = generate_E(3, d);
    for (const auto& c : all_combinations(3 * d, 3)) {
      const int a = block_of(c[0], 3), b = block_of(c[1], 3), cc = block_of(c[2], 3);
      const int res = (c[0] + c[1] + c[2]) % 3;
      CHECK(e.label(c) == (res == 0 ? a : res == 1 ? b : cc));
    }
  }
}

TEST_CASE("partition_to_tensor on K_4") {
  const int n = 4;
  const DPartition p(n, 2, 2,
                     {{comb({1, 2}, n), comb({3, 4}, n), comb({1, 3}, n), comb({2, 4}, n)},
                      {comb({1, 4}, n), comb({2, 3}, n)}});
  const BasisAssignment b = partition_to_tensor(p);
  CHECK(b.label(comb({1, 2}, n)) == 1);
  CHECK(b.label(comb({3, 4}, n)) == 1);
  CHECK(b.label(comb({1, 3}, n)) == 1);
  CHECK(b.label(comb({2, 4}, n)) == 1);
  CHECK(b.label(comb({1, 4}, n)) == 2);
  CHECK(b.label(comb({2, 3}, n)) == 2);
  CHECK(tensor_to_partition(b) == p);

  std::vector<int> ones(binomial_u64(6, 3), 1);
  const BasisAssignment constant = partition_to_tensor(DPartition::from_labels(6, 3, 2, ones));
  for (int l : constant.labels) CHECK(l == 1);
}

TEST_CASE("partition_to_tensor round trip on random partitions") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 1000; ++t) {
    const int r = 2 + static_cast<int>(uniform_below(rng, 2));
    const int d = 2 + static_cast<int>(uniform_below(rng, 2));
    const DPartition p = random_partition(r * d, r, d, rng);
    REQUIRE(tensor_to_partition(partition_to_tensor(p)) == p);
  }
}

TEST_CASE("partition_to_tensor needs n = rd") {
  std::vector<int> labels(binomial_u64(5, 2), 1);
  CHECK_THROWS_AS(partition_to_tensor(DPartition::from_labels(5, 2, 2, labels)), InvalidPartition);
}

TEST_CASE("tensor_from_basis gives unit vectors") {
  const TensorAssignment t = tensor_from_basis(generate_E(2, 3));
  const BasisAssignment b = generate_E(2, 3);
  for (std::size_t k = 0; k < t.entries.size(); ++k)
    for (int i = 0; i < 3; ++i) CHECK(t.entries[k][i] == (i + 1 == b.labels[k] ? 1 : 0));
}

TEST_CASE("detect_degenerate_simplex") {
  SUBCASE("planted r = 3 simplex") {
    // Pairwise distinct entries, then e_1 on the facets of {1,2,3,4}.
    TensorAssignment t(3, 2);
    for (std::size_t k = 0; k < t.entries.size(); ++k) t.entries[k] = {mpq_class(static_cast<long>(k) + 2), 1};
    plant_degenerate_simplex(t, comb({1, 2, 3, 4}, 6), {1, 0});
    const auto w = detect_degenerate_simplex(t);
    REQUIRE(w.has_value());
    CHECK(*w == comb({1, 2, 3, 4}, 6));
  }
  SUBCASE("the r = 3, d = 2 witness has none") {
    const TensorAssignment t = tensor_from_basis(generate_E(3, 2));
    CHECK_FALSE(detect_degenerate_simplex(t).has_value());
    // Independent scan over the 15 four-subsets.
    int equal = 0;
    for (const auto& x : all_combinations(6, 4)) {
      bool same = true;
      for (int j = 1; j < 4; ++j) same = same && t.at(x.without_position(j)) == t.at(x.without_position(0));
      equal += same;
    }
    CHECK(equal == 0);
  }
  SUBCASE("monochromatic triangle for r = 2") {
    std::vector<int> labels(binomial_u64(4, 2), 2);
    labels[rank_combination(comb({1, 2}, 4))] = 1;
    labels[rank_combination(comb({1, 4}, 4))] = 1;
    labels[rank_combination(comb({2, 4}, 4))] = 1;
    const TensorAssignment t = tensor_from_basis(BasisAssignment(2, 2, labels));
    const auto w = detect_degenerate_simplex(t);
    REQUIRE(w.has_value());
    // Part 2 is the star {13,23,34}, so the triangle 124 is the only witness.
    CHECK(*w == comb({1, 2, 4}, 4));
  }
}

TEST_CASE("apply_transform") {
  std::mt19937_64 rng(11);
  const TensorAssignment t = random_tensor(3, 2, rng);
  CHECK(apply_transform(MatrixQ::identity(2), t) == t);

  MatrixQ c = MatrixQ::identity(2);
  c(0, 0) = c(1, 1) = mpq_class(3, 2);
  const TensorAssignment scaled = apply_transform(c, t);
  for (std::size_t k = 0; k < t.entries.size(); ++k)
    for (int i = 0; i < 2; ++i) CHECK(scaled.entries[k][i] == mpq_class(3, 2) * t.entries[k][i]);

  const MatrixQ m1 = random_invertible_matrix(2, rng), m2 = random_invertible_matrix(2, rng);
  CHECK(apply_transform(m1 * m2, t) == apply_transform(m1, apply_transform(m2, t)));

  MatrixQ singular(2);
  singular(0, 0) = 1;
  singular(0, 1) = 2;
  singular(1, 0) = 2;
  singular(1, 1) = 4;
  CHECK(sgn(det_Sr(apply_transform(singular, tensor_from_basis(generate_E(3, 2))))) == 0);
  CHECK_THROWS_AS(apply_transform(MatrixQ::identity(3), t), std::invalid_argument);
}

TEST_CASE("small dense determinant matches the Leibniz formula") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + static_cast<int>(uniform_below(rng, 4));
    MatrixQ m(d);
    for (auto& x : m.data) x = mpq_class(static_cast<long>(uniform_below(rng, 9)) - 4, 1 + uniform_below(rng, 3));
    for (auto& x : m.data) x.canonicalize();
    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) perm[i] = i;
    mpq_class expect = 0;
    do {
      int inversions = 0;
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) inversions += perm[i] > perm[j];
      mpq_class term = inversions % 2 ? -1 : 1;
      for (int i = 0; i < d; ++i) term *= m(i, perm[i]);
      expect += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(determinant(m) == expect);
  }
}
