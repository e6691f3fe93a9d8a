#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sdet/exactla.hpp"
#include "sdet/partition.hpp"
#include "sdet/tensor.hpp"

namespace sdet {

/// Entries p/q with |p| <= num_bound and 1 <= q <= den_bound.
TensorAssignment random_tensor(int r, int d, std::mt19937_64& rng, int num_bound = 5, int den_bound = 4);

/// Integer d x d matrix with entries in [-bound, bound] and det != 0.
MatrixQ random_invertible_matrix(int d, std::mt19937_64& rng, int bound = 3);

/// Overwrites every facet of the (r+1)-subset `x` with one shared vector.
void plant_degenerate_simplex(TensorAssignment& t, const Combination& x, const VectorQ& v);

/// Every part of a partition of K_n (r = 2) is a spanning tree: cycle-free
/// by union-find and touching all n vertices.
bool all_parts_spanning_trees(const DPartition& p);

}  // namespace sdet

namespace sdet::verify {

struct SuiteOptions {
  std::uint64_t seed = 20240607;
  int trials = 0;  // 0 picks the suite default
  la::DetOptions det;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  long checks = 0;
  long failures = 0;
  std::vector<std::string> messages;                       // first few failures
  std::vector<std::pair<std::string, std::string>> facts;  // counts worth reporting

  bool passed() const { return failures == 0; }
};

/// vanishing, sl-invariance, relations, rank-equality, theorem-r2d2,
/// theorem-r3, backend-agreement, euler, multilinear.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts = {});

}  // namespace sdet::verify
