#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace sdet {

/// A k-subset of {1,...,n}, stored as a strictly increasing list.
/// Vertex labels are 1-based; ranks are 0-based.
struct Combination {
  std::vector<int> elements;
  int n = 0;

  Combination() = default;
  Combination(std::vector<int> elems, int universe);

  int size() const { return static_cast<int>(elements.size()); }
  int operator[](std::size_t i) const { return elements[i]; }
  bool contains(int v) const;

  /// Throws std::invalid_argument unless the elements are strictly
  /// increasing and inside 1..n.
  void validate() const;

  /// Copy with `v` inserted in sorted position (v must not be present).
  Combination with(int v) const;
  /// Copy with the element at 0-based position `pos` removed.
  Combination without_position(int pos) const;

  std::string to_string() const;

  friend bool operator==(const Combination&, const Combination&) = default;
  friend auto operator<=>(const Combination& a, const Combination& b) {
    return a.elements <=> b.elements;
  }
};

/// Exact C(n, k); zero when k > n. Negative arguments throw.
mpz_class binomial(long n, long k);

/// C(n, k) as a 64-bit value; throws std::overflow_error when it does not fit.
std::uint64_t binomial_u64(long n, long k);

/// Position of `c` in the dictionary-ordered list of all |c|-subsets of 1..n.
std::uint64_t rank_combination(const Combination& c);
std::uint64_t rank_combination(std::span<const int> elements, int n);

/// Inverse of rank_combination.
Combination unrank_combination(std::uint64_t idx, int k, int n);

/// Every k-subset of 1..n in dictionary order.
std::vector<Combination> all_combinations(int n, int k);

/// Advances `elements` (a k-subset of 1..n) to its dictionary successor.
/// Returns false (leaving the input unspecified) past the last subset.
bool next_combination(std::vector<int>& elements, int n);

struct InsertionSign {
  int position;  // 1-based slot s occupies after insertion
  int sign;      // (-1)^{(s-1)+(position-1)}
};

/// Where `s` lands when inserted into `base`, and the alternating sign that
/// goes with it.
InsertionSign insertion_sign(int s, const Combination& base);

/// Exact check of
///   sum_{k=0}^{r-1} (-1)^k C(rd,k) + ((-1)^r / d) C(rd,r) == 0.
bool euler_identity_check(int r, int d);

}  // namespace sdet
