#include "sdet/combinatorics.hpp"

#include <array>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sdet {

namespace {

constexpr int kTableSize = 128;
constexpr std::uint64_t kOverflow = std::numeric_limits<std::uint64_t>::max();

// Pascal triangle with saturating addition; kOverflow marks entries that
// do not fit in 64 bits.
const std::array<std::array<std::uint64_t, kTableSize>, kTableSize>& pascal() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kTableSize>, kTableSize> t{};
    for (int n = 0; n < kTableSize; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) {
        std::uint64_t a = t[n - 1][k - 1];
        std::uint64_t b = k <= n - 1 ? t[n - 1][k] : 0;
        if (a == kOverflow || b == kOverflow || a > kOverflow - 1 - b)
          t[n][k] = kOverflow;
        else
          t[n][k] = a + b;
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

Combination::Combination(std::vector<int> elems, int universe)
    : elements(std::move(elems)), n(universe) {
  validate();
}

bool Combination::contains(int v) const {
  for (int e : elements) {
    if (e == v) return true;
    if (e > v) return false;
  }
  return false;
}

void Combination::validate() const {
  if (n < 0) throw std::invalid_argument("combination: negative universe size");
  int prev = 0;
  for (int e : elements) {
    if (e <= prev || e > n)
      throw std::invalid_argument("combination: elements must be strictly increasing in 1.." +
                                  std::to_string(n) + ", got " + to_string());
    prev = e;
  }
}

Combination Combination::with(int v) const {
  Combination out;
  out.n = n;
  out.elements.reserve(elements.size() + 1);
  bool placed = false;
  for (int e : elements) {
    if (e == v) throw std::invalid_argument("combination: " + std::to_string(v) + " is already present");
    if (!placed && v < e) {
      out.elements.push_back(v);
      placed = true;
    }
    out.elements.push_back(e);
  }
  if (!placed) out.elements.push_back(v);
  return out;
}

Combination Combination::without_position(int pos) const {
  Combination out;
  out.n = n;
  out.elements.reserve(elements.size());
  for (int i = 0; i < size(); ++i)
    if (i != pos) out.elements.push_back(elements[i]);
  return out;
}

std::string Combination::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) os << ',';
    os << elements[i];
  }
  os << '}';
  return os.str();
}

mpz_class binomial(long n, long k) {
  if (n < 0 || k < 0) throw std::invalid_argument("binomial: negative argument");
  if (k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

std::uint64_t binomial_u64(long n, long k) {
  if (n < 0 || k < 0) throw std::invalid_argument("binomial: negative argument");
  if (k > n) return 0;
  if (n < kTableSize) {
    std::uint64_t v = pascal()[n][k];
    if (v == kOverflow) throw std::overflow_error("binomial does not fit in 64 bits");
    return v;
  }
  mpz_class b = binomial(n, k);
  if (!b.fits_ulong_p()) throw std::overflow_error("binomial does not fit in 64 bits");
  return b.get_ui();
}

std::uint64_t rank_combination(std::span<const int> elements, int n) {
  const int k = static_cast<int>(elements.size());
  std::uint64_t rank = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    const int c = elements[i];
    if (c <= prev || c > n)
      throw std::invalid_argument("rank_combination: invalid combination");
    // Subsets agreeing on the first i entries whose (i+1)-th entry is j < c.
    for (int j = prev + 1; j < c; ++j) rank += binomial_u64(n - j, k - i - 1);
    prev = c;
  }
  return rank;
}

std::uint64_t rank_combination(const Combination& c) {
  return rank_combination(std::span<const int>(c.elements), c.n);
}

Combination unrank_combination(std::uint64_t idx, int k, int n) {
  if (k < 0 || n < 0 || k > n)
    throw std::invalid_argument("unrank_combination: need 0 <= k <= n");
  if (idx >= binomial_u64(n, k))
    throw std::invalid_argument("unrank_combination: index out of range");
  Combination out;
  out.n = n;
  out.elements.reserve(k);
  int next = 1;
  for (int i = 0; i < k; ++i) {
    for (;; ++next) {
      const std::uint64_t block = binomial_u64(n - next, k - i - 1);
      if (idx < block) break;
      idx -= block;
    }
    out.elements.push_back(next++);
  }
  return out;
}

bool next_combination(std::vector<int>& elements, int n) {
  const int k = static_cast<int>(elements.size());
  int i = k - 1;
  while (i >= 0 && elements[i] == n - (k - 1 - i)) --i;
  if (i < 0) return false;
  ++elements[i];
  for (int j = i + 1; j < k; ++j) elements[j] = elements[j - 1] + 1;
  return true;
}

std::vector<Combination> all_combinations(int n, int k) {
  if (k < 0 || n < 0) throw std::invalid_argument("all_combinations: negative argument");
  std::vector<Combination> out;
  if (k > n) return out;
  out.reserve(binomial_u64(n, k));
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  do {
    Combination c;
    c.n = n;
    c.elements = cur;
    out.push_back(std::move(c));
  } while (next_combination(cur, n));
  return out;
}

InsertionSign insertion_sign(int s, const Combination& base) {
  if (s < 1 || (base.n > 0 && s > base.n))
    throw std::invalid_argument("insertion_sign: index out of range");
  int position = 1;
  for (int e : base.elements) {
    if (e == s) throw std::invalid_argument("insertion_sign: index already in base");
    if (e < s) ++position;
  }
  const int exponent = (s - 1) + (position - 1);
  return {position, exponent % 2 == 0 ? 1 : -1};
}

bool euler_identity_check(int r, int d) {
  if (r < 1 || d < 1) throw std::invalid_argument("euler_identity_check: need r, d >= 1");
  const long n = static_cast<long>(r) * d;
  mpq_class total = 0;
  for (int k = 0; k < r; ++k) {
    mpq_class term(binomial(n, k));
    total += k % 2 == 0 ? term : mpq_class(-term);
  }
  mpq_class last(binomial(n, r), mpz_class(d));
  last.canonicalize();
  total += r % 2 == 0 ? last : mpq_class(-last);
  return total == 0;
}

}  // namespace sdet
