#pragma once

#include <cstdint>

namespace sdet::la::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Montgomery arithmetic modulo an odd p < 2^62. Values are kept in
/// Montgomery form (x * 2^64 mod p) inside elimination loops.
class Montgomery {
 public:
  explicit Montgomery(u64 p) : p_(p) {
    u64 inv = p;  // Newton iteration for p^{-1} mod 2^64
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    neg_inv_ = ~inv + 1;
    const u128 r = (static_cast<u128>(1) << 64) % p;  // 2^64 mod p
    r2_ = static_cast<u64>((r * r) % p);
  }

  u64 modulus() const { return p_; }

  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * neg_inv_;
    const u64 u = static_cast<u64>((t + static_cast<u128>(m) * p_) >> 64);
    return u >= p_ ? u - p_ : u;
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 to(u64 a) const { return mul(a % p_, r2_); }
  u64 from(u64 a) const { return reduce(a); }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a ? p_ - a : 0; }

  /// Inverse of a Montgomery-form value, returned in Montgomery form.
  u64 inv(u64 a) const {
    const u64 x = from(a);
    // extended Euclid on plain residues
    __int128 t = 0, newt = 1;
    __int128 r = p_, newr = x;
    while (newr != 0) {
      __int128 q = r / newr;
      __int128 tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (t < 0) t += p_;
    return to(static_cast<u64>(t));
  }

 private:
  u64 p_;
  u64 neg_inv_;
  u64 r2_;
};

}  // namespace sdet::la::detail
