#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "ff3/common.hpp"

namespace ff3 {

// Arithmetic context for the prime field F_q, q prime, gcd(q,6) = 1.
// Elements are canonical residues 0..q-1 in machine words.
//
// h is a primitive root mod q (smallest by default).  The half-system
// S = { h^i : 0 <= i <= (q-3)/2 } contains exactly one of a, -a for every
// nonzero a; it fixes sign conventions in the reduction theory.
struct FieldCtx {
  u32 q = 0;
  u32 h = 0;
  std::vector<u32> S;            // sorted ascending
  std::vector<std::uint8_t> square_tab;  // index a in 1..q-1: 1 iff a is a QR
  std::vector<std::uint8_t> in_S_tab;

  // Constant matrices (alpha,beta,gamma,delta) with nonzero determinant,
  // built on first use by the form reduction tie-breaks.
  mutable std::shared_ptr<const std::vector<std::array<u32, 4>>> gl2_cache;

  static FieldCtx make(u32 q, std::optional<u32> h_override = std::nullopt);

  u32 add(u32 a, u32 b) const { u32 s = a + b; return s >= q ? s - q : s; }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + q - b; }
  u32 neg(u32 a) const { return a == 0 ? 0 : q - a; }
  u32 mul(u32 a, u32 b) const { return u32((u64(a) * b) % q); }
  u32 pow(u32 a, u64 e) const;
  u32 inv(u32 a) const;
  u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }

  bool is_square(u32 a) const {
    FF3_ASSERT(a != 0 && a < q);
    return square_tab[a] != 0;
  }
  bool in_S(u32 a) const { return a < q && a != 0 && in_S_tab[a] != 0; }

  // Reduce an arbitrary signed value into canonical residues.
  u32 from_int(i64 v) const {
    i64 r = v % i64(q);
    return u32(r < 0 ? r + i64(q) : r);
  }
};

bool is_prime_u32(u32 n);
u32 primitive_root(u32 q);

}  // namespace ff3
