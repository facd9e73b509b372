#include "ff3/field.hpp"

#include <algorithm>

namespace ff3 {

bool is_prime_u32(u32 n) {
  if (n < 2) return false;
  for (u32 d = 2; u64(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u32 FieldCtx::pow(u32 a, u64 e) const {
  u64 base = a % q, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return u32(acc);
}

u32 FieldCtx::inv(u32 a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return pow(a, q - 2);
}

namespace {

std::vector<u32> prime_factors(u32 n) {
  std::vector<u32> ps;
  for (u32 d = 2; u64(d) * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

bool is_primitive_root(u32 g, u32 q, const std::vector<u32>& ps) {
  FieldCtx tmp;  // only pow() is needed; q alone suffices
  tmp.q = q;
  for (u32 p : ps)
    if (tmp.pow(g, (q - 1) / p) == 1) return false;
  return g % q != 0;
}

}  // namespace

u32 primitive_root(u32 q) {
  auto ps = prime_factors(q - 1);
  for (u32 g = 2; g < q; ++g)
    if (is_primitive_root(g, q, ps)) return g;
  throw std::domain_error("no primitive root found");
}

FieldCtx FieldCtx::make(u32 q, std::optional<u32> h_override) {
  if (!is_prime_u32(q) || q < 5 || q % 2 == 0 || q % 3 == 0 || q >= (1u << 16))
    throw std::domain_error("q must be a machine-word prime with gcd(q,6)=1, q >= 5");

  FieldCtx ctx;
  ctx.q = q;
  auto ps = prime_factors(q - 1);
  if (h_override) {
    if (!is_primitive_root(*h_override % q, q, ps))
      throw std::domain_error("h is not a primitive root mod q");
    ctx.h = *h_override % q;
  } else {
    ctx.h = primitive_root(q);
  }

  ctx.square_tab.assign(q, 0);
  for (u32 a = 1; a < q; ++a) ctx.square_tab[a] = (ctx.pow(a, (q - 1) / 2) == 1);

  ctx.S.clear();
  u32 v = 1;
  for (u32 i = 0; i <= (q - 3) / 2; ++i) {
    ctx.S.push_back(v);
    v = ctx.mul(v, ctx.h);
  }
  std::sort(ctx.S.begin(), ctx.S.end());
  ctx.in_S_tab.assign(q, 0);
  for (u32 s : ctx.S) ctx.in_S_tab[s] = 1;
  return ctx;
}

}  // namespace ff3
