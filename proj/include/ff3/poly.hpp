#pragma once

#include <string>
#include <vector>

#include "ff3/field.hpp"

namespace ff3 {

// Dense polynomial over F_q[t]: c[i] is the coefficient of t^i, canonical
// residues, no trailing zero limbs.  The zero polynomial has an empty vector
// and degree kNegInfDeg.
struct Poly {
  std::vector<u32> c;

  bool zero() const { return c.empty(); }
  int deg() const { return c.empty() ? kNegInfDeg : int(c.size()) - 1; }
  u32 lc() const { return c.empty() ? 0 : c.back(); }  // sgn(f); 0 for f = 0
  u32 coeff(int i) const {
    return (i >= 0 && i < int(c.size())) ? c[size_t(i)] : 0;
  }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool operator==(const Poly&) const = default;

  static Poly zero_poly() { return {}; }
  static Poly constant(u32 v) {
    Poly f;
    if (v) f.c = {v};
    return f;
  }
  // v * t^k
  static Poly term(u32 v, int k) {
    Poly f;
    if (v) {
      f.c.assign(size_t(k) + 1, 0);
      f.c.back() = v;
    }
    return f;
  }
};

Poly padd(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly psub(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly pneg(const FieldCtx& ctx, const Poly& a);
Poly pmul(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly pscale(const FieldCtx& ctx, u32 s, const Poly& a);
// quotient/remainder with deg(r) < deg(b); b != 0
void pdivrem(const FieldCtx& ctx, const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly prem(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly pquo(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly pmonic(const FieldCtx& ctx, const Poly& a);
// monic gcd; gcd(0,0) = 0
Poly pgcd(const FieldCtx& ctx, Poly a, Poly b);
Poly pderiv(const FieldCtx& ctx, const Poly& a);
u32 peval(const FieldCtx& ctx, const Poly& a, u32 x);

// true iff no irreducible square divides f; f = 0 is a domain error.
// A vanishing derivative of a nonconstant f means f is a q-th power.
bool is_squarefree(const FieldCtx& ctx, const Poly& f);

enum class DiscKind { imaginary, unusual, real };

const char* kind_name(DiscKind k);

// deg odd -> imaginary; deg even -> unusual iff sgn is a non-square.
DiscKind classify(const FieldCtx& ctx, const Poly& f);

// genus of F_q(t)(sqrt(D)): (deg-1)/2 for odd deg, deg/2 - 1 for even.
int genus_of_disc(const Poly& D);

// Total order: lower degree first (zero smallest), then coefficients
// compared from the leading term down.
bool poly_lex_less(const Poly& a, const Poly& b);

// Text form: comma-separated residues, constant term first ("1,0,0,1").
Poly parse_poly(u32 q, const std::string& text);
std::string poly_to_text(const Poly& f);
// Display form ("t^3+1"); output only.
std::string poly_to_pretty(const Poly& f);

}  // namespace ff3
