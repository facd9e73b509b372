#include "ff3/poly.hpp"

#include <algorithm>
#include <sstream>

namespace ff3 {

Poly padd(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = ctx.add(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0);
  r.trim();
  return r;
}

Poly psub(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = ctx.sub(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0);
  r.trim();
  return r;
}

Poly pneg(const FieldCtx& ctx, const Poly& a) {
  Poly r = a;
  for (auto& v : r.c) v = ctx.neg(v);
  return r;
}

Poly pmul(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  if (a.zero() || b.zero()) return {};
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t k = 0; k < r.c.size(); ++k) {
    u64 acc = 0;  // terms < 2^32, at most ~2^6 of them: no overflow
    size_t lo = k >= b.c.size() - 1 ? k - (b.c.size() - 1) : 0;
    size_t hi = std::min(k, a.c.size() - 1);
    for (size_t i = lo; i <= hi; ++i) acc += u64(a.c[i]) * b.c[k - i];
    r.c[k] = u32(acc % ctx.q);
  }
  r.trim();
  return r;
}

Poly pscale(const FieldCtx& ctx, u32 s, const Poly& a) {
  if (s == 0) return {};
  Poly r = a;
  for (auto& v : r.c) v = ctx.mul(s, v);
  r.trim();
  return r;
}

void pdivrem(const FieldCtx& ctx, const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.zero()) throw std::domain_error("polynomial division by zero");
  r = a;
  q = {};
  if (a.deg() < b.deg()) return;
  q.c.assign(size_t(a.deg() - b.deg()) + 1, 0);
  u32 binv = ctx.inv(b.lc());
  for (int k = a.deg() - b.deg(); k >= 0; --k) {
    u32 coef = ctx.mul(r.coeff(k + b.deg()), binv);
    q.c[size_t(k)] = coef;
    if (coef == 0) continue;
    for (int i = 0; i <= b.deg(); ++i)
      r.c[size_t(k + i)] = ctx.sub(r.c[size_t(k + i)], ctx.mul(coef, b.c[size_t(i)]));
  }
  q.trim();
  r.trim();
}

Poly prem(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  Poly q, r;
  pdivrem(ctx, a, b, q, r);
  return r;
}

Poly pquo(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  Poly q, r;
  pdivrem(ctx, a, b, q, r);
  return q;
}

Poly pmonic(const FieldCtx& ctx, const Poly& a) {
  if (a.zero() || a.lc() == 1) return a;
  return pscale(ctx, ctx.inv(a.lc()), a);
}

Poly pgcd(const FieldCtx& ctx, Poly a, Poly b) {
  while (!b.zero()) {
    Poly r = prem(ctx, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(ctx, a);
}

Poly pderiv(const FieldCtx& ctx, const Poly& a) {
  Poly r;
  if (a.deg() < 1) return r;
  r.c.assign(size_t(a.deg()), 0);
  for (int i = 1; i <= a.deg(); ++i)
    r.c[size_t(i - 1)] = ctx.mul(u32(i % ctx.q), a.c[size_t(i)]);
  r.trim();
  return r;
}

u32 peval(const FieldCtx& ctx, const Poly& a, u32 x) {
  u32 acc = 0;
  for (int i = a.deg(); i >= 0; --i) acc = ctx.add(ctx.mul(acc, x), a.c[size_t(i)]);
  return acc;
}

bool is_squarefree(const FieldCtx& ctx, const Poly& f) {
  if (f.zero()) throw std::domain_error("squarefree test on zero polynomial");
  if (f.deg() == 0) return true;
  Poly d = pderiv(ctx, f);
  if (d.zero()) return false;  // q-th power
  return pgcd(ctx, f, d).deg() == 0;
}

const char* kind_name(DiscKind k) {
  switch (k) {
    case DiscKind::imaginary: return "imaginary";
    case DiscKind::unusual: return "unusual";
    case DiscKind::real: return "real";
  }
  return "?";
}

DiscKind classify(const FieldCtx& ctx, const Poly& f) {
  if (f.zero()) throw std::domain_error("classify on zero polynomial");
  if (f.deg() % 2 != 0) return DiscKind::imaginary;
  return ctx.is_square(f.lc()) ? DiscKind::real : DiscKind::unusual;
}

int genus_of_disc(const Poly& D) {
  if (D.deg() < 1) throw std::domain_error("genus needs a nonconstant discriminant");
  return D.deg() % 2 ? (D.deg() - 1) / 2 : D.deg() / 2 - 1;
}

bool poly_lex_less(const Poly& a, const Poly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  for (int i = a.deg(); i >= 0; --i)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  return false;
}

Poly parse_poly(u32 q, const std::string& text) {
  Poly f;
  if (text.empty()) throw std::invalid_argument("empty polynomial literal");
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                  : comma - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad coefficient '" + tok + "'");
    u64 v = std::stoull(tok);
    if (v >= q) throw std::invalid_argument("coefficient " + tok + " not reduced mod q");
    f.c.push_back(u32(v));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  f.trim();
  return f;
}

std::string poly_to_text(const Poly& f) {
  if (f.zero()) return "0";
  std::string out;
  for (size_t i = 0; i < f.c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(f.c[i]);
  }
  return out;
}

std::string poly_to_pretty(const Poly& f) {
  if (f.zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = f.deg(); i >= 0; --i) {
    u32 v = f.coeff(i);
    if (v == 0) continue;
    if (!first) out << "+";
    if (i == 0 || v != 1) out << v;
    if (i == 0) {
    } else if (v != 1) {
      out << "*" << (i == 1 ? "t" : "t^" + std::to_string(i));
    } else {
      out << (i == 1 ? "t" : "t^" + std::to_string(i));
    }
    first = false;
  }
  return out.str();
}

}  // namespace ff3
