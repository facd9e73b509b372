#include "ff3/forms.hpp"

#include <mutex>

namespace ff3 {

Mat2 Mat2::constants(u32 a, u32 b, u32 c, u32 d) {
  return {Poly::constant(a), Poly::constant(b), Poly::constant(c),
          Poly::constant(d)};
}

Poly mat_det(const FieldCtx& ctx, const Mat2& M) {
  return psub(ctx, pmul(ctx, M.alpha, M.delta), pmul(ctx, M.beta, M.gamma));
}

Poly disc_quad(const FieldCtx& ctx, const QuadForm& F) {
  Poly q2 = pmul(ctx, F.Q, F.Q);
  Poly pr = pmul(ctx, F.P, F.R);
  return psub(ctx, q2, pscale(ctx, ctx.from_int(4), pr));
}

Poly disc_cubic(const FieldCtx& ctx, const CubicForm& f) {
  Poly abcd = pmul(ctx, pmul(ctx, f.a, f.b), pmul(ctx, f.c, f.d));
  Poly bc = pmul(ctx, f.b, f.c);
  Poly ad = pmul(ctx, f.a, f.d);
  Poly ac3 = pmul(ctx, f.a, pmul(ctx, pmul(ctx, f.c, f.c), f.c));
  Poly b3d = pmul(ctx, pmul(ctx, pmul(ctx, f.b, f.b), f.b), f.d);
  Poly r = pscale(ctx, ctx.from_int(18), abcd);
  r = padd(ctx, r, pmul(ctx, bc, bc));
  r = psub(ctx, r, pscale(ctx, ctx.from_int(4), ac3));
  r = psub(ctx, r, pscale(ctx, ctx.from_int(4), b3d));
  r = psub(ctx, r, pscale(ctx, ctx.from_int(27), pmul(ctx, ad, ad)));
  return r;
}

QuadForm hessian(const FieldCtx& ctx, const CubicForm& f) {
  Poly P = psub(ctx, pmul(ctx, f.b, f.b),
                pscale(ctx, ctx.from_int(3), pmul(ctx, f.a, f.c)));
  Poly Q = psub(ctx, pmul(ctx, f.b, f.c),
                pscale(ctx, ctx.from_int(9), pmul(ctx, f.a, f.d)));
  Poly R = psub(ctx, pmul(ctx, f.c, f.c),
                pscale(ctx, ctx.from_int(3), pmul(ctx, f.b, f.d)));
  return {P, Q, R};
}

namespace {

void check_unit_det(const FieldCtx& ctx, const Mat2& M) {
  if (mat_det(ctx, M).deg() != 0)
    throw std::domain_error("matrix determinant must be a nonzero constant");
}

// Product of binary forms given as coefficient vectors: v[k] multiplies
// x^(n-k) y^k for a degree-n form.
std::vector<Poly> form_mul(const FieldCtx& ctx, const std::vector<Poly>& u,
                           const std::vector<Poly>& v) {
  std::vector<Poly> w(u.size() + v.size() - 1);
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      w[i + j] = padd(ctx, w[i + j], pmul(ctx, u[i], v[j]));
  return w;
}

}  // namespace

QuadForm act(const FieldCtx& ctx, const QuadForm& F, const Mat2& M) {
  check_unit_det(ctx, M);
  std::vector<Poly> X = {M.alpha, M.beta};
  std::vector<Poly> Y = {M.gamma, M.delta};
  auto X2 = form_mul(ctx, X, X);
  auto XY = form_mul(ctx, X, Y);
  auto Y2 = form_mul(ctx, Y, Y);
  QuadForm out;
  Poly* dst[3] = {&out.P, &out.Q, &out.R};
  for (int k = 0; k < 3; ++k)
    *dst[k] = padd(ctx,
                   padd(ctx, pmul(ctx, F.P, X2[size_t(k)]),
                        pmul(ctx, F.Q, XY[size_t(k)])),
                   pmul(ctx, F.R, Y2[size_t(k)]));
  return out;
}

CubicForm act(const FieldCtx& ctx, const CubicForm& f, const Mat2& M) {
  check_unit_det(ctx, M);
  std::vector<Poly> X = {M.alpha, M.beta};
  std::vector<Poly> Y = {M.gamma, M.delta};
  auto X2 = form_mul(ctx, X, X);
  auto X3 = form_mul(ctx, X2, X);
  auto X2Y = form_mul(ctx, X2, Y);
  auto Y2 = form_mul(ctx, Y, Y);
  auto XY2 = form_mul(ctx, X, Y2);
  auto Y3 = form_mul(ctx, Y2, Y);
  CubicForm out;
  Poly* dst[4] = {&out.a, &out.b, &out.c, &out.d};
  for (int k = 0; k < 4; ++k)
    *dst[k] = padd(ctx,
                   padd(ctx, pmul(ctx, f.a, X3[size_t(k)]),
                        pmul(ctx, f.b, X2Y[size_t(k)])),
                   padd(ctx, pmul(ctx, f.c, XY2[size_t(k)]),
                        pmul(ctx, f.d, Y3[size_t(k)])));
  return out;
}

CubicForm act_const(const FieldCtx& ctx, const CubicForm& f,
                    const std::array<u32, 4>& m) {
  const u32 al = m[0], be = m[1], ga = m[2], de = m[3];
  auto comb = [&](u32 wa, u32 wb, u32 wc, u32 wd) {
    Poly r = pscale(ctx, wa, f.a);
    r = padd(ctx, r, pscale(ctx, wb, f.b));
    r = padd(ctx, r, pscale(ctx, wc, f.c));
    r = padd(ctx, r, pscale(ctx, wd, f.d));
    return r;
  };
  const u32 two = 2 % ctx.q, three = 3 % ctx.q;
  const u32 al2 = ctx.mul(al, al), be2 = ctx.mul(be, be);
  const u32 ga2 = ctx.mul(ga, ga), de2 = ctx.mul(de, de);
  CubicForm out;
  out.a = comb(ctx.mul(al2, al), ctx.mul(al2, ga), ctx.mul(al, ga2),
               ctx.mul(ga2, ga));
  out.b = comb(ctx.mul(three, ctx.mul(al2, be)),
               ctx.add(ctx.mul(al2, de), ctx.mul(two, ctx.mul(al, ctx.mul(be, ga)))),
               ctx.add(ctx.mul(be, ga2), ctx.mul(two, ctx.mul(al, ctx.mul(ga, de)))),
               ctx.mul(three, ctx.mul(ga2, de)));
  out.c = comb(ctx.mul(three, ctx.mul(al, be2)),
               ctx.add(ctx.mul(be2, ga), ctx.mul(two, ctx.mul(al, ctx.mul(be, de)))),
               ctx.add(ctx.mul(al, de2), ctx.mul(two, ctx.mul(be, ctx.mul(ga, de)))),
               ctx.mul(three, ctx.mul(ga, de2)));
  out.d = comb(ctx.mul(be2, be), ctx.mul(be2, de), ctx.mul(be, de2),
               ctx.mul(de2, de));
  return out;
}

QuadForm act_const(const FieldCtx& ctx, const QuadForm& F,
                   const std::array<u32, 4>& m) {
  const u32 al = m[0], be = m[1], ga = m[2], de = m[3];
  auto comb = [&](u32 wp, u32 wq, u32 wr) {
    Poly r = pscale(ctx, wp, F.P);
    r = padd(ctx, r, pscale(ctx, wq, F.Q));
    r = padd(ctx, r, pscale(ctx, wr, F.R));
    return r;
  };
  const u32 two = 2 % ctx.q;
  QuadForm out;
  out.P = comb(ctx.mul(al, al), ctx.mul(al, ga), ctx.mul(ga, ga));
  out.Q = comb(ctx.mul(two, ctx.mul(al, be)),
               ctx.add(ctx.mul(al, de), ctx.mul(be, ga)),
               ctx.mul(two, ctx.mul(ga, de)));
  out.R = comb(ctx.mul(be, be), ctx.mul(be, de), ctx.mul(de, de));
  return out;
}

bool is_primitive(const FieldCtx& ctx, const CubicForm& f) {
  Poly g = pgcd(ctx, pgcd(ctx, f.a, f.b), pgcd(ctx, f.c, f.d));
  if (g.zero()) throw std::domain_error("primitivity of the zero form");
  return g.deg() == 0;
}

bool is_irreducible_cubic(const FieldCtx& ctx, const CubicForm& f) {
  if (f.a.zero())
    throw std::domain_error("irreducibility test requires a nonzero leading coefficient");
  if (f.d.zero()) return false;  // y divides f
  // f has a linear factor over F_q[t] iff the monic resolvent
  // g(z) = z^3 + b z^2 + (ac) z + (a^2 d) has a root in F_q[t]:
  // z = a x clears the leading coefficient, and monicity makes any
  // root in F_q(t) integral.
  const Poly& b = f.b;
  Poly ac = pmul(ctx, f.a, f.c);
  Poly a2d = pmul(ctx, pmul(ctx, f.a, f.a), f.d);
  auto eval_g = [&](const Poly& w) {
    Poly w2 = pmul(ctx, w, w);
    Poly v = pmul(ctx, w2, w);
    v = padd(ctx, v, pmul(ctx, b, w2));
    v = padd(ctx, v, pmul(ctx, ac, w));
    return padd(ctx, v, a2d);
  };
  // 3 deg w <= max(deg b + 2 deg w, deg ac + deg w, deg a2d) bounds any root.
  int B = (a2d.deg() + 2) / 3;
  if (!b.zero()) B = std::max(B, b.deg());
  if (!ac.zero()) B = std::max(B, (ac.deg() + 1) / 2);
  const int npts = B + 1;
  if (u32(npts) <= ctx.q) {
    // Root values of the specialized monic cubic at t = 0..B confine any
    // polynomial root; interpolation through each value combination gives
    // every candidate, verified exactly.
    std::vector<std::vector<u32>> roots(static_cast<size_t>(npts));
    for (int j = 0; j < npts; ++j) {
      const u32 x = u32(j);
      const u32 bj = peval(ctx, b, x), cj = peval(ctx, ac, x),
                dj = peval(ctx, a2d, x);
      for (u32 w = 0; w < ctx.q; ++w) {
        u32 w2 = ctx.mul(w, w);
        u32 v = ctx.add(ctx.mul(w2, w),
                        ctx.add(ctx.mul(bj, w2), ctx.add(ctx.mul(cj, w), dj)));
        if (v == 0) roots[size_t(j)].push_back(w);
      }
      if (roots[size_t(j)].empty()) return true;
    }
    std::vector<Poly> basis(static_cast<size_t>(npts));
    for (int j = 0; j < npts; ++j) {
      Poly num = Poly::constant(1);
      u32 den = 1;
      for (int i = 0; i < npts; ++i) {
        if (i == j) continue;
        Poly lin;
        lin.c = {ctx.neg(u32(i)), 1};
        num = pmul(ctx, num, lin);
        den = ctx.mul(den, ctx.sub(u32(j), u32(i)));
      }
      basis[size_t(j)] = pscale(ctx, ctx.inv(den), num);
    }
    std::vector<size_t> idx(size_t(npts), 0);
    while (true) {
      Poly w;
      for (int j = 0; j < npts; ++j)
        w = padd(ctx, w,
                 pscale(ctx, roots[size_t(j)][idx[size_t(j)]], basis[size_t(j)]));
      if (eval_g(w).zero()) return false;
      int j = 0;
      while (j < npts && ++idx[size_t(j)] == roots[size_t(j)].size()) {
        idx[size_t(j)] = 0;
        ++j;
      }
      if (j == npts) break;
    }
    return true;
  }
  // Not enough field points to interpolate: try every w with deg w <= B.
  std::vector<u32> w_coeffs(size_t(npts), 0);
  while (true) {
    Poly w;
    w.c = w_coeffs;
    w.trim();
    if (eval_g(w).zero()) return false;
    int j = 0;
    while (j < npts && ++w_coeffs[size_t(j)] == ctx.q) {
      w_coeffs[size_t(j)] = 0;
      ++j;
    }
    if (j == npts) return true;
  }
}

namespace {

// Definition clauses (a) and (b); |u| comparisons are degree comparisons
// with the zero sentinel (|0| = 0 < |nonzero|).
bool quad_ab(const FieldCtx& ctx, const QuadForm& F) {
  if (!(F.Q.deg() < F.P.deg())) return false;
  if (!F.Q.zero() && !ctx.in_S(F.Q.lc())) return false;
  if (F.P.deg() < F.R.deg()) return F.P.lc() == 1 || F.P.lc() == ctx.h;
  if (F.P.deg() == F.R.deg()) return F.P.lc() == 1;
  return false;
}

void check_reducible_kind(const FieldCtx& ctx, const Poly& disc) {
  if (disc.deg() < 1)
    throw std::domain_error("reduction test needs a nonconstant discriminant");
  if (classify(ctx, disc) == DiscKind::real)
    throw std::domain_error("reduction test undefined for real discriminants");
}

// Discriminants carry the normalization sgn = 1 (square class) or h
// (nonsquare class); only the representative with normalized discriminant
// in each scaling family is reduced.  This is what makes the reduced form
// unique in its class: the sign clauses alone leave the (q-1)/2-fold
// freedom of S untouched.
bool normalized_disc(const FieldCtx& ctx, const Poly& disc) {
  return disc.lc() == 1 || disc.lc() == ctx.h;
}

// Candidate images in the tie-break must share the (normalized)
// discriminant, i.e. come from matrices of determinant +-1 for the plain
// quadratic action.
bool unit_square_det(const FieldCtx& ctx, const std::array<u32, 4>& m) {
  u32 det = ctx.sub(ctx.mul(m[0], m[3]), ctx.mul(m[1], m[2]));
  return det == 1 || det == ctx.q - 1;
}

int cmp_poly(const Poly& a, const Poly& b) {
  if (poly_lex_less(a, b)) return -1;
  if (poly_lex_less(b, a)) return 1;
  return 0;
}

}  // namespace

int lex_compare(const QuadForm& f, const QuadForm& g) {
  if (int c = cmp_poly(f.P, g.P)) return c;
  if (int c = cmp_poly(f.Q, g.Q)) return c;
  return cmp_poly(f.R, g.R);
}

int lex_compare(const CubicForm& f, const CubicForm& g) {
  if (int c = cmp_poly(f.a, g.a)) return c;
  if (int c = cmp_poly(f.b, g.b)) return c;
  if (int c = cmp_poly(f.c, g.c)) return c;
  return cmp_poly(f.d, g.d);
}

const std::vector<std::array<u32, 4>>& ensure_gl2(const FieldCtx& ctx) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!ctx.gl2_cache) {
    auto list = std::make_shared<std::vector<std::array<u32, 4>>>();
    const u32 q = ctx.q;
    list->reserve(size_t(q) * q * q * q);
    for (u32 al = 0; al < q; ++al)
      for (u32 be = 0; be < q; ++be)
        for (u32 ga = 0; ga < q; ++ga)
          for (u32 de = 0; de < q; ++de)
            if (ctx.sub(ctx.mul(al, de), ctx.mul(be, ga)) != 0)
              list->push_back({al, be, ga, de});
    ctx.gl2_cache = std::move(list);
  }
  return *ctx.gl2_cache;
}

bool is_reduced_quad(const FieldCtx& ctx, const QuadForm& F) {
  if (!quad_ab(ctx, F)) return false;
  // Forms of real or degenerate discriminant fail fast above or are
  // rejected here, before they could be declared reduced.
  check_reducible_kind(ctx, disc_quad(ctx, F));
  if (!normalized_disc(ctx, disc_quad(ctx, F))) return false;
  if (F.P.deg() != F.R.deg()) return true;
  // |P| = |R| tie: F must be lex-minimal among constant-GL2 images of the
  // same discriminant passing (a),(b).
  for (const auto& m : ensure_gl2(ctx)) {
    if (!unit_square_det(ctx, m)) continue;
    QuadForm G = act_const(ctx, F, m);
    if (quad_ab(ctx, G) && lex_compare(G, F) < 0) return false;
  }
  return true;
}

bool is_reduced_cubic(const FieldCtx& ctx, const CubicForm& f) {
  return is_reduced_cubic_h(ctx, f, hessian(ctx, f));
}

bool is_reduced_cubic_h(const FieldCtx& ctx, const CubicForm& f,
                        const QuadForm& H) {
  if (f.a.zero() || !ctx.in_S(f.a.lc())) return false;
  if (H.Q.zero() && (f.d.zero() || !ctx.in_S(f.d.lc()))) return false;
  if (!quad_ab(ctx, H)) return false;
  check_reducible_kind(ctx, disc_quad(ctx, H));
  if (!normalized_disc(ctx, disc_quad(ctx, H))) return false;
  if (H.P.deg() != H.R.deg()) return true;
  // |P| = |R| tie: the Hessian must win its own tie-break, and f must be
  // lex-minimal among constant-GL2 images sharing the Hessian exactly and
  // passing the sign clauses.
  for (const auto& m : ensure_gl2(ctx)) {
    if (unit_square_det(ctx, m)) {
      QuadForm G = act_const(ctx, H, m);
      if (quad_ab(ctx, G) && lex_compare(G, H) < 0) return false;
    }
    CubicForm g = act_const(ctx, f, m);
    if (hessian(ctx, g) == H) {
      if (g.a.zero() || !ctx.in_S(g.a.lc())) continue;
      if (H.Q.zero() && (g.d.zero() || !ctx.in_S(g.d.lc()))) continue;
      if (lex_compare(g, f) < 0) return false;
    }
  }
  return true;
}

}  // namespace ff3
