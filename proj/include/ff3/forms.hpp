#pragma once

#include <array>

#include "ff3/poly.hpp"

namespace ff3 {

// Binary quadratic form P x^2 + Q xy + R y^2 over F_q[t].
struct QuadForm {
  Poly P, Q, R;
  bool operator==(const QuadForm&) const = default;
};

// Binary cubic form a x^3 + b x^2 y + c xy^2 + d y^3 over F_q[t].
struct CubicForm {
  Poly a, b, c, d;
  bool operator==(const CubicForm&) const = default;
};

// Matrix [[alpha, beta], [gamma, delta]]; acts by substitution
// (x, y) -> (alpha x + beta y, gamma x + delta y).
struct Mat2 {
  Poly alpha, beta, gamma, delta;
  static Mat2 constants(u32 a, u32 b, u32 c, u32 d);
};

// alpha*delta - beta*gamma.
Poly mat_det(const FieldCtx& ctx, const Mat2& M);

// Q^2 - 4PR.
Poly disc_quad(const FieldCtx& ctx, const QuadForm& F);

// 18abcd + b^2c^2 - 4ac^3 - 4b^3d - 27a^2d^2.
Poly disc_cubic(const FieldCtx& ctx, const CubicForm& f);

// (b^2 - 3ac, bc - 9ad, c^2 - 3bd); disc(hessian(f)) = -3 disc(f).
QuadForm hessian(const FieldCtx& ctx, const CubicForm& f);

// F(alpha x + beta y, gamma x + delta y).  Throws std::domain_error unless
// det(M) is a nonzero constant.
QuadForm act(const FieldCtx& ctx, const QuadForm& F, const Mat2& M);
CubicForm act(const FieldCtx& ctx, const CubicForm& f, const Mat2& M);

// Fast path for constant-entry matrices m = {alpha, beta, gamma, delta};
// no determinant validation.
CubicForm act_const(const FieldCtx& ctx, const CubicForm& f,
                    const std::array<u32, 4>& m);
QuadForm act_const(const FieldCtx& ctx, const QuadForm& F,
                   const std::array<u32, 4>& m);

// gcd(a,b,c,d) is a nonzero constant.  Throws on the all-zero form.
bool is_primitive(const FieldCtx& ctx, const CubicForm& f);

// True iff f has no linear factor over F_q[t] (equivalently f(x,1) has no
// root in F_q(t)).  Requires a != 0 (throws std::domain_error otherwise);
// d = 0 returns false since y divides f.
bool is_irreducible_cubic(const FieldCtx& ctx, const CubicForm& f);

// Reduced-representative tests.  Quadratic: (a) |Q| < |P| and (Q = 0 or
// sgn Q in S); (b) |P| < |R| with sgn P in {1,h}, or |P| = |R| with
// sgn P = 1; the discriminant must carry its normalization sgn in {1,h};
// (c) on the |P| = |R| tie, F is lex-minimal among its constant-GL2
// images of the same discriminant satisfying (a),(b).  Throws
// std::domain_error when the form's discriminant is zero, constant, or
// real.
bool is_reduced_quad(const FieldCtx& ctx, const QuadForm& F);

// Cubic: sgn(a) in S; Q = 0 implies sgn(d) in S; hessian reduced; on the
// |P| = |R| tie, f is lex-minimal among the constant-GL2 images of f that
// share the Hessian exactly and pass the sign clauses.
bool is_reduced_cubic(const FieldCtx& ctx, const CubicForm& f);

// Same test with the Hessian already at hand; H must equal hessian(ctx, f).
bool is_reduced_cubic_h(const FieldCtx& ctx, const CubicForm& f,
                        const QuadForm& H);

// Total positional orders: (P,Q,R) resp. (a,b,c,d), each coordinate by
// poly_lex_less.  Returns <0, 0, >0.
int lex_compare(const QuadForm& f, const QuadForm& g);
int lex_compare(const CubicForm& f, const CubicForm& g);

// All (q^2-1)(q^2-q) constant invertible matrices, cached on the context.
const std::vector<std::array<u32, 4>>& ensure_gl2(const FieldCtx& ctx);

}  // namespace ff3
