#pragma once

#include "ff3/field.hpp"
#include "ff3/poly.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace ff3 {

// A quadratic function field F_q(t)(sqrt(D)) presented by a squarefree,
// nonconstant discriminant polynomial D, with its derived case and genus.
struct QuadModel {
  const FieldCtx* ctx = nullptr;
  Poly D;
  DiscKind kind = DiscKind::imaginary;
  int g = 0;

  // Validates that D is nonconstant and squarefree; derives kind and genus.
  static QuadModel make(const FieldCtx& ctx, const Poly& D);
};

// Integral ideal [a, b + sqrt(D)] of the maximal order F_q[t][sqrt(D)]:
// a monic, deg b < deg a, and a | b^2 - D.  Any module written in this
// shape is automatically a primitive ideal (the sqrt(D) coefficient is 1),
// so there is no content bookkeeping anywhere in the ideal arithmetic.
struct IdealRep {
  Poly a;
  Poly b;
  bool operator==(const IdealRep&) const = default;
};

// Numerator L(T) of the zeta function: degree 2g, c[0] = 1, and the
// functional equation c[2g-j] = q^(g-j) c[j].  L(1) is the order of the
// degree-zero divisor class group.
struct LPoly {
  std::vector<i64> c;
  i64 at1() const;
};

// The multiplicative unit class representative (1, 0).
IdealRep unit_ideal();

// The conjugate ideal (inverse class).
IdealRep conjugate(const QuadModel& m, const IdealRep& I);

// All reduced ideals: deg a <= g for the imaginary kind (one per ideal
// class) and deg a <= g+1 for the unusual kind, where every class is
// covered but may repeat; see three_rank for how classes are separated.
// Real kind: rejected, use cycle_partition.
std::vector<IdealRep> enumerate_reduced(const QuadModel& m);

// Reduced representative of the product class: two-element ideal
// multiplication followed by the reduction walk of the model's kind.
IdealRep compose(const QuadModel& m, const IdealRep& I, const IdealRep& J);

// Exact class-equality test for imaginary/unusual kinds: I ~ J iff
// I * conjugate(J) reduces to the unit ideal.  (A primitive ideal with
// 1 <= deg a <= 2g+1 can never be principal -- the norm form's leading
// term cannot drop -- so reduction to (1, 0) is a complete test.)
bool same_class(const QuadModel& m, const IdealRep& I, const IdealRep& J);

// Affine points of y^2 = D(t) over F_{q^k} plus the contribution of the
// places at infinity (imaginary +1; unusual +2 for even k; real +2).
i64 point_count(const QuadModel& m, int k);

// L-polynomial from the point counts N_1..N_g via Newton's identities and
// the functional equation, with an independent N_{g+1} recount check when
// q^{g+1} is small; returns (L, h_jac = L(1)) after Hasse-Weil validation.
std::pair<LPoly, u64> class_number_pc(const QuadModel& m);

// 3-rank of the ideal class group, imaginary/unusual kinds.
int three_rank(const QuadModel& m);

// One continued-fraction reduction step on a reduced ideal (real kind).
IdealRep rho_step(const QuadModel& m, const IdealRep& I);

// Real kind: all reduced ideals partitioned into rho-cycles; each cycle is
// one ideal class, and `principal` indexes the cycle containing (1, 0).
struct CyclePartition {
  std::vector<std::vector<IdealRep>> cycles;
  std::size_t principal = 0;
};
CyclePartition cycle_partition(const QuadModel& m);

// 3-rank of the ideal class group, real kind: classes whose cube lands in
// the principal cycle.
int three_rank_real(const QuadModel& m);

enum class DualKind { escalatory, non_escalatory };

// For q = 2 mod 3 and real D: compares r' = three_rank_real(D) with the
// rank r of the unusual field of discriminant h*D; checks r in {r', r'+1}
// and reports whether the pair is escalatory (r = r' + 1).
DualKind dual_check(const FieldCtx& ctx, const Poly& D_real);

// Rank plus both class-number cross-checks, dispatching on the kind of D.
// h_ideal is the ideal class number h_O (pair count, class count, or cycle
// count per kind); h_jac is L(1).
struct OracleResult {
  int rank = 0;
  u64 h_ideal = 0;
  u64 h_jac = 0;
};
OracleResult oracle_run(const FieldCtx& ctx, const Poly& D);

// Rank only.
int oracle_rank(const FieldCtx& ctx, const Poly& D);

// Rank of the resolvent field F_q(t)(sqrt(-3 D)), which is what the census
// count at key D encodes: count = (3^r - 1) / 2 with r this rank.  When -3
// is a square in F_q the resolvent field equals F_q(t)(sqrt(D)) itself, and
// for odd deg D the two ranks agree as well; they differ in general for
// even-degree keys, where D itself is of real kind and -3 D (sign h by key
// normalization) is the unusual dual.  Full run variant also returns both
// class-number cross-checks of the resolvent model.
int resolvent_rank(const FieldCtx& ctx, const Poly& D);
OracleResult resolvent_run(const FieldCtx& ctx, const Poly& D);

// Polynomial part of sqrt(D) for real D: the unique (up to sign) d of
// degree g+1 with deg(D - d^2) <= g; the leading coefficient is the
// smallest square root of sgn(D).
Poly sqrt_floor(const FieldCtx& ctx, const Poly& D);

// Work proxy q^g (saturating), for budget refusal by callers.
u64 qg_cost(const QuadModel& m);

}  // namespace ff3
