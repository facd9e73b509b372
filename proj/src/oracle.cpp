#include "ff3/oracle.hpp"

#include "ff3/census.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ff3 {

namespace {

// Largest residue scan q^(deg a) the square-root search will attempt.
constexpr u64 kScanCap = u64(1) << 21;
// Largest q^(g+1) for which the independent N_{g+1} recount runs.
constexpr u64 kRecountCap = 4000;
// Largest extension field q^k for which a square table is built.
constexpr u64 kExtCap = u64(1) << 22;

u64 upow(u64 b, int e) {
  u64 r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > ~u64(0) / b) return ~u64(0);
    r *= b;
  }
  return r;
}

// quotient with a zero-remainder requirement
Poly pexact(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  Poly q, r;
  pdivrem(ctx, a, b, q, r);
  FF3_ASSERT(r.zero());
  return q;
}

// monic gcd with Bezout data: u*a + v*b = g
Poly xgcd(const FieldCtx& ctx, const Poly& a, const Poly& b, Poly& u, Poly& v) {
  Poly r0 = a, r1 = b;
  Poly u0 = Poly::constant(1), u1;
  Poly v0, v1 = Poly::constant(1);
  while (!r1.zero()) {
    Poly q, r;
    pdivrem(ctx, r0, r1, q, r);
    r0 = r1;
    r1 = r;
    Poly u2 = psub(ctx, u0, pmul(ctx, q, u1));
    u0 = u1;
    u1 = u2;
    Poly v2 = psub(ctx, v0, pmul(ctx, q, v1));
    v0 = v1;
    v1 = v2;
  }
  FF3_ASSERT(!r0.zero());
  const u32 il = ctx.inv(r0.lc());
  u = pscale(ctx, il, u0);
  v = pscale(ctx, il, v0);
  return pscale(ctx, il, r0);
}

// little-endian base-q digits -> polynomial with deg < len
Poly poly_from_code(u32 q, u64 code, int len) {
  Poly f;
  f.c.assign(size_t(len), 0);
  for (int i = 0; i < len; ++i) {
    f.c[size_t(i)] = u32(code % q);
    code /= q;
  }
  f.trim();
  return f;
}

bool valid_pair(const QuadModel& m, const IdealRep& I) {
  const FieldCtx& ctx = *m.ctx;
  if (I.a.zero() || I.a.lc() != 1) return false;
  if (!I.b.zero() && I.b.deg() >= I.a.deg()) return false;
  return prem(ctx, psub(ctx, pmul(ctx, I.b, I.b), m.D), I.a).zero();
}

// Reduction walk to the kind's degree bound; the result is the canonical
// (monic a, b mod a) pair.  Imaginary/unusual use the plain step
// a <- (D - b^2)/a; the real kind uses the continued-fraction step with
// the residue of b adapted to sqrt(D).
IdealRep reduce_pair(const QuadModel& m, Poly a, Poly b) {
  const FieldCtx& ctx = *m.ctx;
  a = pmonic(ctx, a);
  FF3_ASSERT(!a.zero());
  b = prem(ctx, b, a);
  if (m.kind != DiscKind::real) {
    const int bound = m.kind == DiscKind::unusual ? m.g + 1 : m.g;
    while (a.deg() > bound) {
      const int prev = a.deg();
      Poly c = pexact(ctx, psub(ctx, m.D, pmul(ctx, b, b)), a);
      c = pmonic(ctx, c);
      b = prem(ctx, pneg(ctx, b), c);
      a = c;
      FF3_ASSERT(a.deg() < prev);
    }
  } else {
    const Poly d = sqrt_floor(ctx, m.D);
    while (a.deg() > m.g) {
      const int prev = a.deg();
      const Poly s = prem(ctx, padd(ctx, b, d), a);
      const Poly bt = psub(ctx, s, d);
      Poly c = pexact(ctx, psub(ctx, m.D, pmul(ctx, bt, bt)), a);
      c = pmonic(ctx, c);
      b = prem(ctx, pneg(ctx, bt), c);
      a = c;
      FF3_ASSERT(a.deg() < prev);
    }
  }
  IdealRep out{a, b};
  FF3_ASSERT(valid_pair(m, out));
  return out;
}

// all pairs (a monic of degree <= bound, b residue with a | b^2 - D)
std::vector<IdealRep> enum_pairs(const QuadModel& m, int bound) {
  const FieldCtx& ctx = *m.ctx;
  const u32 q = ctx.q;
  std::vector<IdealRep> out;
  out.push_back(unit_ideal());
  for (int da = 1; da <= bound; ++da) {
    const u64 n = upow(q, da);
    if (n > kScanCap)
      throw std::domain_error("oracle: residue scan exceeds the work cap");
    for (u64 ca = 0; ca < n; ++ca) {
      Poly a = poly_from_code(q, ca, da);
      a.c.resize(size_t(da) + 1, 0);
      a.c.back() = 1;  // monic of degree exactly da
      for (u64 cb = 0; cb < n; ++cb) {
        const Poly b = poly_from_code(q, cb, da);
        if (prem(ctx, psub(ctx, pmul(ctx, b, b), m.D), a).zero())
          out.push_back(IdealRep{a, b});
      }
    }
  }
  return out;
}

// --- extension-field point counting ---------------------------------------

struct ExtField {
  const FieldCtx& ctx;
  int k;
  u64 size;
  std::vector<u32> mod;  // monic modulus, degree k, little-endian, len k+1
  std::vector<u32> scratch;

  ExtField(const FieldCtx& c, int kk) : ctx(c), k(kk) {
    size = upow(ctx.q, k);
    if (size > kExtCap)
      throw std::domain_error("oracle: extension field exceeds the work cap");
    mod = find_modulus();
    scratch.assign(size_t(2 * k - 1), 0);
  }

  // first monic irreducible of degree k in code order
  std::vector<u32> find_modulus() const {
    const u32 q = ctx.q;
    for (u64 code = 0;; ++code) {
      FF3_ASSERT(code < size);
      Poly f = poly_from_code(q, code, k);
      f.c.resize(size_t(k) + 1, 0);
      f.c.back() = 1;
      bool red = false;
      for (int dd = 1; !red && 2 * dd <= k; ++dd)
        for (u64 cd = 0; !red && cd < upow(q, dd); ++cd) {
          Poly g = poly_from_code(q, cd, dd);
          g.c.resize(size_t(dd) + 1, 0);
          g.c.back() = 1;
          red = prem(ctx, f, g).zero();
        }
      if (!red) return f.c;
    }
  }

  u64 mul(u64 x, u64 y) {
    const u32 q = ctx.q;
    std::vector<u32>& t = scratch;
    t.assign(size_t(2 * k - 1), 0);
    u64 xx = x;
    for (int i = 0; i < k; ++i, xx /= q) {
      const u32 xi = u32(xx % q);
      if (!xi) continue;
      u64 yy = y;
      for (int j = 0; j < k; ++j, yy /= q) {
        const u32 yj = u32(yy % q);
        if (yj) t[size_t(i + j)] = ctx.add(t[size_t(i + j)], ctx.mul(xi, yj));
      }
    }
    for (int i = 2 * k - 2; i >= k; --i) {
      const u32 top = t[size_t(i)];
      if (!top) continue;
      t[size_t(i)] = 0;
      for (int j = 0; j < k; ++j)
        t[size_t(i - k + j)] =
            ctx.sub(t[size_t(i - k + j)], ctx.mul(top, mod[size_t(j)]));
    }
    u64 code = 0;
    for (int i = k - 1; i >= 0; --i) code = code * q + t[size_t(i)];
    return code;
  }

  u64 add(u64 x, u64 y) const {
    const u32 q = ctx.q;
    u64 code = 0, p = 1;
    for (int i = 0; i < k; ++i, x /= q, y /= q, p *= q)
      code += p * ctx.add(u32(x % q), u32(y % q));
    return code;
  }
};

}  // namespace

i64 LPoly::at1() const {
  i64 s = 0;
  for (i64 v : c) s += v;
  return s;
}

QuadModel QuadModel::make(const FieldCtx& ctx, const Poly& D) {
  if (D.deg() < 1)
    throw std::domain_error("discriminant must be nonconstant");
  if (!is_squarefree(ctx, D))
    throw std::domain_error("discriminant must be squarefree");
  QuadModel m;
  m.ctx = &ctx;
  m.D = D;
  m.kind = classify(ctx, D);
  m.g = genus_of_disc(D);
  return m;
}

IdealRep unit_ideal() { return IdealRep{Poly::constant(1), Poly::zero_poly()}; }

IdealRep conjugate(const QuadModel& m, const IdealRep& I) {
  return IdealRep{I.a, prem(*m.ctx, pneg(*m.ctx, I.b), I.a)};
}

std::vector<IdealRep> enumerate_reduced(const QuadModel& m) {
  if (m.kind == DiscKind::real)
    throw std::domain_error("real kind is enumerated by cycle_partition");
  return enum_pairs(m, m.kind == DiscKind::unusual ? m.g + 1 : m.g);
}

IdealRep compose(const QuadModel& m, const IdealRep& I, const IdealRep& J) {
  const FieldCtx& ctx = *m.ctx;
  FF3_ASSERT(valid_pair(m, I) && valid_pair(m, J));
  Poly e1, e2;
  const Poly d1 = xgcd(ctx, I.a, J.a, e1, e2);
  Poly f1, f2;
  const Poly d = xgcd(ctx, d1, padd(ctx, I.b, J.b), f1, f2);
  const Poly q1 = pexact(ctx, I.a, d);
  const Poly q2 = pexact(ctx, J.a, d);
  const Poly a3 = pmul(ctx, q1, q2);
  // v3 = (h1 a1 b2 + h2 a2 b1 + h3 (b1 b2 + D)) / d  with (h1,h2,h3) the
  // Bezout combination h1 a1 + h2 a2 + h3 (b1+b2) = d
  Poly num = pmul(ctx, pmul(ctx, f1, e1), pmul(ctx, I.a, J.b));
  num = padd(ctx, num, pmul(ctx, pmul(ctx, f1, e2), pmul(ctx, J.a, I.b)));
  num = padd(ctx, num,
             pmul(ctx, f2, padd(ctx, pmul(ctx, I.b, J.b), m.D)));
  const Poly b3 = prem(ctx, pexact(ctx, num, d), a3);
  return reduce_pair(m, a3, b3);
}

bool same_class(const QuadModel& m, const IdealRep& I, const IdealRep& J) {
  if (m.kind == DiscKind::real)
    throw std::domain_error("real-kind class equality uses cycle membership");
  return compose(m, I, conjugate(m, J)) == unit_ideal();
}

i64 point_count(const QuadModel& m, int k) {
  const FieldCtx& ctx = *m.ctx;
  FF3_ASSERT(k >= 1);
  i64 affine = 0;
  if (k == 1) {
    for (u32 x = 0; x < ctx.q; ++x) {
      const u32 v = peval(ctx, m.D, x);
      affine += v == 0 ? 1 : (ctx.is_square(v) ? 2 : 0);
    }
  } else {
    ExtField F(ctx, k);
    std::vector<bool> sq(F.size, false);
    for (u64 u = 0; u < F.size; ++u) sq[F.mul(u, u)] = true;
    for (u64 u = 0; u < F.size; ++u) {
      u64 v = 0;
      for (int j = m.D.deg(); j >= 0; --j)
        v = F.add(F.mul(v, u), m.D.coeff(j));
      affine += v == 0 ? 1 : (sq[v] ? 2 : 0);
    }
  }
  i64 inf = 0;
  switch (m.kind) {
    case DiscKind::imaginary: inf = 1; break;
    case DiscKind::unusual: inf = k % 2 == 0 ? 2 : 0; break;
    case DiscKind::real: inf = 2; break;
  }
  return affine + inf;
}

std::pair<LPoly, u64> class_number_pc(const QuadModel& m) {
  const int g = m.g;
  const i64 q = i64(m.ctx->q);
  LPoly L;
  if (g == 0) {
    L.c = {1};
    return {L, 1};
  }
  // power sums p_k = q^k + 1 - N_k of the inverse roots of L
  std::vector<i64> p(size_t(g) + 1, 0);
  i64 qk = 1;
  for (int k = 1; k <= g; ++k) {
    qk *= q;
    p[size_t(k)] = qk + 1 - point_count(m, k);
    FF3_ASSERT(std::llabs(p[size_t(k)]) <=
               i64(2 * g * std::pow(double(q), k / 2.0) + 0.5));
  }
  // Newton's identities: elementary symmetric functions of the roots
  std::vector<i64> e(size_t(2 * g) + 1, 0);
  e[0] = 1;
  for (int k = 1; k <= g; ++k) {
    i64 s = 0;
    for (int i = 1; i <= k; ++i) {
      const i64 term = e[size_t(k - i)] * p[size_t(i)];
      s += i % 2 == 1 ? term : -term;
    }
    FF3_ASSERT(s % k == 0);
    e[size_t(k)] = s / k;
  }
  L.c.assign(size_t(2 * g) + 1, 0);
  for (int j = 0; j <= g; ++j)
    L.c[size_t(j)] = j % 2 == 0 ? e[size_t(j)] : -e[size_t(j)];
  i64 qp = 1;
  for (int j = g - 1; j >= 0; --j) {
    qp *= q;
    L.c[size_t(2 * g - j)] = qp * L.c[size_t(j)];
  }
  for (int j = 0; j <= 2 * g; ++j)
    e[size_t(j)] = j % 2 == 0 ? L.c[size_t(j)] : -L.c[size_t(j)];
  // independent recount: the filled L predicts N_{g+1}
  if (upow(u64(q), g + 1) <= kRecountCap) {
    const int k = g + 1;
    i64 pk = 0;
    for (int i = 1; i < k; ++i) {
      const i64 term = e[size_t(i)] * p[size_t(k - i)];
      pk += i % 2 == 1 ? term : -term;
    }
    pk += (k % 2 == 1 ? i64(k) : -i64(k)) * e[size_t(k)];
    FF3_ASSERT(point_count(m, k) == qk * q + 1 - pk);
  }
  const i64 h = L.at1();
  FF3_ASSERT(h >= 1);
  const double sq = std::sqrt(double(q));
  FF3_ASSERT(double(h) >= std::pow(sq - 1, 2 * g) - 0.5 &&
             double(h) <= std::pow(sq + 1, 2 * g) + 0.5);
  return {L, u64(h)};
}

namespace {

int log3_exact(u64 n) {
  int r = 0;
  while (n % 3 == 0) {
    n /= 3;
    ++r;
  }
  FF3_ASSERT(n == 1);
  return r;
}

// rank and ideal class number for the imaginary/unusual kinds, with the
// class-number cross-checks against h_jac = L(1)
std::pair<int, u64> finite_run(const QuadModel& m, u64 h_jac) {
  const std::vector<IdealRep> pairs = enumerate_reduced(m);
  const auto cube = [&](const IdealRep& I) {
    return compose(m, compose(m, I, I), I);
  };
  u64 h_ideal = 0;
  u64 tors = 0;
  if (m.kind == DiscKind::imaginary) {
    // one reduced ideal per class
    h_ideal = pairs.size();
    FF3_ASSERT(h_ideal == h_jac);
    for (const IdealRep& I : pairs)
      if (cube(I) == unit_ideal()) ++tors;
  } else {
    // classes can repeat among reduced ideals: separate them exactly
    std::vector<IdealRep> reps;
    std::vector<char> t3;
    for (const IdealRep& I : pairs) {
      bool seen = false;
      for (const IdealRep& R : reps)
        if (same_class(m, I, R)) {
          seen = true;
          break;
        }
      if (!seen) {
        reps.push_back(I);
        t3.push_back(cube(I) == unit_ideal() ? 1 : 0);
      }
    }
    h_ideal = reps.size();
    FF3_ASSERT(h_ideal == 2 * h_jac);
    for (char f : t3) tors += f;
  }
  const int r = log3_exact(tors);
  FF3_ASSERT((h_ideal % 3 == 0) == (r >= 1));
  return {r, h_ideal};
}

std::pair<int, u64> real_run(const QuadModel& m, u64 h_jac) {
  const CyclePartition cp = cycle_partition(m);
  const u64 h_ideal = cp.cycles.size();
  FF3_ASSERT(h_jac % h_ideal == 0);
  std::unordered_map<std::string, std::size_t> at;
  for (std::size_t i = 0; i < cp.cycles.size(); ++i)
    for (const IdealRep& I : cp.cycles[i])
      at[poly_to_text(I.a) + "|" + poly_to_text(I.b)] = i;
  u64 tors = 0;
  for (const auto& cyc : cp.cycles) {
    const IdealRep& I = cyc.front();
    const IdealRep c = compose(m, compose(m, I, I), I);
    const auto it = at.find(poly_to_text(c.a) + "|" + poly_to_text(c.b));
    FF3_ASSERT(it != at.end());
    if (it->second == cp.principal) ++tors;
  }
  const int r = log3_exact(tors);
  FF3_ASSERT((h_ideal % 3 == 0) == (r >= 1));
  return {r, h_ideal};
}

}  // namespace

int three_rank(const QuadModel& m) {
  if (m.kind == DiscKind::real)
    throw std::domain_error("real kind has three_rank_real");
  return finite_run(m, class_number_pc(m).second).first;
}

IdealRep rho_step(const QuadModel& m, const IdealRep& I) {
  const FieldCtx& ctx = *m.ctx;
  if (m.kind != DiscKind::real)
    throw std::domain_error("rho steps apply to the real kind");
  FF3_ASSERT(valid_pair(m, I) && I.a.deg() <= m.g);
  const Poly d = sqrt_floor(ctx, m.D);
  const Poly s = prem(ctx, padd(ctx, I.b, d), I.a);
  const Poly bt = psub(ctx, s, d);
  Poly a = pexact(ctx, psub(ctx, m.D, pmul(ctx, bt, bt)), I.a);
  a = pmonic(ctx, a);
  FF3_ASSERT(a.deg() <= m.g);
  return IdealRep{a, prem(ctx, pneg(ctx, bt), a)};
}

CyclePartition cycle_partition(const QuadModel& m) {
  if (m.kind != DiscKind::real)
    throw std::domain_error("cycle partition applies to the real kind");
  const std::vector<IdealRep> pairs = enum_pairs(m, m.g);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    index[poly_to_text(pairs[i].a) + "|" + poly_to_text(pairs[i].b)] = i;
  CyclePartition out;
  std::vector<char> done(pairs.size(), 0);
  bool found_principal = false;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (done[i]) continue;
    std::vector<IdealRep> cyc;
    std::size_t j = i;
    while (!done[j]) {
      done[j] = 1;
      cyc.push_back(pairs[j]);
      const IdealRep next = rho_step(m, pairs[j]);
      const auto it =
          index.find(poly_to_text(next.a) + "|" + poly_to_text(next.b));
      FF3_ASSERT(it != index.end());
      j = it->second;
    }
    // rho permutes the reduced ideals: a walk may only close on its start
    FF3_ASSERT(j == i);
    for (const IdealRep& I : cyc)
      if (I == unit_ideal()) {
        out.principal = out.cycles.size();
        found_principal = true;
      }
    out.cycles.push_back(std::move(cyc));
  }
  FF3_ASSERT(found_principal);
  return out;
}

int three_rank_real(const QuadModel& m) {
  if (m.kind != DiscKind::real)
    throw std::domain_error("three_rank_real applies to the real kind");
  return real_run(m, class_number_pc(m).second).first;
}

DualKind dual_check(const FieldCtx& ctx, const Poly& D_real) {
  if (ctx.q % 3 != 2)
    throw std::domain_error("dual fields require q = 2 mod 3");
  const QuadModel mr = QuadModel::make(ctx, D_real);
  if (mr.kind != DiscKind::real)
    throw std::domain_error("dual_check takes a real discriminant");
  const int rp = three_rank_real(mr);
  const Poly Du = normalize_key(ctx, pscale(ctx, ctx.h, D_real));
  const QuadModel mu = QuadModel::make(ctx, Du);
  FF3_ASSERT(mu.kind == DiscKind::unusual);
  const int r = three_rank(mu);
  FF3_ASSERT(r == rp || r == rp + 1);
  return r == rp + 1 ? DualKind::escalatory : DualKind::non_escalatory;
}

OracleResult oracle_run(const FieldCtx& ctx, const Poly& D) {
  const QuadModel m = QuadModel::make(ctx, D);
  const u64 h_jac = class_number_pc(m).second;
  const auto [rank, h_ideal] = m.kind == DiscKind::real
                                   ? real_run(m, h_jac)
                                   : finite_run(m, h_jac);
  return OracleResult{rank, h_ideal, h_jac};
}

int oracle_rank(const FieldCtx& ctx, const Poly& D) {
  return oracle_run(ctx, D).rank;
}

OracleResult resolvent_run(const FieldCtx& ctx, const Poly& D) {
  const u32 m3 = ctx.q - 3;  // -3 as a field element (q >= 5)
  return oracle_run(ctx, pscale(ctx, m3, D));
}

int resolvent_rank(const FieldCtx& ctx, const Poly& D) {
  return resolvent_run(ctx, D).rank;
}

Poly sqrt_floor(const FieldCtx& ctx, const Poly& D) {
  if (classify(ctx, D) != DiscKind::real)
    throw std::domain_error("sqrt_floor needs a real-kind discriminant");
  const int g1 = D.deg() / 2;  // genus + 1
  u32 r0 = 0;
  for (u32 x = 1; x < ctx.q; ++x)
    if (ctx.mul(x, x) == D.lc()) {
      r0 = x;
      break;
    }
  FF3_ASSERT(r0 != 0);
  const u32 half = ctx.inv(ctx.add(r0, r0));
  Poly d = Poly::term(r0, g1);
  for (int j = 1; j <= g1; ++j) {
    const Poly e = psub(ctx, D, pmul(ctx, d, d));
    const u32 v = e.coeff(2 * g1 - j);
    d = padd(ctx, d, Poly::term(ctx.mul(v, half), g1 - j));
  }
  FF3_ASSERT(psub(ctx, D, pmul(ctx, d, d)).deg() <= g1 - 1);
  return d;
}

u64 qg_cost(const QuadModel& m) { return upow(m.ctx->q, m.g); }

}  // namespace ff3
