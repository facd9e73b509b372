#include "ff3/search.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ff3 {

namespace {

// Barrett reducer for a runtime modulus; exact for inputs up to ~2^48,
// far above any convolution accumulator that occurs here.
struct Reducer {
  u64 magic = 0;
  u32 q = 0;
  explicit Reducer(u32 qq) : magic(~u64{0} / qq), q(qq) {}
  u32 operator()(u64 x) const {
    u64 t = u64((unsigned __int128)(x)*magic >> 64);
    u64 r = x - t * q;
    while (r >= q) r -= q;
    return u32(r);
  }
};

// Dense coefficient view of a Poly: c[0..len-1], len = deg+1 (0 for zero).
struct Coeffs {
  std::vector<u32> c;
  int len = 0;
  void load(const Poly& p) {
    c.assign(p.c.begin(), p.c.end());
    len = int(c.size());
  }
};

// Scratch buffers reused across the innermost loop; no allocation per d.
struct Scratch {
  std::vector<u64> acc;
  std::vector<u32> qc, rc, gc, dd;
  void ensure(int cap) {
    if (int(acc.size()) < cap) {
      acc.resize(size_t(cap));
      qc.resize(size_t(cap));
      rc.resize(size_t(cap));
      gc.resize(size_t(cap));
    }
  }
};

// out[j] = (base[j] + sum_{u+v=j} x[u]*y[v]) mod q for j < cap; returns the
// logical length (index of the top nonzero coefficient plus one).
int conv_add(const Reducer& red, const Coeffs& base, const u32* x, int lx,
             const u32* y, int ly, u64* acc, u32* out, int cap) {
  for (int j = 0; j < cap; ++j) acc[j] = j < base.len ? base.c[size_t(j)] : 0;
  for (int u = 0; u < lx; ++u) {
    const u64 xv = x[u];
    if (!xv) continue;
    for (int v = 0; v < ly; ++v) acc[u + v] += xv * y[v];
  }
  int len = 0;
  for (int j = 0; j < cap; ++j) {
    out[j] = red(acc[j]);
    if (out[j]) len = j + 1;
  }
  return len;
}

// Inner loops of the tabulation for one fixed leading coefficient a.
// bs = zero plus every nonzero b within the b cap; cs likewise within the
// c cap, both sorted by ascending degree.
void scan_one_a(const FieldCtx& ctx, int n, DiscKind kind, const Poly& a,
                const std::vector<Poly>& bs, const std::vector<Poly>& cs,
                int slack, CensusTable& out, Scratch& s) {
  const u32 q = ctx.q;
  const Reducer red(q);
  const int dega = a.deg();
  const u32 inv_neg3 = ctx.inv(ctx.from_int(-3));
  const bool want_odd = kind == DiscKind::imaginary;
  const int imax = n / 2 - dega + slack;
  s.ensure(2 * (n + 2 * slack) + 6);

  // -9a enters Q with negated coefficients so accumulators stay nonnegative.
  Coeffs a9n;
  a9n.load(pscale(ctx, ctx.from_int(-9), a));

  for (const Poly& b : bs) {
    const int degb = b.deg();
    const int ccap = (degb == kNegInfDeg ? n / 2 : n / 2 - degb) + slack;
    Coeffs b3n;
    b3n.load(pscale(ctx, ctx.from_int(-3), b));
    const Poly b2 = pmul(ctx, b, b);
    for (const Poly& c : cs) {
      const int degc = c.deg();
      if (degc > ccap) break;  // cs is degree-ascending
      const int mm1 = deg_mul(2, deg_add(degb, degc));
      const int mm2 = deg_add(dega, deg_mul(3, degc));
      const Poly P = psub(ctx, b2, pscale(ctx, ctx.from_int(3), pmul(ctx, a, c)));
      const Poly t1 = pmul(ctx, b, c);
      const Poly t2 = pmul(ctx, c, c);
      Coeffs t1c, t2c, p4n;
      t1c.load(t1);
      t2c.load(t2);
      p4n.load(pscale(ctx, ctx.from_int(-4), P));
      for (int i = 0; i <= imax; ++i) {
        const int mm3 = deg_add(deg_add(dega, degb), deg_add(degc, i));
        const int mm4 = deg_add(deg_mul(3, degb), i);
        const int mm5 = 2 * (dega + i);
        const int m = std::max({mm1, mm2, mm3, mm4, mm5});
        const int hits = int(mm1 == m) + int(mm2 == m) + int(mm3 == m) +
                         int(mm4 == m) + int(mm5 == m);
        if (hits == 1) {
          // unique maximal term ⇒ deg(-3D) = m exactly: decide parity and
          // size before touching d
          if ((((m & 1) == 1) != want_odd) || m > n) continue;
        }
        const int ld = i + 1;
        auto& dd = s.dd;
        dd.assign(size_t(ld), 0);
        dd[size_t(i)] = 1;
        const int capq =
            std::max(t1c.len, a9n.len > 0 ? a9n.len + ld - 1 : 0);
        const int capr =
            std::max(t2c.len, b3n.len > 0 ? b3n.len + ld - 1 : 0);
        while (true) {
          // Q = t1 - 9ad, R = t2 - 3bd, -3D = Q^2 - 4PR
          const int lq = conv_add(red, t1c, a9n.c.data(), a9n.len, dd.data(),
                                  ld, s.acc.data(), s.qc.data(), capq);
          const int lr = conv_add(red, t2c, b3n.c.data(), b3n.len, dd.data(),
                                  ld, s.acc.data(), s.rc.data(), capr);
          const int capg = std::max(
              {0, 2 * lq - 1, p4n.len > 0 && lr > 0 ? p4n.len + lr - 1 : 0});
          for (int j = 0; j < capg; ++j) s.acc[size_t(j)] = 0;
          for (int u = 0; u < lq; ++u) {
            const u64 xv = s.qc[size_t(u)];
            if (!xv) continue;
            for (int v = 0; v < lq; ++v)
              s.acc[size_t(u + v)] += xv * s.qc[size_t(v)];
          }
          for (int u = 0; u < p4n.len; ++u) {
            const u64 xv = p4n.c[size_t(u)];
            if (!xv) continue;
            for (int v = 0; v < lr; ++v)
              s.acc[size_t(u + v)] += xv * s.rc[size_t(v)];
          }
          int degG = -1;
          u32 lcG = 0;
          int j = capg - 1;
          for (; j >= 0; --j) {
            const u32 g = red(s.acc[size_t(j)]);
            s.gc[size_t(j)] = g;
            if (g) {
              degG = j;
              lcG = g;
              break;
            }
          }
          const bool pass =
              degG >= 1 && degG <= n && (((degG & 1) == 1) == want_odd) &&
              (want_odd || !ctx.is_square(lcG)) && (lcG == 1 || lcG == ctx.h);
          if (pass) {
            for (--j; j >= 0; --j) s.gc[size_t(j)] = red(s.acc[size_t(j)]);
            Poly d;
            d.c.assign(dd.begin(), dd.end());
            CubicForm f{a, b, c, d};
            Poly Qp, Rp, G;
            Qp.c.assign(s.qc.begin(), s.qc.begin() + lq);
            Rp.c.assign(s.rc.begin(), s.rc.begin() + lr);
            G.c.assign(s.gc.begin(), s.gc.begin() + degG + 1);
            const QuadForm H{P, Qp, Rp};
            if (is_reduced_cubic_h(ctx, f, H) && is_primitive(ctx, f)) {
              const Poly D = pscale(ctx, inv_neg3, G);
              if (is_squarefree(ctx, D) && is_irreducible_cubic(ctx, f))
                out.add(normalize_key(ctx, D));
            }
          }
          // advance d (constant digit fastest; top digit stays nonzero)
          int t = 0;
          while (t <= i && ++dd[size_t(t)] == q) {
            dd[size_t(t)] = 0;
            ++t;
          }
          if (t > i) break;
        }
      }
    }
  }
}

std::vector<Poly> with_zero(std::vector<Poly> polys) {
  std::vector<Poly> out;
  out.reserve(polys.size() + 1);
  out.push_back(Poly::zero_poly());
  out.insert(out.end(), std::make_move_iterator(polys.begin()),
             std::make_move_iterator(polys.end()));
  return out;
}

}  // namespace

std::vector<Poly> coeff_list(const FieldCtx& ctx, int max_deg,
                             const std::vector<u32>& sgn_filter) {
  std::vector<Poly> out;
  if (max_deg < 0) return out;
  std::vector<u32> lcs = sgn_filter;
  if (lcs.empty())
    for (u32 v = 1; v < ctx.q; ++v) lcs.push_back(v);
  for (u32 v : lcs) FF3_ASSERT(v >= 1 && v < ctx.q);
  for (int k = 0; k <= max_deg; ++k) {
    std::vector<u32> idx(size_t(k) + 1, 0);
    while (true) {
      Poly p;
      p.c.resize(size_t(k) + 1);
      for (int j = 0; j < k; ++j) p.c[size_t(j)] = idx[size_t(j)];
      p.c[size_t(k)] = lcs[idx[size_t(k)]];
      out.push_back(std::move(p));
      int t = 0;
      while (t <= k) {
        const u32 lim = t == k ? u32(lcs.size()) : ctx.q;
        if (++idx[size_t(t)] == lim) {
          idx[size_t(t)] = 0;
          ++t;
        } else {
          break;
        }
      }
      if (t > k) break;
    }
  }
  return out;
}

CensusTable run_search(const SearchConfig& cfg) {
  const FieldCtx& ctx = cfg.ctx;
  const int n = cfg.n;
  if (n < 1) throw std::domain_error("search needs a degree bound >= 1");
  if (cfg.kind == DiscKind::real)
    throw std::domain_error("search covers the imaginary and unusual cases");
  CensusTable total;
  total.q = ctx.q;
  total.kind = cfg.kind;

  const int slack = cfg.bounds_slack;
  if (slack < 0) throw std::domain_error("bounds_slack must be >= 0");
  const std::vector<Poly> as = coeff_list(ctx, n / 4 + slack, ctx.S);
  const std::vector<Poly> bs = with_zero(coeff_list(ctx, n / 4 + slack, {}));
  const std::vector<Poly> cs = with_zero(coeff_list(ctx, n / 2 + slack, {}));
  const u64 atotal = as.size();

#ifdef _OPENMP
  if (!cfg.serial && cfg.threads != 1) {
    const int T = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
    std::vector<CensusTable> parts(as.size());
    std::atomic<u64> adone{0};
#pragma omp parallel num_threads(T)
    {
      Scratch s;
#pragma omp for schedule(dynamic)
      for (long ia = 0; ia < long(as.size()); ++ia) {
        parts[size_t(ia)].q = ctx.q;
        parts[size_t(ia)].kind = cfg.kind;
        scan_one_a(ctx, n, cfg.kind, as[size_t(ia)], bs, cs, slack,
                   parts[size_t(ia)], s);
        const u64 done = ++adone;
        if (cfg.progress) {
#pragma omp critical(ff3_progress)
          cfg.progress(done, atotal);
        }
      }
    }
    for (const CensusTable& p : parts) merge_census(total, p);
    return total;
  }
#endif

  Scratch s;
  for (size_t ia = 0; ia < as.size(); ++ia) {
    scan_one_a(ctx, n, cfg.kind, as[ia], bs, cs, slack, total, s);
    if (cfg.progress) cfg.progress(u64(ia) + 1, atotal);
  }
  return total;
}

CensusTable brute_search(const FieldCtx& ctx, int n, DiscKind kind,
                         bool allow_large, int bounds_slack) {
  if (!allow_large && n > 4)
    throw std::domain_error(
        "brute_search is limited to discriminant degree 4");
  if (n < 1) throw std::domain_error("search needs a degree bound >= 1");
  if (kind == DiscKind::real)
    throw std::domain_error("search covers the imaginary and unusual cases");
  if (bounds_slack < 0) throw std::domain_error("bounds_slack must be >= 0");
  CensusTable out;
  out.q = ctx.q;
  out.kind = kind;

  const u32 neg3 = ctx.from_int(-3);
  for (const Poly& a : coeff_list(ctx, n / 4 + bounds_slack, ctx.S)) {
    const std::vector<Poly> ds =
        coeff_list(ctx, n / 2 - a.deg() + bounds_slack, {});
    for (const Poly& b : with_zero(coeff_list(ctx, n / 4 + bounds_slack, {}))) {
      const int ccap =
          (b.zero() ? n / 2 : n / 2 - b.deg()) + bounds_slack;
      for (const Poly& c : with_zero(coeff_list(ctx, ccap, {}))) {
        for (const Poly& d : ds) {
          const CubicForm f{a, b, c, d};
          const Poly D = disc_cubic(ctx, f);
          if (D.deg() < 1 || D.deg() > n) continue;
          if (classify(ctx, pscale(ctx, neg3, D)) != kind) continue;
          if (!is_primitive(ctx, f)) continue;
          if (!is_squarefree(ctx, D)) continue;
          if (!is_reduced_cubic(ctx, f)) continue;
          if (!is_irreducible_cubic(ctx, f)) continue;
          out.add(normalize_key(ctx, D));
        }
      }
    }
  }
  return out;
}

}  // namespace ff3
