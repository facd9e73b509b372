// Timing harness for the search kernels: the parallel production path
// against the serial reference (and, where cheap, the brute-force loops),
// checking that all paths produce identical census tables.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ff3/search.hpp"

using namespace ff3;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

bool same_table(const CensusTable& a, const CensusTable& b) {
  return a.q == b.q && a.kind == b.kind && a.counts == b.counts;
}

}  // namespace

int main(int argc, char** argv) {
  const u32 q = argc > 1 ? u32(std::atoi(argv[1])) : 5;
  const int n_max = argc > 2 ? std::atoi(argv[2]) : 6;
  if (q < 5 || n_max < 3) {
    std::fprintf(stderr, "usage: %s [q] [n_max]   (defaults: 5 6)\n",
                 argv[0]);
    return 2;
  }
  const FieldCtx ctx = FieldCtx::make(q);
  const int nt = max_threads();
  std::printf("q = %u, parallel threads = %d\n", q, nt);

  bool all_equal = true;
  for (DiscKind kind : {DiscKind::imaginary, DiscKind::unusual}) {
    const int n0 = kind == DiscKind::imaginary ? 3 : 4;
    for (int n = n0; n <= n_max; n += 2) {
      SearchConfig cfg;
      cfg.ctx = ctx;
      cfg.n = n;
      cfg.kind = kind;

      cfg.serial = true;
      auto t0 = std::chrono::steady_clock::now();
      const CensusTable ref = run_search(cfg);
      const double ts = seconds_since(t0);

      cfg.serial = false;
      cfg.threads = nt;
      t0 = std::chrono::steady_clock::now();
      const CensusTable par = run_search(cfg);
      const double tp = seconds_since(t0);

      double tb = -1.0;
      bool brute_ok = true;
      if (n <= 4) {
        t0 = std::chrono::steady_clock::now();
        const CensusTable bru = brute_search(ctx, n, kind);
        tb = seconds_since(t0);
        brute_ok = same_table(ref, bru);
      }

      const bool ok = same_table(ref, par) && brute_ok;
      all_equal = all_equal && ok;
      std::printf(
          "%-9s n=%d: keys=%6zu  serial %8.3fs  parallel %8.3fs  "
          "speedup %5.2fx",
          kind_name(kind), n, ref.counts.size(), ts, tp,
          tp > 0 ? ts / tp : 0.0);
      if (tb >= 0) std::printf("  brute %8.3fs", tb);
      std::printf("  %s\n", ok ? "tables equal" : "TABLES DIFFER");
    }
  }
  return all_equal ? 0 : 1;
}
