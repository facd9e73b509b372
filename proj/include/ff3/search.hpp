#pragma once

#include <functional>

#include "ff3/census.hpp"
#include "ff3/forms.hpp"

namespace ff3 {

// Exhaustive enumeration of reduced binary cubic forms f with Hessian
// discriminant -3D of the requested kind and |D| <= q^n, tallying the
// normalized discriminant of every primitive irreducible reduced f with
// squarefree D.
struct SearchConfig {
  FieldCtx ctx;
  int n = 3;  // bound X = q^n on |D|
  DiscKind kind = DiscKind::imaginary;  // imaginary or unusual
  int threads = 0;     // 0 = library default
  bool serial = false; // force the single-thread reference path
  // Extra degrees allowed on every coefficient cap beyond the derived
  // bounds.  The result must be identical for any slack >= 0; nonzero
  // values exist to let tests certify that the derived bounds are
  // exhaustive.
  int bounds_slack = 0;
  // Optional coarse progress callback (outer loop chunks): done, total.
  std::function<void(u64, u64)> progress;
};

// All nonzero polynomials with deg <= max_deg whose leading coefficient
// lies in sgn_filter (empty filter = no constraint), ordered by degree
// ascending then by coefficient odometer (constant term = fastest digit).
std::vector<Poly> coeff_list(const FieldCtx& ctx, int max_deg,
                             const std::vector<u32>& sgn_filter);

// Degree-pruned coefficient search (the production kernel).
CensusTable run_search(const SearchConfig& cfg);

// Reference implementation: plain loops over all coefficient tuples in the
// same bounds, filtering with the public form predicates only.  Guarded to
// n <= 4 unless allow_large.  bounds_slack widens the caps as above.
CensusTable brute_search(const FieldCtx& ctx, int n, DiscKind kind,
                         bool allow_large = false, int bounds_slack = 0);

}  // namespace ff3
