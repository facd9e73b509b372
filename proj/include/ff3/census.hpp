#pragma once

#include <map>
#include <string>
#include <vector>

#include "ff3/poly.hpp"

namespace ff3 {

struct PolyLexLess {
  bool operator()(const Poly& a, const Poly& b) const {
    return poly_lex_less(a, b);
  }
};

// Tabulation result for one field and one case.  `kind` is the case of the
// Hessian discriminant -3D (imaginary = odd degree, unusual = even degree
// with non-square sign); keys are normalized discriminants D and the value
// is the number of surviving forms with that discriminant, always of the
// shape (3^r - 1)/2.  Discriminants whose count would be 0 (rank 0) never
// appear as keys.
struct CensusTable {
  u32 q = 0;
  DiscKind kind = DiscKind::imaginary;
  std::map<Poly, u64, PolyLexLess> counts;

  void add(const Poly& key, u64 n = 1) { counts[key] += n; }
};

// Inverse of kind_name; unknown names throw std::invalid_argument.
DiscKind kind_from_name(const std::string& name);

// sigma * D for the unique square scalar sigma with sgn(-3 sigma D) in
// {1, h}.  Scaling by a square keeps the quadratic field; the normalized
// key is the class representative tallied by the census.
Poly normalize_key(const FieldCtx& ctx, const Poly& D);

// r with (3^r - 1)/2 = c; throws std::domain_error when c is not of that
// shape.
int rank_from_count(u64 c);

// Number of normalized discriminant keys of the given case and degree:
// all scalar classes of squarefree monic degree-n polynomials compatible
// with the case (two square classes for odd n, one for even n).
u64 count_squarefree(const FieldCtx& ctx, DiscKind kind, int degD);

struct SummaryRow {
  int degD = 0;
  int genus = 0;
  int rank = 0;
  u64 num_fields = 0;        // fields at this degree with this 3-rank
  u64 total_squarefree = 0;  // all fields at this degree (denominator)
};

// Per-degree rank distribution, rank 0 included (derived as the total minus
// the tallied ranks).  Rows sorted by (degD, rank); every degree of the
// case parity in [3, deg_max] appears, ranks 0..max observed in the table.
std::vector<SummaryRow> distribution(const FieldCtx& ctx, const CensusTable& t,
                                     int deg_max);

struct MinimaRow {
  int rank = 0;
  int degD = 0;
  int genus = 0;
  Poly example;  // lex-smallest key at the minimal degree
};

// For each rank >= 1 present: the smallest key degree where it occurs.
std::vector<MinimaRow> minima(const FieldCtx& ctx, const CensusTable& t);

// Pointwise sum; tables must agree on q and kind.
void merge_census(CensusTable& into, const CensusTable& from);

// CSV, one row per key: q,case,h,degD,D,count,rank with D double-quoted in
// the coefficient text form; rows sorted by (degD, lex).
std::string census_csv(const FieldCtx& ctx, const CensusTable& t);

// CSV of distribution(): q,case,degD,genus,rank,num_fields,total_squarefree.
std::string summary_csv(const FieldCtx& ctx, const CensusTable& t, int deg_max);

// Inverse of census_csv (exact round trip for nonempty tables; a
// header-only file carries no metadata and is rejected).  Throws
// std::invalid_argument on malformed input or on rows inconsistent with
// q/case/count arithmetic.
CensusTable parse_census_csv(const std::string& text);

}  // namespace ff3
