#pragma once

#include <string>
#include <vector>

#include "ff3/census.hpp"

namespace ff3 {

// prod_{k=1..K} (1 - p^-k); K = 64 is far past double convergence for p >= 3.
double eta_inf(double p, int K = 64);

// Friedman-Washington mass of rank r: p^(-r^2) eta_inf(p)
// prod_{k=1..r} (1 - p^-k)^(-2).
double fw_prob(double p, int r);

// Variant for base fields containing the cube roots of unity:
// p^(-(r^2+r)/2) (eta_inf(p)/eta_inf(p^2)) prod_{k=1..r} (1 - p^-k)^(-1).
double malle_prob(double p, int r);

struct CompareRow {
  int degD = 0;
  int rank = 0;
  u64 num = 0;         // fields of this rank at this degree
  u64 den = 0;         // all fields at this degree
  std::string model;   // "fw" or "malle"
  double model_prob = 0.0;
};

// Per-degree empirical rank proportions against the chosen model(s);
// rows ordered by (degD, rank, model name).
std::vector<CompareRow> compare_rows(const FieldCtx& ctx, const CensusTable& t,
                                     int deg_max, bool with_fw,
                                     bool with_malle);

// CSV: q,case,degD,rank,empirical_num,empirical_den,empirical,model,
// model_prob,diff with 6-decimal fixed display for the real columns.
std::string stats_csv(const FieldCtx& ctx, const CensusTable& t, int deg_max,
                      bool with_fw, bool with_malle);

}  // namespace ff3
