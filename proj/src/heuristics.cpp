#include "ff3/heuristics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ff3 {

double eta_inf(double p, int K) {
  if (!(p > 1.0)) throw std::domain_error("eta_inf needs p > 1");
  if (K < 1) throw std::domain_error("eta_inf needs K >= 1");
  double prod = 1.0;
  double pk = 1.0;
  for (int k = 1; k <= K; ++k) {
    pk /= p;
    prod *= 1.0 - pk;
  }
  return prod;
}

namespace {

// prod_{k=1..r} (1 - p^-k), the partial eta product entering both masses.
double eta_partial(double p, int r) {
  double prod = 1.0;
  double pk = 1.0;
  for (int k = 1; k <= r; ++k) {
    pk /= p;
    prod *= 1.0 - pk;
  }
  return prod;
}

void check_rank_arg(double p, int r) {
  if (!(p > 1.0)) throw std::domain_error("rank mass needs p > 1");
  if (r < 0) throw std::domain_error("rank mass needs r >= 0");
}

}  // namespace

double fw_prob(double p, int r) {
  check_rank_arg(p, r);
  const double ep = eta_partial(p, r);
  return std::pow(p, -double(r) * r) * eta_inf(p) / (ep * ep);
}

double malle_prob(double p, int r) {
  check_rank_arg(p, r);
  return std::pow(p, -0.5 * r * (r + 1)) * (eta_inf(p) / eta_inf(p * p)) /
         eta_partial(p, r);
}

std::vector<CompareRow> compare_rows(const FieldCtx& ctx, const CensusTable& t,
                                     int deg_max, bool with_fw,
                                     bool with_malle) {
  std::vector<CompareRow> rows;
  for (const SummaryRow& s : distribution(ctx, t, deg_max)) {
    // distribution sorts by (degD, rank); "fw" < "malle" alphabetically.
    if (with_fw)
      rows.push_back({s.degD, s.rank, s.num_fields, s.total_squarefree, "fw",
                      fw_prob(3.0, s.rank)});
    if (with_malle)
      rows.push_back({s.degD, s.rank, s.num_fields, s.total_squarefree,
                      "malle", malle_prob(3.0, s.rank)});
  }
  return rows;
}

std::string stats_csv(const FieldCtx& ctx, const CensusTable& t, int deg_max,
                      bool with_fw, bool with_malle) {
  std::ostringstream os;
  os << "q,case,degD,rank,empirical_num,empirical_den,empirical,model,"
        "model_prob,diff\n";
  os.setf(std::ios::fixed);
  os.precision(6);
  for (const CompareRow& r :
       compare_rows(ctx, t, deg_max, with_fw, with_malle)) {
    const double emp = r.den == 0 ? 0.0 : double(r.num) / double(r.den);
    os << ctx.q << ',' << kind_name(t.kind) << ',' << r.degD << ',' << r.rank
       << ',' << r.num << ',' << r.den << ',' << emp << ',' << r.model << ','
       << r.model_prob << ',' << (emp - r.model_prob) << '\n';
  }
  return os.str();
}

}  // namespace ff3
