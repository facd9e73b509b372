// ff3rank: tabulate 3-ranks of quadratic function fields over F_q(t) from
// binary cubic forms, verify the tables against an independent ideal-class
// oracle, and compare the rank distribution with the Friedman-Washington
// and Malle mass predictions.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ff3/heuristics.hpp"
#include "ff3/oracle.hpp"
#include "ff3/search.hpp"

using namespace ff3;

namespace {

constexpr u64 kDefaultBudget = 1'000'000;  // max q^g the oracle will attempt

struct CommonOpts {
  u32 q = 0;
  int deg_max = 0;
  std::string case_name = "both";
  u32 h_override = 0;  // 0 = smallest primitive root
  int threads = 1;
  u64 seed = 1;
  std::string out;
  u64 budget = kDefaultBudget;
};

[[noreturn]] void usage_error(const std::string& msg) {
  throw std::invalid_argument(msg);
}

FieldCtx make_ctx(u32 q, u32 h_override) {
  static const std::set<u32> kSupported = {5, 7, 11, 13};
  if (!kSupported.count(q))
    usage_error("--q must be one of 5, 7, 11, 13");
  return h_override == 0 ? FieldCtx::make(q)
                         : FieldCtx::make(q, h_override);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// All output files are written to a sibling temporary and renamed into
// place, so an interrupted run never leaves a partial file behind.
void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) usage_error("cannot write " + tmp);
    out << content;
    if (!out.flush()) usage_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::fputs(content.c_str(), stdout);
  else
    write_file_atomic(out_path, content);
}

// The census CSV stores the primitive root h in every row; the parsed
// table does not carry it, so recover it from the first data row to build
// a context whose normalization conventions match the file.
u32 h_from_census_text(const std::string& text) {
  const size_t nl = text.find('\n');
  if (nl == std::string::npos) usage_error("census file has no data rows");
  const size_t end = text.find('\n', nl + 1);
  const std::string row =
      text.substr(nl + 1, end == std::string::npos ? end : end - nl - 1);
  size_t c1 = row.find(',');
  size_t c2 = c1 == std::string::npos ? c1 : row.find(',', c1 + 1);
  size_t c3 = c2 == std::string::npos ? c2 : row.find(',', c2 + 1);
  if (c3 == std::string::npos) usage_error("census file has no data rows");
  return u32(std::stoul(row.substr(c2 + 1, c3 - c2 - 1)));
}

u64 pick(std::mt19937_64& rng, u64 n) { return rng() % n; }

Poly rand_poly_of_deg(const FieldCtx& ctx, std::mt19937_64& rng, int deg) {
  Poly f;
  f.c.assign(size_t(deg) + 1, 0);
  for (int i = 0; i < deg; ++i) f.c[size_t(i)] = u32(pick(rng, ctx.q));
  f.c[size_t(deg)] = 1 + u32(pick(rng, ctx.q - 1));
  return f;
}

int cmd_tabulate(const CommonOpts& opt) {
  if (opt.q == 0) usage_error("tabulate requires --q");
  if (opt.deg_max < 3) usage_error("--deg-max must be at least 3");
  if (opt.threads < 1) usage_error("--threads must be at least 1");
  const FieldCtx ctx = make_ctx(opt.q, opt.h_override);

  std::vector<DiscKind> kinds;
  if (opt.case_name == "imaginary" || opt.case_name == "both")
    kinds.push_back(DiscKind::imaginary);
  if (opt.case_name == "unusual" || opt.case_name == "both")
    kinds.push_back(DiscKind::unusual);
  if (kinds.empty())
    usage_error("--case must be imaginary, unusual, or both");

  const std::string dir = opt.out.empty() ? std::string(".") : opt.out;
  std::filesystem::create_directories(dir);

  for (DiscKind kind : kinds) {
    // Largest bound degree of the case parity; a search with |D| <= q^n
    // tallies every matching key of degree <= n, so one run per case
    // covers all the degrees at once.
    const bool odd = kind == DiscKind::imaginary;
    int n = opt.deg_max;
    if ((n % 2 == 1) != odd) --n;

    CensusTable tab;
    tab.q = ctx.q;
    tab.kind = kind;
    if (n >= (odd ? 3 : 4)) {
      SearchConfig cfg;
      cfg.ctx = ctx;
      cfg.n = n;
      cfg.kind = kind;
      cfg.threads = opt.threads;
      cfg.serial = opt.threads == 1;
      tab = run_search(cfg);
    }

    const std::string base =
        dir + "/" + "q" + std::to_string(ctx.q) + "_" + kind_name(kind);
    write_file_atomic(base + "_census.csv", census_csv(ctx, tab));
    write_file_atomic(base + "_summary.csv",
                      summary_csv(ctx, tab, std::max(n, 2)));
    std::printf("%s: %zu keys -> %s_census.csv, %s_summary.csv\n",
                kind_name(kind), tab.counts.size(), base.c_str(),
                base.c_str());
  }
  return 0;
}

int cmd_verify(const CommonOpts& opt, const std::string& census_path,
               u64 sample, bool all) {
  const std::string text = read_file(census_path);
  const CensusTable tab = parse_census_csv(text);
  if (tab.counts.empty()) usage_error("census file has no keys to verify");
  const u32 h_file = h_from_census_text(text);
  if (opt.h_override != 0 && opt.h_override != h_file)
    usage_error("--h disagrees with the census file");
  if (opt.q != 0 && opt.q != tab.q)
    usage_error("--q disagrees with the census file");
  const FieldCtx ctx = make_ctx(tab.q, h_file);

  std::vector<const Poly*> keys;
  keys.reserve(tab.counts.size());
  int max_deg = 0;
  for (const auto& [D, c] : tab.counts) {
    keys.push_back(&D);
    max_deg = std::max(max_deg, D.deg());
  }

  std::mt19937_64 rng(opt.seed);
  std::vector<const Poly*> chosen;
  if (all || sample >= keys.size()) {
    chosen = keys;
  } else {
    std::set<u64> idx;
    while (idx.size() < sample) idx.insert(pick(rng, keys.size()));
    for (u64 i : idx) chosen.push_back(keys[i]);
  }

  // Rank-0 probes: squarefree normalized discriminants of the table's case
  // that the (exhaustive) table does not list, half as many as the keys.
  std::vector<Poly> probes;
  const u64 want_probes = (all ? keys.size() : chosen.size()) / 2;
  const u32 neg3 = ctx.from_int(-3);
  while (probes.size() < want_probes) {
    Poly D = rand_poly_of_deg(ctx, rng, max_deg);
    if (!is_squarefree(ctx, D)) continue;
    D = normalize_key(ctx, D);
    if (classify(ctx, pscale(ctx, neg3, D)) != tab.kind) continue;
    if (tab.counts.count(D)) continue;
    probes.push_back(D);
  }

  std::ostringstream os;
  os << "q,case,D,census_rank,oracle_rank,h_ideal,h_jac,status\n";
  bool mismatch = false;
  auto run_one = [&](const Poly& D, int census_rank) {
    const QuadModel rm = QuadModel::make(ctx, pscale(ctx, neg3, D));
    if (qg_cost(rm) > opt.budget)
      usage_error("budget refusal: q^g = " + std::to_string(qg_cost(rm)) +
                  " for D = " + poly_to_text(D));
    const OracleResult r = resolvent_run(ctx, D);
    const bool ok = r.rank == census_rank;
    mismatch = mismatch || !ok;
    os << tab.q << ',' << kind_name(tab.kind) << ",\"" << poly_to_text(D)
       << "\"," << census_rank << ',' << r.rank << ',' << r.h_ideal << ','
       << r.h_jac << ',' << (ok ? "ok" : "mismatch") << '\n';
  };
  for (const Poly* D : chosen) run_one(*D, rank_from_count(tab.counts.at(*D)));
  for (const Poly& D : probes) run_one(D, 0);

  emit(opt.out, os.str());
  if (!opt.out.empty())
    std::printf("verified %zu keys + %zu probes: %s\n", chosen.size(),
                probes.size(), mismatch ? "MISMATCH" : "all ok");
  return mismatch ? 1 : 0;
}

int cmd_stats(const CommonOpts& opt, const std::string& census_path,
              const std::string& model) {
  const std::string text = read_file(census_path);
  const CensusTable tab = parse_census_csv(text);
  if (tab.counts.empty()) usage_error("census file has no keys");
  const FieldCtx ctx = make_ctx(tab.q, h_from_census_text(text));

  bool with_fw = false, with_malle = false;
  if (model == "fw") {
    with_fw = true;
  } else if (model == "malle") {
    with_malle = true;
  } else if (model == "both") {
    with_fw = with_malle = true;
  } else if (model == "auto") {
    // Guidance: fw when F_q lacks the cube roots of unity (q = 2 mod 3),
    // malle when it contains them (q = 1 mod 3).
    (ctx.q % 3 == 2 ? with_fw : with_malle) = true;
  } else {
    usage_error("--model must be fw, malle, both, or auto");
  }

  int deg_max = opt.deg_max;
  if (deg_max == 0)
    for (const auto& [D, c] : tab.counts) deg_max = std::max(deg_max, D.deg());

  emit(opt.out, stats_csv(ctx, tab, deg_max, with_fw, with_malle));
  return 0;
}

int cmd_minima(const CommonOpts& opt, const std::string& census_path) {
  const std::string text = read_file(census_path);
  const CensusTable tab = parse_census_csv(text);
  if (tab.counts.empty()) usage_error("census file has no keys");
  const FieldCtx ctx = make_ctx(tab.q, h_from_census_text(text));

  std::ostringstream os;
  os << "q,case,rank,degD,genus,example\n";
  for (const MinimaRow& m : minima(ctx, tab))
    os << tab.q << ',' << kind_name(tab.kind) << ',' << m.rank << ','
       << m.degD << ',' << m.genus << ",\"" << poly_to_text(m.example)
       << "\"\n";

  // Known rank-3 example discriminants; report membership when the table
  // is for the matching field and case.
  struct Known {
    u32 q;
    DiscKind kind;
    const char* text;
  };
  static const Known kKnown[] = {
      {13, DiscKind::imaginary, "4,0,6,1,0,4"},
      {5, DiscKind::imaginary, "3,0,0,2,0,0,2,0,0,1"},
      {7, DiscKind::unusual, "5,1,3,0,0,0,2,0,6"},
  };
  for (const Known& k : kKnown) {
    if (k.q != tab.q || k.kind != tab.kind) continue;
    const Poly D = parse_poly(ctx.q, k.text);
    const auto it = tab.counts.find(D);
    os << "membership,\"" << k.text << "\","
       << (it == tab.counts.end()
               ? std::string("absent")
               : "present,rank," +
                     std::to_string(rank_from_count(it->second)))
       << '\n';
  }

  emit(opt.out, os.str());
  return 0;
}

int cmd_dualcheck(const CommonOpts& opt, const std::string& disc_text) {
  if (opt.q == 0) usage_error("dualcheck requires --q");
  const FieldCtx ctx = make_ctx(opt.q, opt.h_override);
  if (ctx.q % 3 != 2)
    usage_error("dualcheck requires q = 2 mod 3 (got q = " +
                std::to_string(ctx.q) + ")");
  Poly D;
  try {
    D = parse_poly(ctx.q, disc_text);
  } catch (const std::exception& e) {
    usage_error(std::string("bad --disc: ") + e.what());
  }
  if (D.deg() < 1 || !is_squarefree(ctx, D))
    usage_error("--disc must be nonconstant and squarefree");
  if (classify(ctx, D) != DiscKind::real)
    usage_error("--disc must be of real kind (even degree, square sign)");

  const QuadModel mr = QuadModel::make(ctx, D);
  const Poly Du = normalize_key(ctx, pscale(ctx, ctx.h, D));
  const QuadModel mu = QuadModel::make(ctx, Du);
  if (qg_cost(mr) > opt.budget || qg_cost(mu) > opt.budget)
    usage_error("budget refusal: q^g exceeds --budget");

  const int r_real = three_rank_real(mr);
  const int r_unusual = three_rank(mu);
  if (r_unusual != r_real && r_unusual != r_real + 1)
    throw std::logic_error("dual ranks violate r in {r', r'+1}");
  std::printf("r_real = %d\nr_unusual = %d\n%s (%d -> %d)\n", r_real,
              r_unusual,
              r_unusual == r_real + 1 ? "escalatory" : "non_escalatory",
              r_real, r_unusual);
  return 0;
}

int cmd_heuristic_table() {
  std::printf("model,rank,mass\n");
  for (int r = 0; r <= 4; ++r)
    std::printf("fw,%d,%.6g\n", r, fw_prob(3, r));
  for (int r = 0; r <= 4; ++r)
    std::printf("malle,%d,%.6g\n", r, malle_prob(3, r));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3-rank tabulation for quadratic function fields over F_q(t)"};
  app.set_help_flag("--help", "print help and exit");  // frees -h for --h
  app.require_subcommand(1);

  CommonOpts opt;
  app.add_option("--q", opt.q, "field size (5, 7, 11, or 13)");
  app.add_option("--deg-max", opt.deg_max, "largest discriminant degree");
  app.add_option("--case", opt.case_name,
                 "imaginary, unusual, or both (default both)");
  app.add_option("--h", opt.h_override, "primitive root override");
  app.add_option("--threads", opt.threads, "worker threads (default 1)");
  app.add_option("--seed", opt.seed, "sampling seed (default 1)");
  app.add_option("--out", opt.out,
                 "output directory (tabulate) or file (other commands; "
                 "default stdout)");
  app.add_option("--budget", opt.budget,
                 "largest q^g the oracle will attempt");

  auto* tab = app.add_subcommand("tabulate",
                                 "exhaustive census + summary CSVs");
  std::string census_path;
  u64 sample = 50;
  bool all = false;
  auto* ver = app.add_subcommand("verify",
                                 "independent oracle check of a census");
  ver->add_option("--census", census_path, "census CSV to verify")
      ->required();
  ver->add_option("--sample", sample, "number of keys to sample (default 50)");
  ver->add_flag("--all", all, "verify every key");
  std::string census_stats, census_min, model = "auto", disc_text;
  auto* sta = app.add_subcommand("stats", "empirical vs model rank masses");
  sta->add_option("--census", census_stats, "census CSV")->required();
  sta->add_option("--model", model, "fw, malle, both, or auto (default)");
  auto* mnm = app.add_subcommand("minima", "minimal degree/genus per rank");
  mnm->add_option("--census", census_min, "census CSV")->required();
  auto* dual = app.add_subcommand("dualcheck",
                                  "real vs unusual dual-field ranks");
  dual->add_option("--disc", disc_text, "real discriminant c0,c1,...")
      ->required();
  auto* heu = app.add_subcommand("heuristic-table",
                                 "print the ten rank-mass constants");
  for (CLI::App* s : {tab, ver, sta, mnm, dual, heu}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (tab->parsed()) return cmd_tabulate(opt);
    if (ver->parsed()) return cmd_verify(opt, census_path, sample, all);
    if (sta->parsed()) return cmd_stats(opt, census_stats, model);
    if (mnm->parsed()) return cmd_minima(opt, census_min);
    if (dual->parsed()) return cmd_dualcheck(opt, disc_text);
    if (heu->parsed()) return cmd_heuristic_table();
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
  return 2;
}
