#include "ff3/census.hpp"

#include <stdexcept>

namespace ff3 {

namespace {

u64 upow(u64 b, int e) {
  u64 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int genus_from_degree(int degD) { return (degD - 1) / 2; }

}  // namespace

DiscKind kind_from_name(const std::string& name) {
  if (name == "imaginary") return DiscKind::imaginary;
  if (name == "unusual") return DiscKind::unusual;
  if (name == "real") return DiscKind::real;
  throw std::invalid_argument("unknown discriminant case: " + name);
}

Poly normalize_key(const FieldCtx& ctx, const Poly& D) {
  if (D.zero()) throw std::domain_error("cannot normalize a zero discriminant");
  const u32 s = ctx.mul(ctx.from_int(-3), D.lc());
  const u32 sigma =
      ctx.is_square(s) ? ctx.inv(s) : ctx.mul(ctx.h, ctx.inv(s));
  return pscale(ctx, sigma, D);
}

int rank_from_count(u64 c) {
  u64 v = 2 * c + 1;
  int r = 0;
  while (v > 1) {
    if (v % 3 != 0)
      throw std::domain_error("count " + std::to_string(c) +
                              " is not of the form (3^r - 1)/2");
    v /= 3;
    ++r;
  }
  return r;
}

u64 count_squarefree(const FieldCtx& ctx, DiscKind kind, int degD) {
  FF3_ASSERT(kind != DiscKind::real);
  FF3_ASSERT(degD >= 1);
  FF3_ASSERT(((degD & 1) == 1) == (kind == DiscKind::imaginary));
  const u64 monic =
      degD >= 2 ? upow(ctx.q, degD) - upow(ctx.q, degD - 1) : ctx.q;
  return kind == DiscKind::imaginary ? 2 * monic : monic;
}

std::vector<SummaryRow> distribution(const FieldCtx& ctx, const CensusTable& t,
                                     int deg_max) {
  std::map<int, std::map<int, u64>> hist;  // degD -> rank -> #keys
  int rank_max = 0;
  for (const auto& [D, cnt] : t.counts) {
    const int r = rank_from_count(cnt);
    hist[D.deg()][r] += 1;
    rank_max = std::max(rank_max, r);
  }
  std::vector<SummaryRow> rows;
  const int start = t.kind == DiscKind::imaginary ? 3 : 4;
  for (int deg = start; deg <= deg_max; deg += 2) {
    const u64 total = count_squarefree(ctx, t.kind, deg);
    u64 tallied = 0;
    for (const auto& [r, n] : hist[deg]) tallied += n;
    FF3_ASSERT(tallied <= total);
    for (int r = 0; r <= rank_max; ++r) {
      SummaryRow row;
      row.degD = deg;
      row.genus = genus_from_degree(deg);
      row.rank = r;
      row.num_fields = r == 0 ? total - tallied : hist[deg][r];
      row.total_squarefree = total;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<MinimaRow> minima(const FieldCtx& ctx, const CensusTable& t) {
  std::map<int, MinimaRow> best;
  // map order is (degree, lex) ascending, so the first key seen per rank is
  // the lex-smallest example at the minimal degree
  for (const auto& [D, cnt] : t.counts) {
    const int r = rank_from_count(cnt);
    if (best.find(r) == best.end())
      best[r] = MinimaRow{r, D.deg(), genus_of_disc(D), D};
  }
  std::vector<MinimaRow> rows;
  rows.reserve(best.size());
  for (const auto& [r, row] : best) rows.push_back(row);
  return rows;
}

void merge_census(CensusTable& into, const CensusTable& from) {
  if (into.q != from.q || into.kind != from.kind)
    throw std::invalid_argument("census merge: table metadata differs");
  for (const auto& [k, v] : from.counts) into.counts[k] += v;
}

std::string census_csv(const FieldCtx& ctx, const CensusTable& t) {
  std::string s = "q,case,h,degD,D,count,rank\n";
  for (const auto& [D, cnt] : t.counts) {
    s += std::to_string(t.q);
    s += ',';
    s += kind_name(t.kind);
    s += ',';
    s += std::to_string(ctx.h);
    s += ',';
    s += std::to_string(D.deg());
    s += ",\"";
    s += poly_to_text(D);
    s += "\",";
    s += std::to_string(cnt);
    s += ',';
    s += std::to_string(rank_from_count(cnt));
    s += '\n';
  }
  return s;
}

std::string summary_csv(const FieldCtx& ctx, const CensusTable& t,
                        int deg_max) {
  std::string s = "q,case,degD,genus,rank,num_fields,total_squarefree\n";
  for (const SummaryRow& r : distribution(ctx, t, deg_max)) {
    s += std::to_string(t.q);
    s += ',';
    s += kind_name(t.kind);
    s += ',';
    s += std::to_string(r.degD);
    s += ',';
    s += std::to_string(r.genus);
    s += ',';
    s += std::to_string(r.rank);
    s += ',';
    s += std::to_string(r.num_fields);
    s += ',';
    s += std::to_string(r.total_squarefree);
    s += '\n';
  }
  return s;
}

namespace {

[[noreturn]] void bad_csv(const std::string& why) {
  throw std::invalid_argument("census csv: " + why);
}

std::vector<std::string> split_fields(const std::string& line) {
  // one optional double-quoted field (the discriminant); quotes never nest
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (quoted) bad_csv("unterminated quote");
  out.push_back(cur);
  return out;
}

u64 parse_u64(const std::string& s) {
  if (s.empty()) bad_csv("empty numeric field");
  u64 v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') bad_csv("non-numeric field: " + s);
    v = v * 10 + u64(ch - '0');
  }
  return v;
}

}  // namespace

CensusTable parse_census_csv(const std::string& text) {
  const std::string header = "q,case,h,degD,D,count,rank";
  size_t pos = 0;
  auto next_line = [&](std::string& line) -> bool {
    if (pos >= text.size()) return false;
    const size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      line = text.substr(pos);
      pos = text.size();
    } else {
      line = text.substr(pos, nl - pos);
      pos = nl + 1;
    }
    return true;
  };

  std::string line;
  if (!next_line(line) || line != header) bad_csv("missing or wrong header");

  CensusTable t;
  bool have_ctx = false;
  FieldCtx ctx = FieldCtx::make(5);
  u32 want_h = 0;
  while (next_line(line)) {
    if (line.empty()) {
      if (pos >= text.size()) break;  // trailing newline
      bad_csv("blank row");
    }
    const auto f = split_fields(line);
    if (f.size() != 7) bad_csv("expected 7 fields, got row: " + line);
    const u64 q64 = parse_u64(f[0]);
    const DiscKind kind = kind_from_name(f[1]);
    if (kind == DiscKind::real) bad_csv("real tables are not produced");
    const u64 h64 = parse_u64(f[2]);
    if (!have_ctx) {
      try {
        ctx = FieldCtx::make(u32(q64), u32(h64));
      } catch (const std::exception& e) {
        bad_csv(std::string("bad field parameters: ") + e.what());
      }
      t.q = u32(q64);
      t.kind = kind;
      want_h = u32(h64);
      have_ctx = true;
    } else if (q64 != t.q || kind != t.kind || h64 != want_h) {
      bad_csv("rows disagree on q/case/h");
    }
    Poly D;
    try {
      D = parse_poly(ctx.q, f[4]);
    } catch (const std::exception& e) {
      bad_csv(std::string("bad discriminant: ") + e.what());
    }
    if (D.deg() < 1 || u64(D.deg()) != parse_u64(f[3]))
      bad_csv("degree column disagrees with D");
    if (((D.deg() & 1) == 1) != (kind == DiscKind::imaginary))
      bad_csv("degree parity disagrees with case");
    const u32 lc3 = ctx.mul(ctx.from_int(-3), D.lc());
    if (lc3 != 1 && lc3 != ctx.h) bad_csv("discriminant is not normalized");
    if (kind == DiscKind::unusual && lc3 != ctx.h)
      bad_csv("even-degree discriminant in the square class is real");
    const u64 cnt = parse_u64(f[5]);
    if (cnt == 0) bad_csv("zero count row");
    int r = 0;
    try {
      r = rank_from_count(cnt);
    } catch (const std::exception& e) {
      bad_csv(e.what());
    }
    if (u64(r) != parse_u64(f[6])) bad_csv("rank column disagrees with count");
    if (!t.counts.emplace(D, cnt).second) bad_csv("duplicate discriminant");
  }
  if (!have_ctx) {
    // header-only input: an empty census is valid but carries no metadata;
    // default to the header's promise and leave counts empty
    bad_csv("no rows; cannot recover q/case metadata");
  }
  return t;
}

}  // namespace ff3
