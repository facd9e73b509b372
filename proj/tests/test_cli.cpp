#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ff3/census.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cmd(const std::string& args) {
  const std::string cmd = std::string(FF3RANK_BIN) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
  REQUIRE(out.good());
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ff3cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string s(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cmd("").code == 2);
    CHECK(run_cmd("frobnicate").code == 2);
    CHECK(run_cmd("tabulate --nope 5").code == 2);   // unknown flag
    CHECK(run_cmd("tabulate --q 5").code == 2);      // missing --deg-max
    CHECK(run_cmd("tabulate --q 6 --deg-max 3").code == 2);
    CHECK(run_cmd("tabulate --q 5 --deg-max 2").code == 2);
    CHECK(run_cmd("verify").code == 2);              // missing --census
    CHECK(run_cmd("verify --census /nonexistent.csv").code == 2);
    CHECK(run_cmd("dualcheck --q 7 --disc 3,0,1").code == 2);
    CHECK(run_cmd("dualcheck --q 5 --disc not,a,poly").code == 2);
    CHECK(run_cmd("dualcheck --q 5 --disc 1,0,0,1").code == 2);  // imaginary
    CHECK(run_cmd("stats --census /nonexistent.csv").code == 2);
    CHECK(run_cmd("--help").code == 0);
  }

  TEST_CASE("heuristic-table prints the ten constants") {
    const RunResult r = run_cmd("heuristic-table");
    CHECK(r.code == 0);
    CHECK(r.out.find("model,rank,mass") == 0);
    CHECK(r.out.find("fw,1,0.420095") != std::string::npos);
    CHECK(r.out.find("fw,2,0.0196919") != std::string::npos);
    CHECK(r.out.find("malle,1,0.319502") != std::string::npos);
    CHECK(r.out.find("malle,4,1.92009e-05") != std::string::npos);
  }

  TEST_CASE("tabulate matches the golden census and round-trips") {
    TempDir tmp;
    const RunResult r = run_cmd("tabulate --q 5 --deg-max 3 --case imaginary"
                                " --out " + tmp.s(""));
    CHECK(r.code == 0);
    const std::string census = slurp(tmp.path / "q5_imaginary_census.csv");
    CHECK(census == slurp(fs::path(FF3_GOLDEN_DIR) / "census_q5_deg3.csv"));
    CHECK(!fs::exists(tmp.path / "q5_imaginary_census.csv.tmp"));

    // Parse -> serialize is the identity.
    const ff3::CensusTable t = ff3::parse_census_csv(census);
    const auto ctx = ff3::FieldCtx::make(5);
    CHECK(ff3::census_csv(ctx, t) == census);

    const std::string summary = slurp(tmp.path / "q5_imaginary_summary.csv");
    CHECK(summary.find("5,imaginary,3,1,1,80,200") != std::string::npos);
  }

  TEST_CASE("tabulate output is identical across thread counts") {
    TempDir a, b;
    CHECK(run_cmd("tabulate --q 5 --deg-max 4 --case unusual --threads 1"
                  " --out " + a.s("")).code == 0);
    CHECK(run_cmd("tabulate --q 5 --deg-max 4 --case unusual --threads 3"
                  " --out " + b.s("")).code == 0);
    CHECK(slurp(a.path / "q5_unusual_census.csv") ==
          slurp(b.path / "q5_unusual_census.csv"));
    CHECK(slurp(a.path / "q5_unusual_summary.csv") ==
          slurp(b.path / "q5_unusual_summary.csv"));
  }

  TEST_CASE("tabulate with no degree of the case parity is header-only") {
    TempDir tmp;
    CHECK(run_cmd("tabulate --q 5 --deg-max 3 --case unusual --out " +
                  tmp.s("")).code == 0);
    CHECK(slurp(tmp.path / "q5_unusual_census.csv") ==
          "q,case,h,degD,D,count,rank\n");
    CHECK(slurp(tmp.path / "q5_unusual_summary.csv") ==
          "q,case,degD,genus,rank,num_fields,total_squarefree\n");
  }

  TEST_CASE("verify accepts a correct census") {
    TempDir tmp;
    REQUIRE(run_cmd("tabulate --q 5 --deg-max 3 --case imaginary --out " +
                    tmp.s("")).code == 0);
    const RunResult r =
        run_cmd("verify --census " + tmp.s("q5_imaginary_census.csv") +
                " --sample 10 --seed 42 --out " + tmp.s("report.csv"));
    CHECK(r.code == 0);
    const std::string report = slurp(tmp.path / "report.csv");
    CHECK(report.find("q,case,D,census_rank,oracle_rank,h_ideal,h_jac,"
                      "status") == 0);
    CHECK(report.find(",mismatch") == std::string::npos);
    // 10 keys + 5 rank-0 probes.
    CHECK(std::count(report.begin(), report.end(), '\n') == 16);
    CHECK(report.find(",0,0,") != std::string::npos);  // some probe row

    // Same seed, same report bytes.
    const RunResult r2 =
        run_cmd("verify --census " + tmp.s("q5_imaginary_census.csv") +
                " --sample 10 --seed 42 --out " + tmp.s("report2.csv"));
    CHECK(r2.code == 0);
    CHECK(report == slurp(tmp.path / "report2.csv"));
  }

  TEST_CASE("verify flags a doctored count and exits 1") {
    TempDir tmp;
    REQUIRE(run_cmd("tabulate --q 5 --deg-max 3 --case imaginary --out " +
                    tmp.s("")).code == 0);
    std::string census = slurp(tmp.path / "q5_imaginary_census.csv");
    // Claim rank 2 (count 4) on the first key; the file stays well-formed.
    const std::string row = "5,imaginary,2,3,\"1,0,0,1\",1,1";
    const size_t at = census.find(row);
    REQUIRE(at != std::string::npos);
    census.replace(at, row.size(), "5,imaginary,2,3,\"1,0,0,1\",4,2");
    spit(tmp.path / "doctored.csv", census);

    const RunResult r = run_cmd("verify --census " + tmp.s("doctored.csv") +
                                " --all --out " + tmp.s("report.csv"));
    CHECK(r.code == 1);
    const std::string report = slurp(tmp.path / "report.csv");
    CHECK(report.find("\"1,0,0,1\",2,1,6,6,mismatch") != std::string::npos);
  }

  TEST_CASE("verify refuses work beyond the budget") {
    TempDir tmp;
    REQUIRE(run_cmd("tabulate --q 5 --deg-max 3 --case imaginary --out " +
                    tmp.s("")).code == 0);
    const RunResult r = run_cmd(
        "verify --census " + tmp.s("q5_imaginary_census.csv") +
        " --sample 5 --budget 1");
    CHECK(r.code == 2);
    CHECK(r.out.find("budget") != std::string::npos);
  }

  TEST_CASE("stats emits the chosen models") {
    TempDir tmp;
    REQUIRE(run_cmd("tabulate --q 5 --deg-max 3 --case imaginary --out " +
                    tmp.s("")).code == 0);
    const std::string census = tmp.s("q5_imaginary_census.csv");

    RunResult r = run_cmd("stats --census " + census + " --model both");
    CHECK(r.code == 0);
    CHECK(r.out.find("5,imaginary,3,1,80,200,0.400000,fw,") !=
          std::string::npos);
    CHECK(r.out.find("5,imaginary,3,1,80,200,0.400000,malle,") !=
          std::string::npos);

    // auto at q = 5 (no cube roots of unity) picks fw only.
    r = run_cmd("stats --census " + census);
    CHECK(r.code == 0);
    CHECK(r.out.find(",fw,") != std::string::npos);
    CHECK(r.out.find(",malle,") == std::string::npos);

    CHECK(run_cmd("stats --census " + census + " --model nope").code == 2);
  }

  TEST_CASE("minima lists per-rank minimal degrees") {
    TempDir tmp;
    REQUIRE(run_cmd("tabulate --q 5 --deg-max 5 --case imaginary --out " +
                    tmp.s("")).code == 0);
    const RunResult r =
        run_cmd("minima --census " + tmp.s("q5_imaginary_census.csv"));
    CHECK(r.code == 0);
    CHECK(r.out.find("q,case,rank,degD,genus,example") == 0);
    CHECK(r.out.find("5,imaginary,1,3,1,\"1,0,0,1\"") != std::string::npos);
    CHECK(r.out.find("5,imaginary,2,5,2,") != std::string::npos);
    CHECK(r.out.find("membership,\"3,0,0,2,0,0,2,0,0,1\",absent") !=
          std::string::npos);
  }

  TEST_CASE("dualcheck reports the rank pair") {
    const RunResult r = run_cmd("dualcheck --q 5 --disc 3,0,1");
    CHECK(r.code == 0);
    CHECK(r.out == "r_real = 0\nr_unusual = 0\nnon_escalatory (0 -> 0)\n");
  }
}
