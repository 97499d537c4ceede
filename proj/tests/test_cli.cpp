#include "gllp/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "gllp/rng.hpp"

using namespace gllp;

namespace {

int run_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> storage = {"gllp"};
  storage.insert(storage.end(), args);
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

struct ThreadEnvGuard {
  explicit ThreadEnvGuard(const char* v) { setenv("GLLP_THREADS", v, 1); }
  ~ThreadEnvGuard() { unsetenv("GLLP_THREADS"); }
};

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, sep)) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("numeric cells round-trip 64-bit doubles exactly") {
  SplitMix64 rng(31);
  for (int i = 0; i < 2000; ++i) {
    double v = 0.0;
    switch (i % 4) {
      case 0: v = rng.normal(); break;
      case 1: v = rng.uniform01() * 1e-300; break;
      case 2: v = rng.normal() * 1e12; break;
      case 3: v = -rng.uniform01(); break;
    }
    CHECK(std::stod(io::fmt(v)) == v);
  }
  CHECK(io::fmt(true) == "1");
  CHECK(io::fmt(std::uint64_t{1000000}) == "1000000");
}

TEST_CASE("table rejects rows of the wrong width") {
  io::Table t({"a", "b"}, ',');
  CHECK_THROWS_AS(t.row(1.0), std::logic_error);
}

TEST_CASE("range parsing") {
  const cli::ValueSpec r = cli::parse_values("0:0.05:0.001", "Delta", false);
  CHECK(r.is_range);
  REQUIRE(r.values.size() == 51);
  CHECK(r.values.front() == 0.0);
  CHECK(r.values.back() == Catch::Approx(0.05).margin(1e-12));

  CHECK_FALSE(cli::parse_values("0.3", "delta", false).is_range);
  CHECK_THROWS_AS(cli::parse_values("1:2", "x", false), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_values("1:2:0", "x", false),
                  std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_values("abc", "x", false), std::invalid_argument);

  SECTION("endpoint within half a step is kept") {
    const cli::ValueSpec h = cli::parse_values("0:0.0495:0.001", "x", false);
    CHECK(h.values.size() == 51);
  }
  SECTION("angle ranges take a deg suffix") {
    const cli::ValueSpec a = cli::parse_values("0:8:0.5deg", "theta", true);
    CHECK(a.values.size() == 17);
    CHECK(a.values[2] == Catch::Approx(std::numbers::pi / 180.0).margin(1e-12));
  }
}

TEST_CASE("angle parsing") {
  CHECK(cli::parse_angle("5.92deg") ==
        Catch::Approx(5.92 * std::numbers::pi / 180.0).margin(1e-12));
  CHECK(cli::parse_angle("0.1") == Catch::Approx(0.1).margin(1e-15));
}

TEST_CASE("rate command") {
  CHECK(run_cli({"rate", "--model", "tagging", "--delta", "0.05", "--Delta",
                 "0.1"}) == cli::kOk);
  SECTION("infeasible model exits 2") {
    CHECK(run_cli({"rate", "--model", "tagging", "--delta", "0.3", "--Delta",
                   "0.5"}) == cli::kInfeasible);
  }
  SECTION("unknown flags and wrong keys exit 1") {
    CHECK(run_cli({"rate", "--model", "tagging", "--delta", "0.05", "--Delta",
                   "0.1", "--bogus", "2"}) == cli::kUsageError);
    CHECK(run_cli({"rate", "--model", "tagging", "--delta", "0.05", "--theta",
                   "0.1"}) == cli::kUsageError);
    CHECK(run_cli({"rate", "--model", "tagging", "--delta", "0.05"}) ==
          cli::kUsageError);
    CHECK(run_cli({"rate", "--model", "nonsense", "--delta", "0.05"}) ==
          cli::kUsageError);
    CHECK(run_cli({"rate", "--model", "tagging", "--delta", "0:1:0.1",
                   "--Delta", "0.1"}) == cli::kUsageError);
  }
  SECTION("theta accepts degrees") {
    CHECK(run_cli({"rate", "--model", "misalignment", "--delta", "0",
                   "--theta", "5.90deg"}) == cli::kOk);
    CHECK(run_cli({"rate", "--model", "misalignment", "--delta", "0",
                   "--theta", "5.93deg"}) == cli::kInfeasible);
  }
}

TEST_CASE("sweep command") {
  const std::string out = tmp_path("sweep.csv");
  CHECK(run_cli({"sweep", "--model", "delta_balanced", "--delta", "0",
                 "--Delta", "0:0.05:0.001", "--out", out}) == cli::kOk);
  const auto rows = lines_of(slurp(out));
  REQUIRE(rows.size() == 52);
  CHECK(rows[0] == "param,delta,Delta_eff,phase_rate,rate_raw,rate,feasible");

  SECTION("the rate column crosses zero between 0.028 and 0.029") {
    double last_positive = -1.0, first_zero = -1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto cells = split(rows[i], ',');
      REQUIRE(cells.size() == 7);
      const double param = std::stod(cells[0]);
      const double rate = std::stod(cells[5]);
      if (rate > 0.0) last_positive = param;
      if (rate == 0.0 && first_zero < 0.0) first_zero = param;
    }
    CHECK(last_positive == Catch::Approx(0.028).margin(1e-12));
    CHECK(first_zero == Catch::Approx(0.029).margin(1e-12));
  }
  SECTION("byte-identical across thread counts") {
    const std::string out1 = tmp_path("sweep_t1.csv");
    const std::string out4 = tmp_path("sweep_t4.csv");
    {
      ThreadEnvGuard env("1");
      CHECK(run_cli({"sweep", "--model", "tagging", "--delta", "0.01",
                     "--Delta", "0:0.4:0.0005", "--out", out1}) == cli::kOk);
    }
    {
      ThreadEnvGuard env("4");
      CHECK(run_cli({"sweep", "--model", "tagging", "--delta", "0.01",
                     "--Delta", "0:0.4:0.0005", "--out", out4}) == cli::kOk);
    }
    CHECK(slurp(out1) == slurp(out4));
    std::remove(out1.c_str());
    std::remove(out4.c_str());
  }
  SECTION("two ranges rejected") {
    CHECK(run_cli({"sweep", "--model", "delta_balanced", "--delta", "0:0.1:0.01",
                   "--Delta", "0:0.1:0.01", "--out", out}) == cli::kUsageError);
  }
  SECTION("tsv format") {
    const std::string tsv = tmp_path("sweep.tsv");
    CHECK(run_cli({"sweep", "--model", "basis_independent", "--delta",
                   "0:0.1:0.05", "--format", "tsv", "--out", tsv}) == cli::kOk);
    const auto trows = lines_of(slurp(tsv));
    CHECK(trows[0] ==
          "param\tdelta\tDelta_eff\tphase_rate\trate_raw\trate\tfeasible");
    std::remove(tsv.c_str());
  }
  std::remove(out.c_str());
}

TEST_CASE("config file with command-line override") {
  const std::string cfg = tmp_path("rate.cfg");
  {
    std::ofstream out(cfg);
    out << "# tagging example\n"
        << "delta = 0.05\n"
        << "Delta = 0.1\n";
  }
  CHECK(run_cli({"rate", "--model", "tagging", "--config", cfg}) == cli::kOk);

  SECTION("command line beats the file") {
    const std::string out = tmp_path("cfg_sweep.csv");
    // Overriding delta pushes the whole sweep infeasible iff it applied.
    CHECK(run_cli({"sweep", "--model", "tagging", "--config", cfg, "--delta",
                   "0.3", "--Delta", "0.1:0.2:0.1", "--out", out}) == cli::kOk);
    const auto rows = lines_of(slurp(out));
    REQUIRE(rows.size() >= 2);
    CHECK(std::stod(split(rows[1], ',')[1]) == Catch::Approx(0.3).margin(0.0));
    std::remove(out.c_str());
  }
  SECTION("unknown config keys rejected") {
    const std::string bad = tmp_path("bad.cfg");
    {
      std::ofstream out(bad);
      out << "no_such_key = 1\n";
    }
    CHECK(run_cli({"rate", "--model", "tagging", "--delta", "0.05", "--Delta",
                   "0.1", "--config", bad}) == cli::kUsageError);
    std::remove(bad.c_str());
  }
  std::remove(cfg.c_str());
}

TEST_CASE("wcp command") {
  const std::string out = tmp_path("wcp.csv");
  CHECK(run_cli({"wcp", "--mu", "0.01", "--eta-det", "0.1",
                 "--delta-intrinsic", "0.01", "--alpha-db-per-km", "0",
                 "--out", out}) == cli::kOk);
  const auto rows = lines_of(slurp(out));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] ==
        "length_km,eta,mu,p0,p1,pM,pD,Delta,delta_bits,sifted_hz,rate,"
        "throughput_hz");
  const auto cells = split(rows[1], ',');
  CHECK(std::stod(cells[11]) == Catch::Approx(392.65).margin(0.01));

  SECTION("length sweep with optimization") {
    CHECK(run_cli({"wcp", "--optimize-mu", "--eta-det", "0.15",
                   "--alpha-db-per-km", "0.25", "--delta-intrinsic", "0.01",
                   "--lengths", "0:20:10", "--out", out}) == cli::kOk);
    CHECK(lines_of(slurp(out)).size() == 4);
  }
  SECTION("dead link exits 2") {
    CHECK(run_cli({"wcp", "--mu", "0.5", "--eta-det", "0.001",
                   "--delta-intrinsic", "0.05"}) == cli::kInfeasible);
  }
  std::remove(out.c_str());
}

TEST_CASE("verify command") {
  const std::string out = tmp_path("verify.csv");
  CHECK(run_cli({"verify", "--suite", "gap_reduction", "--out", out}) ==
        cli::kOk);
  const auto rows = lines_of(slurp(out));
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == "claim_id,params,measured,bound,pass");
  CHECK(split(rows[1], ',')[0] == "gap_reduction");
  CHECK(run_cli({"verify", "--suite", "bogus"}) == cli::kUsageError);
  std::remove(out.c_str());

  SECTION("failure exit code") {
    VerifyReport bad;
    bad.pass = false;
    CHECK(cli::exit_code_for_reports({bad}) == cli::kVerifyFailure);
    CHECK(cli::exit_code_for_reports({}) == cli::kOk);
  }
}

TEST_CASE("simulate command") {
  const std::string out = tmp_path("sim.csv");
  CHECK(run_cli({"simulate", "--scenario", "pony", "--p", "0.1", "--Delta",
                 "0.05", "--n", "100000", "--seed", "7", "--out", out}) ==
        cli::kOk);
  const auto rows = lines_of(slurp(out));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] ==
        "scenario,n_pairs,n_sifted,bit_err,phase_err,delta_hat,delta_p_hat,"
        "gap_hat,ci99");

  SECTION("byte-identical across thread counts") {
    const std::string o1 = tmp_path("sim1.csv"), o4 = tmp_path("sim4.csv");
    {
      ThreadEnvGuard env("1");
      CHECK(run_cli({"simulate", "--scenario", "tagging", "--Delta", "0.2",
                     "--q", "0.05", "--n", "200000", "--seed", "9", "--out",
                     o1}) == cli::kOk);
    }
    {
      ThreadEnvGuard env("4");
      CHECK(run_cli({"simulate", "--scenario", "tagging", "--Delta", "0.2",
                     "--q", "0.05", "--n", "200000", "--seed", "9", "--out",
                     o4}) == cli::kOk);
    }
    CHECK(slurp(o1) == slurp(o4));
    std::remove(o1.c_str());
    std::remove(o4.c_str());
  }
  SECTION("scenario key validation") {
    CHECK(run_cli({"simulate", "--scenario", "pony", "--p", "0.1"}) ==
          cli::kUsageError);
    CHECK(run_cli({"simulate", "--scenario", "null", "--q", "0.1", "--Delta",
                   "0.2"}) == cli::kUsageError);
    CHECK(run_cli({"simulate", "--scenario", "warp", "--q", "0.1"}) ==
          cli::kUsageError);
  }
  SECTION("misalign takes degrees") {
    CHECK(run_cli({"simulate", "--scenario", "misalign", "--theta", "3deg",
                   "--q", "0.01", "--n", "50000"}) == cli::kOk);
  }
  std::remove(out.c_str());
}
