// End-to-end checks of the command-line tool: exit codes, CSV shape and
// determinism, config round-trip, golden outputs.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(STS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> lines;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("cli tunnel: closed, series, oracle and classical columns agree where they should") {
  const RunResult r = run_cli("tunnel --v0 100 --emax 10");
  REQUIRE(r.exit_code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] ==
        "e_max,t_closed_re,t_closed_im,t_series_re,t_series_im,t_oracle_re,t_oracle_im,"
        "t_classical_avg,flag");
  const auto f = fields_of(ls[1]);
  REQUIRE(f.size() == 9);
  const double closed_im = std::stod(f[2]);
  const double oracle_im = std::stod(f[6]);
  CHECK(std::stod(f[1]) == 0.0);  // purely imaginary below the barrier
  CHECK(std::abs(closed_im - oracle_im) <= 1e-6 * std::abs(closed_im));
  CHECK(f[8] == "ok");
}

TEST_CASE("cli tunnel: domain violations exit 2") {
  CHECK(run_cli("tunnel --v0 100 --emax 0").exit_code == 2);
  CHECK(run_cli("tunnel --v0 100 --emax 120").exit_code == 2);
  CHECK(run_cli("tunnel --v0 100 --emax 10 --length -1").exit_code == 2);
}

TEST_CASE("cli tunnel: anchor at the characteristic time for a tiny window") {
  const RunResult r = run_cli("tunnel --v0 100 --emax 1e-2");  // e_max/V0 = 1e-4
  REQUIRE(r.exit_code == 0);
  const auto f = fields_of(lines_of(r.out)[1]);
  const double im = std::stod(f[2]);
  const double tau0 = 1.0 / std::sqrt(200.0);
  CHECK(im / tau0 >= 0.99997);
  CHECK(im / tau0 <= 1.00003);
}

TEST_CASE("cli sweep: below-barrier rows purely imaginary, k0 row flagged") {
  const std::string out = temp_path("sweep.csv");
  const RunResult r =
      run_cli("sweep --k0l 9.42477796076938 --kgrid 0.2:1.2:6 --out " + out);
  REQUIRE(r.exit_code == 0);
  const auto ls = lines_of(slurp(out));
  REQUIRE(ls.size() == 7);
  CHECK(ls[0] == "k_over_k0,re_T_sts_over_tau0,im_T_sts_over_tau0,tau_phase,tau_dwell,"
                 "tau_larmor,tau_bl,flag");
  // rows at k/k0 = 0.2 .. 1.2 step 0.2; row 5 is k/k0 = 1 exactly
  for (int i = 1; i <= 4; ++i) {
    const auto f = fields_of(ls[i]);
    REQUIRE(f.size() == 8);
    CHECK(std::stod(f[1]) == 0.0);
    CHECK(f[7] == "ok");
  }
  const auto at_k0 = fields_of(ls[5]);
  CHECK(at_k0[7] == "singular");
  CHECK(at_k0[3].empty());  // no finite comparison times at the branch point
  const auto above = fields_of(ls[6]);
  CHECK(above[7] == "singular");      // comparison times undefined above the barrier
  CHECK(!above[1].empty());           // but T_sts is
  CHECK(std::stod(above[1]) != 0.0);  // and has a real part there
  std::remove(out.c_str());
}

TEST_CASE("cli sweep: strong barrier rows track the larmor time inside the barrier") {
  const std::string out = temp_path("sweep_strong.csv");
  const RunResult r = run_cli("sweep --k0l 94.2477796076938 --kgrid 0.5:0.5:1 --out " + out);
  REQUIRE(r.exit_code == 0);
  const auto f = fields_of(lines_of(slurp(out))[1]);
  const double im_t = std::stod(f[2]);
  const double larmor = std::stod(f[5]);
  CHECK(std::abs(im_t - larmor) / larmor <= 0.01);
  std::remove(out.c_str());
}

TEST_CASE("cli sweep: weak barrier disagrees with the larmor time") {
  const std::string out = temp_path("sweep_weak.csv");
  const RunResult r = run_cli("sweep --k0l 0.314159265358979 --kgrid 0.5:0.5:1 --out " + out);
  REQUIRE(r.exit_code == 0);
  const auto f = fields_of(lines_of(slurp(out))[1]);
  const double im_t = std::stod(f[2]);
  const double larmor = std::stod(f[5]);
  CHECK(std::abs(im_t - larmor) / larmor > 0.10);
  std::remove(out.c_str());
}

TEST_CASE("cli density: non-negative rho, no bare NaN, continuity of adjacent columns") {
  const std::string out = temp_path("density.csv");
  const RunResult r = run_cli(
      "density --v0 100 --emax 10 --xrange -1:2 --trange 0:15 --nx 7 --nt 5 --out " + out);
  REQUIRE(r.exit_code == 0);
  const auto ls = lines_of(slurp(out));
  REQUIRE(ls.size() == 1 + 7 * 5);
  CHECK(ls[0] == "x,t,rho,flag");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields_of(ls[i]);
    REQUIRE(f.size() == 4);
    if (f[3] == "ok" || f[3] == "noconv") {
      REQUIRE(!f[2].empty());
      CHECK(std::stod(f[2]) >= 0.0);
    } else {
      CHECK(f[2].empty());
    }
  }
  std::remove(out.c_str());
}

TEST_CASE("cli reference: family values at E = V0/2") {
  const RunResult r = run_cli("reference --v0 100 --emax 50");
  REQUIRE(r.exit_code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 2);
  const auto f = fields_of(ls[1]);
  REQUIRE(f.size() == 12);
  CHECK(std::stod(f[1]) == doctest::Approx(0.02).epsilon(1e-12));   // tau_phase
  CHECK(std::stod(f[2]) == doctest::Approx(0.01).epsilon(1e-12));   // tau_dwell
  CHECK(std::stod(f[3]) == doctest::Approx(0.1).epsilon(1e-12));    // tau_larmor
  CHECK(std::stod(f[6]) == doctest::Approx(-0.1).epsilon(1e-12));   // Im tau_complex
  CHECK(run_cli("reference --v0 100 --emax 100").exit_code == 2);   // kappa pole
}

TEST_CASE("cli verify: default config passes, coarse grid still passes") {
  CHECK(run_cli("verify").exit_code == 0);
  const RunResult coarse = run_cli("verify --grid-n 8");
  CHECK(coarse.exit_code == 0);
  CHECK(coarse.out.find("measured order") != std::string::npos);
  CHECK(run_cli("verify --length 0").exit_code == 2);
}

TEST_CASE("cli: csv output is byte-deterministic") {
  const RunResult a = run_cli("tunnel --v0 100 --emax 10");
  const RunResult b = run_cli("tunnel --v0 100 --emax 10");
  CHECK(a.out == b.out);
  const RunResult c = run_cli("density --nx 3 --nt 3");
  const RunResult d = run_cli("density --nx 3 --nt 3");
  CHECK(c.out == d.out);
}

TEST_CASE("cli: config file is applied and command line wins") {
  const std::string cfgpath = temp_path("cfg.txt");
  {
    std::ofstream cfg(cfgpath);
    cfg << "# test configuration\n";
    cfg << "v0=50\n";
    cfg << "emax=5\n";
  }
  const RunResult file_only = run_cli("tunnel --config " + cfgpath);
  REQUIRE(file_only.exit_code == 0);
  CHECK(std::stod(fields_of(lines_of(file_only.out)[1])[0]) == 5.0);

  const RunResult overridden = run_cli("tunnel --config " + cfgpath + " --emax 7");
  REQUIRE(overridden.exit_code == 0);
  CHECK(std::stod(fields_of(lines_of(overridden.out)[1])[0]) == 7.0);

  CHECK(run_cli("tunnel --config missing_file.txt").exit_code == 2);
  {
    std::ofstream cfg(cfgpath);
    cfg << "nonsense=1\n";
  }
  CHECK(run_cli("tunnel --config " + cfgpath).exit_code == 2);
  std::remove(cfgpath.c_str());
}

TEST_CASE("cli: dumped config re-parses to the same effective config") {
  const RunResult dump =
      run_cli("tunnel --v0 77 --emax 3.5 --rel-tol 1e-10 --dump-config");
  REQUIRE(dump.exit_code == 0);

  const std::string cfgpath = temp_path("roundtrip.txt");
  {
    std::ofstream cfg(cfgpath, std::ios::binary);
    cfg << dump.out;
  }
  const RunResult redump = run_cli("tunnel --config " + cfgpath + " --dump-config");
  REQUIRE(redump.exit_code == 0);
  CHECK(redump.out == dump.out);
  std::remove(cfgpath.c_str());
}

TEST_CASE("cli: golden outputs stay frozen") {
  const std::string golden_dir = STS_GOLDEN_DIR;
  SUBCASE("tunnel row") {
    const RunResult r = run_cli("tunnel --v0 100 --emax 10");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == slurp(golden_dir + "/tunnel_v0_100_emax_10.csv"));
  }
  SUBCASE("sweep slice") {
    const std::string out = temp_path("golden_sweep.csv");
    const RunResult r =
        run_cli("sweep --k0l 9.42477796076938 --kgrid 0.2:1.8:9 --out " + out);
    REQUIRE(r.exit_code == 0);
    CHECK(slurp(out) == slurp(golden_dir + "/sweep_k0l_3pi.csv"));
    std::remove(out.c_str());
  }
  SUBCASE("reference row") {
    const RunResult r = run_cli("reference --v0 100 --emax 50");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == slurp(golden_dir + "/reference_v0_100_e_50.csv"));
  }
}
