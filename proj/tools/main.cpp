// Command-line front end: reproduces the density map, tunnelling-time sweep
// and comparison-time table as machine-readable CSV, and runs the built-in
// verification checks.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input or domain
// error, 3 numerical non-convergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sts/csv.hpp"
#include "sts/fractional.hpp"
#include "sts/oracle.hpp"
#include "sts/phys.hpp"
#include "sts/quadrature.hpp"
#include "sts/reference_times.hpp"
#include "sts/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNoConvergence = 3;

struct RunConfig {
  double mass = 1.0;
  double hbar = 1.0;
  double v0 = 100.0;
  double length = 1.0;
  double emax = 10.0;
  std::vector<double> k0l = {sts::pi / 10.0, 3.0 * sts::pi, 30.0 * sts::pi};
  std::string kgrid = "0.05:2:40";
  std::string xrange = "-1:2";
  std::string trange = "0:15";
  int nx = 30;
  int nt = 30;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int grid_n = 129;
  std::string out;
};

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  const double v = parse_double(s);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) throw std::invalid_argument("not an integer: '" + s + "'");
  return i;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& p : split(s, ',')) out.push_back(parse_double(p));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

struct Range {
  double lo, hi;
};

Range parse_range(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw std::invalid_argument("range must be lo:hi, got '" + s + "'");
  return {parse_double(parts[0]), parse_double(parts[1])};
}

std::vector<double> parse_grid_spec(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw std::invalid_argument("grid must be lo:hi:n, got '" + s + "'");
  const double lo = parse_double(parts[0]);
  const double hi = parse_double(parts[1]);
  const int n = parse_int(parts[2]);
  if (n < 1) throw std::invalid_argument("grid point count must be >= 1");
  if (n == 1) return {lo};
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Flat key=value configuration; command-line values win over file values.

struct KeyBinding {
  std::function<void(const std::string&)> set;
  std::function<std::string()> get;
  CLI::Option* opt;  // to detect command-line presence
};

using KeyMap = std::map<std::string, KeyBinding>;

const std::vector<std::string> kKeyOrder = {
    "mass", "hbar", "v0", "length", "emax", "k0l", "kgrid", "xrange",
    "trange", "nx", "nt", "rel-tol", "abs-tol", "grid-n", "out"};

KeyMap make_key_map(RunConfig& cfg, CLI::App* sub) {
  KeyMap keys;
  keys["mass"] = {[&cfg](const std::string& v) { cfg.mass = parse_double(v); },
                  [&cfg] { return fmt_g17(cfg.mass); }, sub->get_option("--mass")};
  keys["hbar"] = {[&cfg](const std::string& v) { cfg.hbar = parse_double(v); },
                  [&cfg] { return fmt_g17(cfg.hbar); }, sub->get_option("--hbar")};
  keys["v0"] = {[&cfg](const std::string& v) { cfg.v0 = parse_double(v); },
                [&cfg] { return fmt_g17(cfg.v0); }, sub->get_option("--v0")};
  keys["length"] = {[&cfg](const std::string& v) { cfg.length = parse_double(v); },
                    [&cfg] { return fmt_g17(cfg.length); }, sub->get_option("--length")};
  keys["emax"] = {[&cfg](const std::string& v) { cfg.emax = parse_double(v); },
                  [&cfg] { return fmt_g17(cfg.emax); }, sub->get_option("--emax")};
  keys["k0l"] = {[&cfg](const std::string& v) { cfg.k0l = parse_double_list(v); },
                 [&cfg] {
                   std::string s;
                   for (std::size_t i = 0; i < cfg.k0l.size(); ++i)
                     s += (i ? "," : "") + fmt_g17(cfg.k0l[i]);
                   return s;
                 },
                 sub->get_option("--k0l")};
  keys["kgrid"] = {[&cfg](const std::string& v) { cfg.kgrid = v; },
                   [&cfg] { return cfg.kgrid; }, sub->get_option("--kgrid")};
  keys["xrange"] = {[&cfg](const std::string& v) { cfg.xrange = v; },
                    [&cfg] { return cfg.xrange; }, sub->get_option("--xrange")};
  keys["trange"] = {[&cfg](const std::string& v) { cfg.trange = v; },
                    [&cfg] { return cfg.trange; }, sub->get_option("--trange")};
  keys["nx"] = {[&cfg](const std::string& v) { cfg.nx = parse_int(v); },
                [&cfg] { return std::to_string(cfg.nx); }, sub->get_option("--nx")};
  keys["nt"] = {[&cfg](const std::string& v) { cfg.nt = parse_int(v); },
                [&cfg] { return std::to_string(cfg.nt); }, sub->get_option("--nt")};
  keys["rel-tol"] = {[&cfg](const std::string& v) { cfg.rel_tol = parse_double(v); },
                     [&cfg] { return fmt_g17(cfg.rel_tol); }, sub->get_option("--rel-tol")};
  keys["abs-tol"] = {[&cfg](const std::string& v) { cfg.abs_tol = parse_double(v); },
                     [&cfg] { return fmt_g17(cfg.abs_tol); }, sub->get_option("--abs-tol")};
  keys["grid-n"] = {[&cfg](const std::string& v) { cfg.grid_n = parse_int(v); },
                    [&cfg] { return std::to_string(cfg.grid_n); }, sub->get_option("--grid-n")};
  keys["out"] = {[&cfg](const std::string& v) { cfg.out = v; },
                 [&cfg] { return cfg.out; }, sub->get_option("--out")};
  return keys;
}

void apply_config_file(const std::string& path, KeyMap& keys) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  const auto trim = [](const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" +
                                  key + "'");
    if (it->second.opt->count() > 0) continue;  // command line wins
    it->second.set(value);
  }
}

void validate(const RunConfig& cfg) {
  if (!(cfg.mass > 0.0)) throw std::invalid_argument("mass must be > 0");
  if (!(cfg.hbar > 0.0)) throw std::invalid_argument("hbar must be > 0");
  if (!(cfg.v0 >= 0.0)) throw std::invalid_argument("v0 must be >= 0");
  if (!(cfg.length > 0.0)) throw std::invalid_argument("length must be > 0");
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw std::invalid_argument("tolerances must be > 0");
  if (cfg.nx < 2 || cfg.nt < 2) throw std::invalid_argument("nx and nt must be >= 2");
  if (cfg.grid_n < 3) throw std::invalid_argument("grid-n must be >= 3");
  if (cfg.k0l.empty()) throw std::invalid_argument("k0l must not be empty");
  for (double v : cfg.k0l)
    if (!(v > 0.0)) throw std::invalid_argument("k0l entries must be > 0");
}

// Output sink: file when --out is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string suffixed_path(const std::string& base, const std::string& suffix) {
  if (base.empty()) return base;
  const auto dot = base.rfind('.');
  const auto slash = base.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return base + suffix;
  return base.substr(0, dot) + suffix + base.substr(dot);
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_tunnel(const RunConfig& cfg) {
  const sts::PhysicalParams params(cfg.mass, cfg.hbar);
  const sts::Barrier barrier(cfg.v0, cfg.length);
  const sts::QuadratureSettings quad(cfg.rel_tol, cfg.abs_tol, 2000);
  const sts::Geometry geom{params, barrier};

  const sts::ComplexTime closed = sts::tunneling_time_closed(params, barrier, cfg.emax);
  const sts::ComplexTime series = sts::tunneling_time_series(params, barrier, cfg.emax);
  const double classical = sts::classical_energy_avg_time(params, barrier, cfg.emax);

  const sts::WavePacketSpec packet(sts::EnergyWindow(0.0, cfg.emax),
                                   sts::EnergyDist::constant({1.0, 0.0}),
                                   sts::EnergyDist::constant({0.0, 0.0}));
  const double eps = 1e-8 * barrier.length;
  const sts::cplx oracle =
      sts::oracle_expectation_time(packet, geom, barrier.length, quad).value -
      sts::oracle_expectation_time(packet, geom, eps, quad).value;

  Sink sink(cfg.out);
  sts::csv::write_row(sink.os(), {"e_max", "t_closed_re", "t_closed_im", "t_series_re",
                                  "t_series_im", "t_oracle_re", "t_oracle_im",
                                  "t_classical_avg", "flag"});
  sts::csv::write_row(sink.os(),
                      {sts::csv::num(cfg.emax), sts::csv::num(closed.value.real()),
                       sts::csv::num(closed.value.imag()), sts::csv::num(series.value.real()),
                       sts::csv::num(series.value.imag()), sts::csv::num(oracle.real()),
                       sts::csv::num(oracle.imag()), sts::csv::num(classical), "ok"});
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  const sts::PhysicalParams params(cfg.mass, cfg.hbar);
  const std::vector<double> ks = parse_grid_spec(cfg.kgrid);

  for (double k0l : cfg.k0l) {
    const double k0 = k0l / cfg.length;
    const double v0 = cfg.hbar * cfg.hbar * k0 * k0 / (2.0 * cfg.mass);
    const sts::Barrier barrier(v0, cfg.length);
    const double t0 = sts::tau0(params, barrier);

    const std::string path =
        cfg.k0l.size() == 1 ? cfg.out : suffixed_path(cfg.out, "_k0l" + fmt_g17(k0l));
    Sink sink(path);
    sts::csv::write_row(sink.os(), {"k_over_k0", "re_T_sts_over_tau0", "im_T_sts_over_tau0",
                                    "tau_phase", "tau_dwell", "tau_larmor", "tau_bl", "flag"});
    for (double kk : ks) {
      std::string flag = "ok";
      double t_re = std::nan(""), t_im = std::nan("");
      double tp = std::nan(""), td = std::nan(""), tl = std::nan(""), tb = std::nan("");
      const double e = kk * kk * v0;  // E = (k/k0)^2 V0
      try {
        const sts::cplx t = sts::tunneling_time_closed_continued(params, barrier, e).value;
        t_re = t.real() / t0;
        t_im = t.imag() / t0;
      } catch (const std::domain_error&) {
        flag = "singular";
      }
      try {
        const sts::TimeFamily fam = sts::table1_times(params, barrier, e);
        tp = fam.tau_phase / t0;
        td = fam.tau_dwell / t0;
        tl = fam.tau_larmor / t0;
        tb = fam.tau_bl / t0;
      } catch (const std::domain_error&) {
        flag = "singular";
      }
      sts::csv::write_row(sink.os(),
                          {sts::csv::num(kk), sts::csv::num_or_empty(t_re),
                           sts::csv::num_or_empty(t_im), sts::csv::num_or_empty(tp),
                           sts::csv::num_or_empty(td), sts::csv::num_or_empty(tl),
                           sts::csv::num_or_empty(tb), flag});
    }
  }
  return kExitOk;
}

int cmd_density(const RunConfig& cfg) {
  const sts::PhysicalParams params(cfg.mass, cfg.hbar);
  const sts::Barrier barrier(cfg.v0, cfg.length);
  const sts::Geometry geom{params, barrier};
  const sts::QuadratureSettings quad(cfg.rel_tol, cfg.abs_tol, 2000);
  const Range xr = parse_range(cfg.xrange);
  const Range tr = parse_range(cfg.trange);

  const sts::WavePacketSpec packet(sts::EnergyWindow(0.0, cfg.emax),
                                   sts::EnergyDist::constant({1.0, 0.0}),
                                   sts::EnergyDist::constant({0.0, 0.0}));
  const sts::DensityGrid grid =
      sts::density_grid(packet, geom, xr.lo, xr.hi, tr.lo, tr.hi, cfg.nx, cfg.nt, quad);

  Sink sink(cfg.out);
  sts::csv::write_row(sink.os(), {"x", "t", "rho", "flag"});
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.nt; ++j) {
      const sts::DensitySample& c = grid.at(i, j);
      const bool finite = std::isfinite(c.rho);
      const std::string flag = !finite ? "singular" : (c.converged ? "ok" : "noconv");
      sts::csv::write_row(sink.os(), {sts::csv::num(grid.x[i]), sts::csv::num(grid.t[j]),
                                      sts::csv::num_or_empty(c.rho), flag});
    }
  }
  return kExitOk;
}

int cmd_reference(const RunConfig& cfg) {
  const sts::PhysicalParams params(cfg.mass, cfg.hbar);
  const sts::Barrier barrier(cfg.v0, cfg.length);
  const double e = cfg.emax;

  const sts::TimeFamily fam = sts::table1_times(params, barrier, e);
  const sts::cplx tc = sts::classical_crossing_time(params, barrier, e);

  Sink sink(cfg.out);
  sts::csv::write_row(sink.os(), {"e", "tau_phase", "tau_dwell", "tau_larmor", "tau_bl",
                                  "tau_complex_re", "tau_complex_im", "tau_stochastic_re",
                                  "tau_stochastic_im", "t_classical_re", "t_classical_im",
                                  "flag"});
  sts::csv::write_row(
      sink.os(),
      {sts::csv::num(e), sts::csv::num(fam.tau_phase), sts::csv::num(fam.tau_dwell),
       sts::csv::num(fam.tau_larmor), sts::csv::num(fam.tau_bl),
       sts::csv::num(fam.tau_complex.real()), sts::csv::num(fam.tau_complex.imag()),
       sts::csv::num(fam.tau_stochastic.real()), sts::csv::num(fam.tau_stochastic.imag()),
       sts::csv::num(tc.real()), sts::csv::num(tc.imag()), "ok"});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

double worst_order(const std::vector<double>& errs) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < errs.size(); ++i)
    worst = std::min(worst, std::log2(errs[i] / errs[i + 1]));
  return worst;
}

int cmd_verify(const RunConfig& cfg) {
  const sts::PhysicalParams params(cfg.mass, cfg.hbar);
  const sts::Barrier barrier(cfg.v0, cfg.length);
  const sts::QuadratureSettings quad(cfg.rel_tol, cfg.abs_tol, 2000);
  std::vector<Check> checks;

  // Fractional suite: weak-potential plane wave, grid size from grid-n.
  const double omega = 1.0;
  const double v0_weak = 0.2 * cfg.hbar * omega;
  const double span = 12.0;

  for (const sts::Component c : {sts::Component::plus, sts::Component::minus}) {
    const sts::UniformGrid g(0.0, span / (cfg.grid_n - 1), cfg.grid_n);
    const double r =
        sts::weak_pde_residual(params, v0_weak, omega, c, g, sts::PdeMode::analytic, quad);
    const char* nm = c == sts::Component::plus ? "analytic-pde-residual[+]"
                                               : "analytic-pde-residual[-]";
    checks.push_back({nm, r <= 1e-12, "residual = " + fmt_g17(r)});
  }

  {
    const sts::UniformGrid g(0.0, 0.1, 64);
    const sts::SampledSignal sig(g, std::vector<sts::cplx>(64, {2.5, -1.0}));
    const sts::SampledSignal d = sts::caputo_half(sig);
    double worst = 0.0;
    for (const sts::cplx& v : d.values) worst = std::max(worst, std::abs(v));
    checks.push_back({"caputo-const-zero", worst == 0.0, "max |D const| = " + fmt_g17(worst)});
  }

  {
    std::vector<double> errs;
    for (int n : {cfg.grid_n, 2 * cfg.grid_n - 1, 4 * cfg.grid_n - 3}) {
      const sts::UniformGrid g(0.0, span / (n - 1), n);
      errs.push_back(sts::weak_pde_residual(params, v0_weak, omega, sts::Component::plus, g,
                                            sts::PdeMode::discrete, quad));
    }
    const double q = worst_order(errs);
    checks.push_back({"discrete-pde-convergence", q >= 1.0,
                      "measured order = " + fmt_g17(q) + " (residuals " + fmt_g17(errs[0]) +
                          " -> " + fmt_g17(errs[2]) + ")"});
  }

  // Limit identities of the closed-form tunnelling time.
  {
    const double t0 = sts::tau0(params, barrier);
    const double anchor =
        sts::tunneling_time_closed(params, barrier, 1e-8 * cfg.v0).value.imag() / t0;
    checks.push_back({"limit-emax-to-zero-tau0-anchor", std::abs(anchor - 1.0) <= 1e-4,
                      "Im(T)/tau0 = " + fmt_g17(anchor)});
  }
  {
    const double e = 0.5 * cfg.v0;
    const sts::PhysicalParams scaled(cfg.mass, 1e-6 * cfg.hbar);
    const double p_e = std::sqrt(2.0 * cfg.mass * (cfg.v0 - e));
    const double expect = cfg.mass * cfg.length / p_e;
    const double got = sts::tunneling_time_closed(scaled, barrier, e).value.imag();
    const double rel = std::abs(got - expect) / expect;
    checks.push_back({"limit-hbar-to-zero", rel <= 1e-4, "rel = " + fmt_g17(rel)});
  }
  {
    std::vector<double> devs;
    for (double eps : {1e-2, 5e-3, 2.5e-3}) {
      const sts::cplx c = sts::tunneling_time_closed(params, barrier, eps * cfg.v0).value;
      const sts::cplx s = sts::tunneling_time_series(params, barrier, eps * cfg.v0).value;
      devs.push_back(std::abs(c - s) / std::abs(c));
    }
    const bool ok = devs[0] / devs[1] >= 4.0 && devs[1] / devs[2] >= 4.0;
    checks.push_back({"series-consistency", ok,
                      "remainder ratios " + fmt_g17(devs[0] / devs[1]) + ", " +
                          fmt_g17(devs[1] / devs[2])});
  }
  {
    const double e = std::min(cfg.emax, 0.5 * cfg.v0);
    const sts::Geometry geom{params, barrier};
    const sts::WavePacketSpec packet(sts::EnergyWindow(0.0, e),
                                     sts::EnergyDist::constant({1.0, 0.0}),
                                     sts::EnergyDist::constant({0.0, 0.0}));
    const sts::cplx oracle =
        sts::oracle_expectation_time(packet, geom, cfg.length, quad).value -
        sts::oracle_expectation_time(packet, geom, 1e-8 * cfg.length, quad).value;
    const sts::cplx closed = sts::tunneling_time_closed(params, barrier, e).value;
    const double rel = std::abs(oracle - closed) / std::abs(closed);
    checks.push_back({"oracle-vs-closed", rel <= 1e-6, "rel = " + fmt_g17(rel)});
  }
  {
    const double e = cfg.emax;
    const double direct =
        sts::weak_travel_time(params, 0.0, cfg.length, sts::EnergyWindow(0.0, e));
    const double expect = 2.0 * cfg.mass * cfg.length / std::sqrt(2.0 * cfg.mass * e);
    const double rel = std::abs(direct - expect) / expect;
    checks.push_back({"free-particle-reduction", rel <= 1e-14, "rel = " + fmt_g17(rel)});
  }

  Sink sink(cfg.out);
  bool all = true;
  for (const Check& c : checks) {
    all = all && c.pass;
    sink.os() << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  sink.os() << (all ? "verify: all checks passed\n" : "verify: FAILURES present\n");
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string config_path;
  bool dump_config = false;

  CLI::App app{"Spacetime-symmetric tunnelling times for a rectangular barrier"};
  app.require_subcommand(1);

  const std::vector<CLI::App*> subs = {
      app.add_subcommand("tunnel", "Closed-form, series, quadrature-oracle and classical"
                                   " tunnelling times for one energy window"),
      app.add_subcommand("sweep", "Tunnelling time and comparison times over a k/k0 grid,"
                                  " one CSV per k0L"),
      app.add_subcommand("density", "rho(t|x) on an x/t grid as long-format CSV"),
      app.add_subcommand("reference", "Comparison-time family at energy E (given by --emax)"),
      app.add_subcommand("verify", "Run fractional-operator and limit-identity checks"),
  };

  for (CLI::App* sub : subs) {
    sub->add_option("--mass", cfg.mass, "Particle mass");
    sub->add_option("--hbar", cfg.hbar, "Reduced Planck constant");
    sub->add_option("--v0", cfg.v0, "Barrier height");
    sub->add_option("--length", cfg.length, "Barrier length");
    sub->add_option("--emax", cfg.emax, "Energy window upper edge (E itself for reference)");
    sub->add_option("--k0l", cfg.k0l, "Barrier strengths k0*L for sweep")->delimiter(',');
    sub->add_option("--kgrid", cfg.kgrid, "k/k0 grid as lo:hi:n");
    sub->add_option("--xrange", cfg.xrange, "x range as lo:hi");
    sub->add_option("--trange", cfg.trange, "t range as lo:hi");
    sub->add_option("--nx", cfg.nx, "Grid points in x");
    sub->add_option("--nt", cfg.nt, "Grid points in t");
    sub->add_option("--rel-tol", cfg.rel_tol, "Quadrature relative tolerance");
    sub->add_option("--abs-tol", cfg.abs_tol, "Quadrature absolute tolerance");
    sub->add_option("--grid-n", cfg.grid_n, "Time-grid size for verify");
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
    sub->add_option("--config", config_path, "Flat key=value config file; command line wins");
    sub->add_flag("--dump-config", dump_config, "Print the effective configuration and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    KeyMap keys = make_key_map(cfg, active);
    if (!config_path.empty()) apply_config_file(config_path, keys);
    validate(cfg);

    if (dump_config) {
      for (const std::string& key : kKeyOrder) std::cout << key << '=' << keys[key].get() << '\n';
      return kExitOk;
    }

    const std::string name = active->get_name();
    if (name == "tunnel") return cmd_tunnel(cfg);
    if (name == "sweep") return cmd_sweep(cfg);
    if (name == "density") return cmd_density(cfg);
    if (name == "reference") return cmd_reference(cfg);
    return cmd_verify(cfg);
  } catch (const sts::nonconvergence_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
