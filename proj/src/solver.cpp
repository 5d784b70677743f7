#include "sts/solver.hpp"

#include <algorithm>
#include <cmath>

namespace sts {

namespace {

constexpr cplx kI{0.0, 1.0};

// Strong-potential guard band: the kappa = 0 branch point at E = V0 makes
// several integrands singular, so the window endpoint must stay clear of it.
constexpr double kV0GuardBand = 1e-9;

void require_below_barrier(const Barrier& barrier, double e_max, const char* who) {
  if (!(e_max > 0.0) || !(e_max < barrier.v0 * (1.0 - kV0GuardBand)))
    throw std::domain_error(std::string(who) + ": need 0 < e_max < V0");
}

// Accumulated phase S(E, x) with G = exp[+-(i/hbar) S] and its energy
// derivative, per region.  dS/dE follows from d_E p = m/p.
struct Phase {
  cplx s;
  cplx ds_de;
};

Phase phase_and_derivative(const RegionWave& w, const PhysicalParams& params, double x) {
  const double m = params.m;
  const double len = w.barrier_length;
  if (x < 0.0) return {w.p1 * x, m / w.p1 * x};
  if (x <= len) return {w.p2 * x, m / w.p2 * x};
  return {w.p2 * len + w.p1 * (x - len), m / w.p2 * len + m / w.p1 * (x - len)};
}

}  // namespace

RegionWave connect_barrier(const PhysicalParams& params, const Barrier& barrier,
                           double e, cplx a1p, cplx a1m) {
  RegionWave w;
  w.p1 = momentum(e, 0.0, params);
  w.p2 = momentum(e, barrier.v0, params);
  w.hbar = params.hbar;
  w.barrier_length = barrier.length;
  w.a1p = a1p;
  w.a1m = a1m;
  w.a2p = a1p;
  w.a2m = a1m;
  const cplx shift = kI / params.hbar * (w.p2 - w.p1) * barrier.length;
  w.a3p = a1p * std::exp(shift);
  w.a3m = a1m * std::exp(-shift);
  return w;
}

cplx spatial_wave(const RegionWave& wave, const PhysicalParams& params, double x,
                  Component component) {
  const double s = component_sign(component);
  const cplx arg = s * kI / params.hbar;
  if (x < 0.0) {
    const cplx a = component == Component::plus ? wave.a1p : wave.a1m;
    return a * std::exp(arg * wave.p1 * x);
  }
  if (x <= wave.barrier_length) {
    const cplx a = component == Component::plus ? wave.a2p : wave.a2m;
    return a * std::exp(arg * wave.p2 * x);
  }
  const cplx a = component == Component::plus ? wave.a3p : wave.a3m;
  return a * std::exp(arg * wave.p1 * x);
}

cplx wkb_spatial(const PhysicalParams& params, const std::function<double(double)>& potential,
                 double e, double x0, double x, Component component,
                 const QuadratureSettings& settings) {
  const auto p = [&](double xp) { return momentum(e, potential(xp), params); };
  cplx phase_integral(0.0, 0.0);
  if (x > x0)
    phase_integral = integrate_complex_strict(p, x0, x, settings);
  else if (x < x0)
    phase_integral = -integrate_complex_strict(p, x, x0, settings);
  return std::exp(component_sign(component) * kI / params.hbar * phase_integral);
}

EnergyDist EnergyDist::tabulated(std::vector<double> energies, std::vector<cplx> values) {
  if (energies.size() != values.size() || energies.size() < 2)
    throw std::invalid_argument("EnergyDist: need matching node/value lists of size >= 2");
  for (std::size_t i = 1; i < energies.size(); ++i)
    if (!(energies[i - 1] < energies[i]))
      throw std::invalid_argument("EnergyDist: nodes must be strictly increasing");
  return EnergyDist(Table{std::move(energies), std::move(values)});
}

cplx EnergyDist::operator()(double e) const {
  if (const cplx* c = std::get_if<cplx>(&rep_)) return *c;
  const Table& t = std::get<Table>(rep_);
  if (e <= t.e.front() || e >= t.e.back()) {
    if (e == t.e.front()) return t.c.front();
    if (e == t.e.back()) return t.c.back();
    return {0.0, 0.0};
  }
  const auto it = std::upper_bound(t.e.begin(), t.e.end(), e);
  const std::size_t hi = it - t.e.begin();
  const double w = (e - t.e[hi - 1]) / (t.e[hi] - t.e[hi - 1]);
  return t.c[hi - 1] * (1.0 - w) + t.c[hi] * w;
}

bool EnergyDist::is_zero() const {
  if (const cplx* c = std::get_if<cplx>(&rep_)) return *c == cplx(0.0, 0.0);
  const Table& t = std::get<Table>(rep_);
  return std::all_of(t.c.begin(), t.c.end(), [](cplx v) { return v == cplx(0.0, 0.0); });
}

WavePacketSpec::WavePacketSpec(const EnergyWindow& w, EnergyDist p, EnergyDist m)
    : window(w), plus(std::move(p)), minus(std::move(m)) {}

ComplexTime expectation_time(const WavePacketSpec& packet, const Geometry& geometry,
                             double x, const QuadratureSettings& settings) {
  const double hbar = geometry.params.hbar;
  const double h = 1e-6 * packet.window.width();

  cplx num(0.0, 0.0);
  cplx den(0.0, 0.0);
  bool any = false;
  for (const Component r : {Component::plus, Component::minus}) {
    const EnergyDist& dist = r == Component::plus ? packet.plus : packet.minus;
    if (dist.is_zero()) continue;
    any = true;
    const double sgn = component_sign(r);

    const auto cg = [&](double e) {
      const RegionWave w = connect_barrier(geometry.params, geometry.barrier, e, 1.0, 1.0);
      return dist(e) * spatial_wave(w, geometry.params, x, r);
    };

    ComplexFn dcg_conj;
    if (dist.is_constant()) {
      dcg_conj = [&, sgn](double e) {
        const RegionWave w = connect_barrier(geometry.params, geometry.barrier, e, 1.0, 1.0);
        const Phase ph = phase_and_derivative(w, geometry.params, x);
        const cplx g = spatial_wave(w, geometry.params, x, r);
        return std::conj(dist(e) * sgn * kI / hbar * ph.ds_de * g);
      };
    } else {
      dcg_conj = [&, h](double e) {
        return (std::conj(cg(e + h)) - std::conj(cg(e - h))) / (2.0 * h);
      };
    }

    num += integrate_complex_strict(
        [&](double e) { return cg(e) * dcg_conj(e); }, packet.window.e_lo,
        packet.window.e_hi, settings);
    den += integrate_complex_strict(
        [&](double e) { return std::norm(cg(e)); }, packet.window.e_lo,
        packet.window.e_hi, settings);
  }
  if (!any || !(std::abs(den) > 0.0))
    throw std::domain_error("expectation_time: particle never found at any time at this x");
  const cplx t = kI * hbar * num / den;
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
    throw std::domain_error("expectation_time: non-finite result");
  return {t};
}

ComplexTime tunneling_time_closed(const PhysicalParams& params, const Barrier& barrier,
                                  double e_max) {
  require_below_barrier(barrier, e_max, "tunneling_time_closed");
  const double m = params.m;
  const double hbar = params.hbar;
  const double len = barrier.length;
  const double p0 = std::sqrt(2.0 * m * barrier.v0);
  const double p_e = std::sqrt(2.0 * m * (barrier.v0 - e_max));
  const double a = 2.0 * (p0 - p_e) * len / hbar;
  const double one_minus_g = -std::expm1(-a);
  const double g = std::exp(-a);
  // All factors real below the barrier, so the real part is exactly zero.
  const double t_imag =
      2.0 * m * len * len * one_minus_g / (hbar * one_minus_g + 2.0 * len * (p_e - p0 * g));
  return {cplx(0.0, t_imag)};
}

ComplexTime tunneling_time_closed_continued(const PhysicalParams& params,
                                            const Barrier& barrier, double e_max) {
  if (!(e_max > 0.0))
    throw std::domain_error("tunneling_time_closed_continued: need e_max > 0");
  if (e_max < barrier.v0 * (1.0 - kV0GuardBand))
    return tunneling_time_closed(params, barrier, e_max);
  const double m = params.m;
  const double hbar = params.hbar;
  const double len = barrier.length;
  const double p0 = std::sqrt(2.0 * m * barrier.v0);
  const cplx p_e = branch_sqrt(2.0 * m * (barrier.v0 - e_max));
  const cplx g = std::exp(-2.0 * (p0 - p_e) * len / hbar);
  const cplx one_minus_g = 1.0 - g;
  return {2.0 * kI * m * len * len * one_minus_g /
          (hbar * one_minus_g + 2.0 * len * (p_e - p0 * g))};
}

ComplexTime tunneling_time_series(const PhysicalParams& params, const Barrier& barrier,
                                  double e_max) {
  require_below_barrier(barrier, e_max, "tunneling_time_series");
  const double m = params.m;
  const double len = barrier.length;
  const double p0 = std::sqrt(2.0 * m * barrier.v0);
  const double e = e_max / barrier.v0;
  const double t_imag = m * len / p0 * (1.0 + 0.25 * e) +
                        (m * len / (8.0 * p0) + m * len * len / (24.0 * params.hbar)) * e * e;
  return {cplx(0.0, t_imag)};
}

ComplexTime tunneling_time_series_first_order(const PhysicalParams& params,
                                              const Barrier& barrier, double e_max) {
  require_below_barrier(barrier, e_max, "tunneling_time_series_first_order");
  const double p0 = std::sqrt(2.0 * params.m * barrier.v0);
  const double e = e_max / barrier.v0;
  return {cplx(0.0, params.m * barrier.length / p0 * (1.0 + 0.25 * e))};
}

double classical_energy_avg_time(const PhysicalParams& params, const Barrier& barrier,
                                 double e_max) {
  require_below_barrier(barrier, e_max, "classical_energy_avg_time");
  const double m = params.m;
  const double p0 = std::sqrt(2.0 * m * barrier.v0);
  const double p_e = std::sqrt(2.0 * m * (barrier.v0 - e_max));
  return barrier.length * (p0 - p_e) / e_max;
}

double weak_travel_time(const PhysicalParams& params, double v0, double length,
                        const EnergyWindow& window) {
  if (!(v0 >= 0.0)) throw std::domain_error("weak_travel_time: need V0 >= 0");
  if (!(window.e_lo >= v0))
    throw std::domain_error("weak_travel_time: window must lie above the potential");
  const double m = params.m;
  const double p_i = std::sqrt(2.0 * m * (window.e_lo - v0));
  const double p_f = std::sqrt(2.0 * m * (window.e_hi - v0));
  return 2.0 * m * length / (p_f + p_i);
}

DensitySample density_rho(const WavePacketSpec& packet, const Geometry& geometry,
                          double x, double t, const QuadratureSettings& settings) {
  const double hbar = geometry.params.hbar;
  DensitySample out;
  for (const Component r : {Component::plus, Component::minus}) {
    const EnergyDist& dist = r == Component::plus ? packet.plus : packet.minus;
    if (dist.is_zero()) continue;
    const auto f = [&](double e) {
      const RegionWave w = connect_barrier(geometry.params, geometry.barrier, e, 1.0, 1.0);
      return dist(e) * std::exp(-kI * e * t / hbar) * spatial_wave(w, geometry.params, x, r);
    };
    const IntegralResult amp =
        integrate_complex(f, packet.window.e_lo, packet.window.e_hi, settings);
    out.rho += std::norm(amp.value);
    out.error += 2.0 * std::abs(amp.value) * amp.error + amp.error * amp.error;
    out.converged = out.converged && amp.converged;
  }
  if (!std::isfinite(out.rho))
    throw std::domain_error("density_rho: non-finite result");
  return out;
}

DensityGrid density_grid(const WavePacketSpec& packet, const Geometry& geometry,
                         double x_lo, double x_hi, double t_lo, double t_hi,
                         int nx, int nt, const QuadratureSettings& settings) {
  if (nx < 2 || nt < 2) throw std::invalid_argument("density_grid: need nx, nt >= 2");
  if (!(x_lo < x_hi) || !(t_lo < t_hi))
    throw std::invalid_argument("density_grid: empty range");
  DensityGrid grid;
  grid.nx = nx;
  grid.nt = nt;
  grid.x.resize(nx);
  grid.t.resize(nt);
  for (int i = 0; i < nx; ++i) grid.x[i] = x_lo + (x_hi - x_lo) * i / (nx - 1);
  for (int j = 0; j < nt; ++j) grid.t[j] = t_lo + (t_hi - t_lo) * j / (nt - 1);
  grid.cells.resize(static_cast<std::size_t>(nx) * nt);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nt; ++j)
      grid.cells[static_cast<std::size_t>(i) * nt + j] =
          density_rho(packet, geometry, grid.x[i], grid.t[j], settings);
  return grid;
}

}  // namespace sts
