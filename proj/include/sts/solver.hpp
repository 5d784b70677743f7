// Piecewise plane-wave solutions for the rectangular barrier, wave packets
// over energy distributions, time-operator expectation values, and the
// travel/tunnelling-time formulas built on them.
#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "sts/phys.hpp"
#include "sts/quadrature.hpp"

namespace sts {

// Piecewise plane wave after connecting the three regions at x = 0 and
// x = L: continuity fixes A2 = A1 and A3 = A1 exp[+-(i/hbar)(p2 - p1) L].
struct RegionWave {
  cplx p1;  // momentum outside the barrier
  cplx p2;  // momentum inside the barrier
  cplx a1p, a1m;
  cplx a2p, a2m;
  cplx a3p, a3m;
  double hbar;
  double barrier_length;
};

RegionWave connect_barrier(const PhysicalParams& params, const Barrier& barrier,
                           double e, cplx a1p, cplx a1m);

// Evaluates the region wave at position x for one spinor component.
// Interface points x = 0 and x = L are assigned to the barrier region;
// the connection formulas make the value continuous there anyway.
cplx spatial_wave(const RegionWave& wave, const PhysicalParams& params, double x,
                  Component component);

// Phase-integral amplitude exp[+-(i/hbar) Int_{x0}^{x} sqrt(2m(E - V(x'))) dx']
// for a general potential in the strong-potential regime.  Reduces to the
// constant-potential plane-wave factor when V is constant.
cplx wkb_spatial(const PhysicalParams& params, const std::function<double(double)>& potential,
                 double e, double x0, double x, Component component,
                 const QuadratureSettings& settings = {});

// Energy distribution C_E: either a constant or tabulated nodes with linear
// interpolation (zero outside the node span).
class EnergyDist {
 public:
  static EnergyDist constant(cplx value) { return EnergyDist(value); }
  static EnergyDist tabulated(std::vector<double> energies, std::vector<cplx> values);

  cplx operator()(double e) const;
  bool is_constant() const { return std::holds_alternative<cplx>(rep_); }
  bool is_zero() const;

 private:
  explicit EnergyDist(cplx c) : rep_(c) {}
  struct Table {
    std::vector<double> e;
    std::vector<cplx> c;
  };
  explicit EnergyDist(Table t) : rep_(std::move(t)) {}
  std::variant<cplx, Table> rep_;
};

struct WavePacketSpec {
  EnergyWindow window;
  EnergyDist plus = EnergyDist::constant({1.0, 0.0});
  EnergyDist minus = EnergyDist::constant({0.0, 0.0});

  WavePacketSpec(const EnergyWindow& w, EnergyDist p, EnergyDist m);
};

struct ComplexTime {
  cplx value{0.0, 0.0};
};

struct Geometry {
  PhysicalParams params;
  Barrier barrier;
};

// <T>(x): expectation value of the time operator at fixed position,
//   i hbar Sum_r Int dE C^r G^r d_E [C^r G^r]^* / Sum_r Int dE |C^r G^r|^2.
// d_E is taken analytically for constant distributions (via d_E p = m/p)
// and by central differences for tabulated ones.
ComplexTime expectation_time(const WavePacketSpec& packet, const Geometry& geometry,
                             double x, const QuadratureSettings& settings = {});

// Closed-form tunnelling time for the constant right-moving distribution on
// [0, e_max], 0 < e_max < V0:
//   T = 2 i m L^2 (1 - g) / (hbar (1 - g) + 2 L (p_E - p0 g)),
// with p0 = sqrt(2mV0), p_E = sqrt(2m(V0 - e_max)), g = exp[-2(p0-p_E)L/hbar].
// Purely imaginary below the barrier (the real part is exactly zero).
ComplexTime tunneling_time_closed(const PhysicalParams& params, const Barrier& barrier,
                                  double e_max);

// The same closed form continued to any e_max > 0 through the momentum
// branch (p_E becomes +i sqrt(2m(e_max - V0)) above the barrier), where it
// acquires a real part.
ComplexTime tunneling_time_closed_continued(const PhysicalParams& params,
                                            const Barrier& barrier, double e_max);

// Second-order expansion in e_max/V0:
//   (i m L / p0)(1 + e/4) + (i m L / 8 p0 + i m L^2 / 24 hbar) e^2.
ComplexTime tunneling_time_series(const PhysicalParams& params, const Barrier& barrier,
                                  double e_max);

// First line of the expansion only: (i m L / p0)(1 + e/4).
ComplexTime tunneling_time_series_first_order(const PhysicalParams& params,
                                              const Barrier& barrier, double e_max);

// Energy average of the classical crossing time below the barrier,
//   (1/e_max) Int_0^{e_max} m L / sqrt(2m(V0-E)) dE = L (p0 - p_E) / e_max.
double classical_energy_avg_time(const PhysicalParams& params, const Barrier& barrier,
                                 double e_max);

// Energy average of the classical time of arrival m L / p_E over the window,
// for energies above the potential:
//   L [sqrt(2m(E_f - V0)) - sqrt(2m(E_i - V0))] / (E_f - E_i)
// evaluated in the cancellation-free form 2 m L / (p_f + p_i).
double weak_travel_time(const PhysicalParams& params, double v0, double length,
                        const EnergyWindow& window);

struct DensitySample {
  double rho = 0.0;
  double error = 0.0;  // propagated quadrature error bound
  bool converged = true;
};

// rho(t|x) = |Int dE C+ e^{-iEt/hbar} G+|^2 + |Int dE C- e^{-iEt/hbar} G-|^2.
DensitySample density_rho(const WavePacketSpec& packet, const Geometry& geometry,
                          double x, double t, const QuadratureSettings& settings = {});

struct DensityGrid {
  int nx = 0;
  int nt = 0;
  std::vector<double> x;               // size nx
  std::vector<double> t;               // size nt
  std::vector<DensitySample> cells;    // row-major over x: cells[ix*nt + it]

  const DensitySample& at(int ix, int it) const { return cells[ix * nt + it]; }
};

DensityGrid density_grid(const WavePacketSpec& packet, const Geometry& geometry,
                         double x_lo, double x_hi, double t_lo, double t_hi,
                         int nx, int nt, const QuadratureSettings& settings = {});

}  // namespace sts
