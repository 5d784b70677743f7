// Comparison tunnelling times for the rectangular barrier: phase, dwell,
// Larmor, Buttiker-Landauer, complex and stochastic-model times in their
// opaque-barrier (V0 >> E) approximations.
#pragma once

#include "sts/phys.hpp"

namespace sts {

struct TimeFamily {
  double tau_phase;      // 2m / (hbar k kappa)
  double tau_dwell;      // 2mk / (hbar kappa k0^2)
  double tau_larmor;     // mL / (hbar kappa)
  double tau_bl;         // sqrt(tau_larmor^2 + tau_dwell^2)
  cplx tau_complex;      // tau_dwell - i tau_larmor (so |tau_complex| = tau_bl)
  cplx tau_stochastic;   // a tau_larmor^2 + i tau_larmor
};

// Opaque-barrier approximations of the comparison times, valid for
// 0 < E < V0 where kappa is real and positive.
TimeFamily table1_times(const PhysicalParams& params, const Barrier& barrier, double e);

// Friction coefficient of the stochastic (telegrapher's-equation) model,
// a = i m^2 e_max^2 / (12 hbar V0).
cplx friction_coefficient(const PhysicalParams& params, const Barrier& barrier, double e_max);

// m L / sqrt(2m(E - V0)): real above the barrier, -i m L / |p| below it.
cplx classical_crossing_time(const PhysicalParams& params, const Barrier& barrier, double e);

}  // namespace sts
