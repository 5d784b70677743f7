// Half-order fractional operators: the principal-branch power rule for
// exponentials, the L1 Caputo derivative, the product-trapezoid
// Riemann-Liouville integral, and the residual of the weak-potential
// half-order wave equation on plane-wave solutions.
#pragma once

#include <complex>
#include <vector>

#include "sts/phys.hpp"
#include "sts/quadrature.hpp"

namespace sts {

struct UniformGrid {
  double t0 = 0.0;
  double dt = 1.0;
  int n = 2;

  UniformGrid() = default;
  UniformGrid(double start, double step, int count) : t0(start), dt(step), n(count) {
    if (!(dt > 0.0)) throw std::invalid_argument("UniformGrid: dt must be > 0");
    if (n < 2) throw std::invalid_argument("UniformGrid: need n >= 2");
  }
  double time(int i) const { return t0 + dt * i; }
  double span() const { return dt * (n - 1); }
};

struct SampledSignal {
  UniformGrid grid;
  std::vector<cplx> values;

  SampledSignal(const UniformGrid& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n)
      throw std::invalid_argument("SampledSignal: values length must equal grid.n");
  }
};

// beta^alpha on the principal branch (argument in (-pi, pi]).
cplx frac_power(double alpha, cplx beta);

// Order-1/2 Caputo derivative on the grid, lower terminal at grid.t0.
// L1 scheme: piecewise-linear signal reconstruction, so the first
// derivative is piecewise constant inside the kernel convolution; the
// kernel factors are integrated exactly.  First output sample is 0.
SampledSignal caputo_half(const SampledSignal& signal);

// Order-1/2 Riemann-Liouville integral, lower terminal at grid.t0.
// Product-trapezoid scheme: exact kernel moments against the
// piecewise-linear reconstruction of the signal.
SampledSignal rl_half_integral(const SampledSignal& signal);

// Continuum references: direct adaptive quadrature of the defining kernel
// convolutions, with the endpoint singularity removed by s = t - u^2.
// These provide the discretization-independent second route for the two
// operators above.
cplx caputo_half_kernel_quad(double t, double t0, const ComplexFn& fprime,
                             const QuadratureSettings& settings = {});
cplx rl_half_kernel_quad(double t, double t0, const ComplexFn& f,
                         const QuadratureSettings& settings = {});

enum class PdeMode {
  analytic,  // both sides via the exponential power rule; zero by dispersion
  discrete,  // discretized operators measured against their continuum kernels
};

// Residual of the weak-potential half-order equation
//   -i hbar d_x phi = sigma_z sqrt(2 m i hbar) d_t^{1/2} phi
//                     - sigma_z sqrt(m / (2 i hbar)) V0 d_t^{-1/2} phi
// on the plane-wave solution phi = exp(-i omega t) with separation constant
// p = sqrt(2 m hbar omega) (1 - V0 / (2 hbar omega)).
//
// analytic mode evaluates both sides with frac_power; the dispersion
// relation makes the residual vanish to rounding.  discrete mode applies
// caputo_half / rl_half_integral to the sampled wave and returns the
// max-norm distance from the continuum kernel values over the trailing
// third of the grid (the grid start acts as the operators' lower terminal,
// so only that distance converges under dt refinement).
double weak_pde_residual(const PhysicalParams& params, double v0, double omega,
                         Component sign, const UniformGrid& grid, PdeMode mode,
                         const QuadratureSettings& settings = {});

}  // namespace sts
