// Adaptive complex-valued integration over a real interval with an
// inverse-square-root endpoint substitution for energy integrals.
#pragma once

#include <functional>
#include <stdexcept>

#include "sts/phys.hpp"

namespace sts {

struct QuadratureSettings {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;

  QuadratureSettings() = default;
  QuadratureSettings(double rel, double abs, int max_subdiv)
      : rel_tol(rel), abs_tol(abs), max_subdivisions(max_subdiv) {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw std::invalid_argument("QuadratureSettings: tolerances must be > 0");
    if (max_subdivisions < 1)
      throw std::invalid_argument("QuadratureSettings: max_subdivisions must be >= 1");
  }
};

struct IntegralResult {
  cplx value{0.0, 0.0};
  double error = 0.0;  // estimated bound on |value - exact|
  bool converged = true;
  int subdivisions = 0;
};

class nonconvergence_error : public std::runtime_error {
 public:
  explicit nonconvergence_error(const IntegralResult& partial)
      : std::runtime_error("quadrature did not converge within the subdivision budget"),
        partial_(partial) {}
  const IntegralResult& partial() const { return partial_; }

 private:
  IntegralResult partial_;
};

using ComplexFn = std::function<cplx(double)>;

// Globally adaptive Gauss-Kronrod 7-15 estimate of the integral of f over
// [a, b].  Returned error satisfies error <= max(abs_tol, rel_tol*|value|)
// when converged; otherwise converged is false and the best estimate is
// reported (callers decide whether that is an error or a flagged value).
IntegralResult integrate_complex(const ComplexFn& f, double a, double b,
                                 const QuadratureSettings& settings = {});

// Same, but throws nonconvergence_error instead of reporting a flag.
cplx integrate_complex_strict(const ComplexFn& f, double a, double b,
                              const QuadratureSettings& settings = {});

// integrate_complex with the absolute tolerance adapted to the integrand's
// own magnitude: the floor becomes max(abs_tol * min(1, max|f|*(b-a)),
// noise_floor).  Keeps the relative tolerance in charge for heavily damped
// integrands (|f| far below abs_tol) and lets callers state the absolute
// noise level of integrands built from cancelling differences, below which
// refinement only chases rounding noise.
IntegralResult integrate_scaled(const ComplexFn& f, double a, double b,
                                const QuadratureSettings& settings = {},
                                double noise_floor = 0.0);

// Integral of h(E)/sqrt(2m(V0-E)) over [0, e_max] via u = sqrt(2m(V0-E)),
// which removes the endpoint singularity h would meet at E -> V0:
//   (1/m) * integral of h(E(u)) du from p_E to p0.
cplx integrate_sqrt_singular(const ComplexFn& h, const PhysicalParams& params,
                             const Barrier& barrier, double e_max,
                             const QuadratureSettings& settings = {});

}  // namespace sts
