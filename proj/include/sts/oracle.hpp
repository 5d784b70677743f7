// Brute-force expectation value of the time operator: every energy integral
// done by adaptive quadrature and every energy derivative by central
// differences, so the result is independent of the closed forms and of the
// analytic-derivative path it cross-checks.
#pragma once

#include "sts/quadrature.hpp"
#include "sts/solver.hpp"

namespace sts {

// <T>(x) = N / D with
//   N = 2 pi i hbar^2 Sum_r Int dE C^r G^r d_E [C^r G^r]^*
//   D = 2 pi hbar     Sum_r Int dE |C^r G^r|^2
// d_E is a central difference with step 1e-6 * window width.
ComplexTime oracle_expectation_time(const WavePacketSpec& packet, const Geometry& geometry,
                                    double x, const QuadratureSettings& settings = {});

}  // namespace sts
