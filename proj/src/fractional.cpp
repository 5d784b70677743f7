#include "sts/fractional.hpp"

#include <cmath>

namespace sts {

namespace {

const double kGammaHalf = std::sqrt(pi);        // Gamma(1/2)
const double kGamma3Half = 0.5 * std::sqrt(pi); // Gamma(3/2)

}  // namespace

cplx frac_power(double alpha, cplx beta) {
  if (beta == cplx(0.0, 0.0)) {
    if (alpha < 0.0) throw std::domain_error("frac_power: 0^alpha with alpha < 0");
    return alpha == 0.0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
  }
  // std::pow uses exp(alpha log beta) with the principal log.
  return std::pow(beta, alpha);
}

SampledSignal caputo_half(const SampledSignal& signal) {
  const int n = signal.grid.n;
  if (n < 3) throw std::invalid_argument("caputo_half: need n >= 3 samples");
  const double dt = signal.grid.dt;

  // w_j = (j+1)^{1/2} - j^{1/2}; D^{1/2} f(t_k) =
  //   dt^{-1/2}/Gamma(3/2) * sum_{j<k} w_j (f_{k-j} - f_{k-j-1})
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j)
    w[j] = std::sqrt(static_cast<double>(j + 1)) - std::sqrt(static_cast<double>(j));

  std::vector<cplx> df(n - 1);
  for (int j = 0; j + 1 < n; ++j) df[j] = signal.values[j + 1] - signal.values[j];

  const double c = 1.0 / (std::sqrt(dt) * kGamma3Half);
  std::vector<cplx> out(n, cplx(0.0, 0.0));
  for (int k = 1; k < n; ++k) {
    cplx acc(0.0, 0.0);
    for (int j = 0; j < k; ++j) acc += w[j] * df[k - 1 - j];
    out[k] = c * acc;
  }
  return {signal.grid, std::move(out)};
}

SampledSignal rl_half_integral(const SampledSignal& signal) {
  const int n = signal.grid.n;
  const double dt = signal.grid.dt;
  constexpr double alpha = 0.5;

  // Exact moments of (t_k - s)^{alpha-1} against 1 and (s - t_j) on each
  // cell, with A = t_k - t_j, B = t_k - t_{j+1}:
  //   m0 = (A^a - B^a)/a
  //   m1 = A (A^a - B^a)/a - (A^{a+1} - B^{a+1})/(a+1)
  std::vector<double> powa(n + 1), powa1(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = dt * i;
    powa[i] = std::pow(t, alpha);
    powa1[i] = powa[i] * t;
  }

  std::vector<cplx> out(n, cplx(0.0, 0.0));
  for (int k = 1; k < n; ++k) {
    cplx acc(0.0, 0.0);
    for (int j = 0; j < k; ++j) {
      const int ia = k - j, ib = k - j - 1;
      const double m0 = (powa[ia] - powa[ib]) / alpha;
      const double m1 = dt * ia * m0 - (powa1[ia] - powa1[ib]) / (alpha + 1.0);
      const cplx slope = (signal.values[j + 1] - signal.values[j]) / dt;
      acc += signal.values[j] * m0 + slope * m1;
    }
    out[k] = acc / kGammaHalf;
  }
  return {signal.grid, std::move(out)};
}

cplx caputo_half_kernel_quad(double t, double t0, const ComplexFn& fprime,
                             const QuadratureSettings& settings) {
  if (!(t > t0)) return {0.0, 0.0};
  const double umax = std::sqrt(t - t0);
  const auto g = [&](double u) { return fprime(t - u * u); };
  return 2.0 / kGammaHalf * integrate_complex_strict(g, 0.0, umax, settings);
}

cplx rl_half_kernel_quad(double t, double t0, const ComplexFn& f,
                         const QuadratureSettings& settings) {
  if (!(t > t0)) return {0.0, 0.0};
  const double umax = std::sqrt(t - t0);
  const auto g = [&](double u) { return f(t - u * u); };
  return 2.0 / kGammaHalf * integrate_complex_strict(g, 0.0, umax, settings);
}

double weak_pde_residual(const PhysicalParams& params, double v0, double omega,
                         Component sign, const UniformGrid& grid, PdeMode mode,
                         const QuadratureSettings& settings) {
  const double m = params.m;
  const double hbar = params.hbar;
  if (!(hbar * omega > 0.0))
    throw std::domain_error("weak_pde_residual: need hbar*omega > 0");
  const double p = std::sqrt(2.0 * m * hbar * omega) * (1.0 - v0 / (2.0 * hbar * omega));
  if (!(p > 0.0))
    throw std::domain_error("weak_pde_residual: separation constant p <= 0 (potential too strong)");

  const double s = component_sign(sign);
  const cplx beta(0.0, -omega);
  const cplx c_deriv = std::sqrt(cplx(0.0, 2.0 * m * hbar));     // sqrt(2 m i hbar)
  const cplx c_integ = std::sqrt(m / cplx(0.0, 2.0 * hbar)) * v0;  // sqrt(m/(2 i hbar)) V0

  if (mode == PdeMode::analytic) {
    // phi = exp(beta t); both half-order operators act by beta^{+-1/2}.
    const cplx lhs = s * p;
    const cplx rhs = s * (c_deriv * frac_power(0.5, beta) - c_integ * frac_power(-0.5, beta));
    return std::abs(lhs - rhs);
  }

  std::vector<cplx> f(grid.n);
  for (int i = 0; i < grid.n; ++i) f[i] = std::exp(beta * grid.time(i));
  const SampledSignal phi(grid, std::move(f));
  const SampledSignal dh = caputo_half(phi);
  const SampledSignal ih = rl_half_integral(phi);

  const auto fn = [&](double t) { return std::exp(beta * t); };
  const auto fpr = [&](double t) { return beta * std::exp(beta * t); };

  double worst = 0.0;
  for (int i = 2 * (grid.n - 1) / 3; i < grid.n; ++i) {
    const double t = grid.time(i);
    const cplx rhs_disc = s * (c_deriv * dh.values[i] - c_integ * ih.values[i]);
    const cplx rhs_cont = s * (c_deriv * caputo_half_kernel_quad(t, grid.t0, fpr, settings) -
                               c_integ * rl_half_kernel_quad(t, grid.t0, fn, settings));
    worst = std::max(worst, std::abs(rhs_disc - rhs_cont));
  }
  return worst;
}

}  // namespace sts
