#include "sts/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace sts {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (QUADPACK dqk15 values).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
  cplx value;
  double error;    // QUADPACK-style inflated |G7-K15| estimate
  double resabs;   // integral of |f|
};

PanelResult kronrod15(const ComplexFn& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  cplx fv[15];
  const cplx fc = f(centre);
  fv[7] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = hlgth * kXgk[j];
    fv[j] = f(centre - dx);
    fv[14 - j] = f(centre + dx);
  }

  cplx resk = kWgk[7] * fc;
  cplx resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    const cplx pair = fv[j] + fv[14 - j];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }

  const cplx reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));

  const double ahl = std::abs(hlgth);
  resabs *= ahl;
  resasc *= ahl;
  double err = std::abs(resk - resg) * ahl;
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  const double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);

  return {resk * hlgth, err, resabs};
}

struct Segment {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace

IntegralResult integrate_complex(const ComplexFn& f, double a, double b,
                                 const QuadratureSettings& settings) {
  if (!(a < b)) throw std::invalid_argument("integrate_complex: need a < b");

  const PanelResult first = kronrod15(f, a, b);

  std::priority_queue<Segment> queue;
  queue.push({a, b, first.value, first.error});
  cplx total = first.value;
  double total_err = first.error;
  int subdivisions = 0;

  while (total_err > std::max(settings.abs_tol, settings.rel_tol * std::abs(total))) {
    if (subdivisions >= settings.max_subdivisions) {
      return {total, total_err, false, subdivisions};
    }
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval no longer splittable in double precision
      queue.push(worst);
      return {total, total_err, false, subdivisions};
    }
    const PanelResult left = kronrod15(f, worst.a, mid);
    const PanelResult right = kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push({worst.a, mid, left.value, left.error});
    queue.push({mid, worst.b, right.value, right.error});
    ++subdivisions;
  }
  return {total, total_err, true, subdivisions};
}

cplx integrate_complex_strict(const ComplexFn& f, double a, double b,
                              const QuadratureSettings& settings) {
  const IntegralResult r = integrate_complex(f, a, b, settings);
  if (!r.converged) throw nonconvergence_error(r);
  return r.value;
}

IntegralResult integrate_scaled(const ComplexFn& f, double a, double b,
                                const QuadratureSettings& settings, double noise_floor) {
  if (!(a < b)) throw std::invalid_argument("integrate_scaled: need a < b");
  double peak = 0.0;
  for (int i = 0; i < 11; ++i)
    peak = std::max(peak, std::abs(f(a + (b - a) * (i + 0.5) / 11.0)));
  const double scale = std::min(1.0, peak * (b - a));
  QuadratureSettings eff = settings;
  eff.abs_tol = std::max(settings.abs_tol * (scale > 0.0 ? scale : 1.0), noise_floor);
  return integrate_complex(f, a, b, eff);
}

cplx integrate_sqrt_singular(const ComplexFn& h, const PhysicalParams& params,
                             const Barrier& barrier, double e_max,
                             const QuadratureSettings& settings) {
  if (!(e_max > 0.0) || !(e_max < barrier.v0))
    throw std::domain_error("integrate_sqrt_singular: need 0 < e_max < V0");
  const double m = params.m;
  const double p0 = std::sqrt(2.0 * m * barrier.v0);
  const double p_e = std::sqrt(2.0 * m * (barrier.v0 - e_max));
  const auto g = [&](double u) {
    const double e = barrier.v0 - u * u / (2.0 * m);
    return h(e) / m;
  };
  return integrate_complex_strict(g, p_e, p0, settings);
}

}  // namespace sts
