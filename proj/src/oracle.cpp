#include "sts/oracle.hpp"

#include <cmath>

namespace sts {

ComplexTime oracle_expectation_time(const WavePacketSpec& packet, const Geometry& geometry,
                                    double x, const QuadratureSettings& settings) {
  const double hbar = geometry.params.hbar;
  const double h = 1e-6 * packet.window.width();
  const cplx i_unit(0.0, 1.0);

  cplx num_sum(0.0, 0.0);
  cplx den_sum(0.0, 0.0);
  bool any = false;
  for (const Component r : {Component::plus, Component::minus}) {
    const EnergyDist& dist = r == Component::plus ? packet.plus : packet.minus;
    if (dist.is_zero()) continue;
    any = true;

    const auto cg = [&](double e) {
      const RegionWave w = connect_barrier(geometry.params, geometry.barrier, e, 1.0, 1.0);
      return dist(e) * spatial_wave(w, geometry.params, x, r);
    };
    const auto integrand_num = [&](double e) {
      const cplx d = (std::conj(cg(e + h)) - std::conj(cg(e - h))) / (2.0 * h);
      return cg(e) * d;
    };
    const auto integrand_den = [&](double e) { return cplx(std::norm(cg(e)), 0.0); };

    num_sum += integrate_complex_strict(integrand_num, packet.window.e_lo,
                                        packet.window.e_hi, settings);
    den_sum += integrate_complex_strict(integrand_den, packet.window.e_lo,
                                        packet.window.e_hi, settings);
  }
  if (!any || !(std::abs(den_sum) > 0.0))
    throw std::domain_error("oracle_expectation_time: particle never found at any time at this x");

  const cplx num = 2.0 * pi * i_unit * hbar * hbar * num_sum;
  const cplx den = 2.0 * pi * hbar * den_sum;
  const cplx t = num / den;
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
    throw std::domain_error("oracle_expectation_time: non-finite result");
  return {t};
}

}  // namespace sts
