// Physical parameters, barrier geometry and the complex momentum branch
// shared by every other part of the library.
#pragma once

#include <complex>
#include <stdexcept>

namespace sts {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Square root with the branch fixed so that sqrt of a negative real is
// +i*sqrt(|s|).  With this choice exp(+i p x / hbar) decays for x > 0
// inside a classically forbidden region.
inline cplx branch_sqrt(double s) {
  return s >= 0.0 ? cplx(std::sqrt(s), 0.0) : cplx(0.0, std::sqrt(-s));
}

struct PhysicalParams {
  double m = 1.0;
  double hbar = 1.0;

  PhysicalParams() = default;
  PhysicalParams(double mass, double action) : m(mass), hbar(action) {
    if (!(m > 0.0)) throw std::invalid_argument("PhysicalParams: mass must be > 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("PhysicalParams: hbar must be > 0");
  }
};

// Rectangular barrier of height v0 on 0 < x < length.
struct Barrier {
  double v0 = 0.0;
  double length = 1.0;

  Barrier() = default;
  Barrier(double height, double len) : v0(height), length(len) {
    if (!(v0 >= 0.0)) throw std::invalid_argument("Barrier: v0 must be >= 0");
    if (!(length > 0.0)) throw std::invalid_argument("Barrier: length must be > 0");
  }
};

struct EnergyWindow {
  double e_lo = 0.0;
  double e_hi = 1.0;

  EnergyWindow() = default;
  EnergyWindow(double lo, double hi) : e_lo(lo), e_hi(hi) {
    if (!(e_lo < e_hi)) throw std::invalid_argument("EnergyWindow: need e_lo < e_hi");
  }
  double width() const { return e_hi - e_lo; }
};

// +/- pseudo-spinor component selector.
enum class Component { plus, minus };

inline double component_sign(Component c) { return c == Component::plus ? 1.0 : -1.0; }

// p = sqrt(2 m (E - V)) on the fixed branch: real for E >= V, +i sqrt(2m(V-E))
// for E < V.  Total on real inputs.
inline cplx momentum(double e, double v, const PhysicalParams& params) {
  return branch_sqrt(2.0 * params.m * (e - v));
}

struct Wavenumbers {
  double k;    // sqrt(2 m E) / hbar
  double k0;   // sqrt(2 m V0) / hbar
  cplx kappa;  // sqrt(k0^2 - k^2), +i sqrt(k^2 - k0^2) above the barrier
};

Wavenumbers wavenumbers(const PhysicalParams& params, const Barrier& barrier, double e);

// Characteristic barrier time m L / (hbar k0) = m L / sqrt(2 m V0).
double tau0(const PhysicalParams& params, const Barrier& barrier);

}  // namespace sts
