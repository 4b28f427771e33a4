#include "qcc/greens.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qcc/errors.hpp"

namespace qcc {

Complex free_green(double x, double xp, double omega, const LineSpec& line) {
  if (!(omega > 0.0)) throw InvalidArgument("free_green: omega must be positive");
  const double k = omega / line.v;
  return kI * (0.5 / k) * std::polar(1.0, k * std::abs(x - xp));
}

Complex scatterer_green(const ScatteringSummary& region, double x, double xp, double omega,
                        const LineSpec& line) {
  if (!(omega > 0.0)) throw InvalidArgument("scatterer_green: omega must be positive");
  const double len = region.length;
  for (double pos : {x, xp}) {
    if (pos > 0.0 && pos < len) {
      throw PositionInsideScatterer("scatterer_green: position " + std::to_string(pos) +
                                    " lies inside the scatterer [0, " + std::to_string(len) + "]");
    }
  }
  const double k = omega / line.v;
  const Complex pref = kI * (0.5 / k);
  const bool x_left = x <= 0.0;
  const bool xp_left = xp <= 0.0;
  const Complex direct = std::polar(1.0, k * std::abs(x - xp));
  if (x_left && xp_left) {
    return pref * (direct - std::conj(region.r_total) * std::polar(1.0, -k * (x + xp)));
  }
  if (!x_left && !xp_left) {
    return pref * (direct - std::conj(region.r_right) * std::polar(1.0, k * (x + xp - 2.0 * len)));
  }
  return pref * std::conj(region.t_total) * std::polar(1.0, k * (std::abs(x - xp) - len));
}

double coupling_density(double x, double omega, double g_ref, const LineSpec& line,
                        const std::optional<ScatteringSummary>& region) {
  const Complex g = region ? scatterer_green(*region, x, x, omega, line) : free_green(x, x, omega, line);
  return 2.0 * std::numbers::pi * g_ref * g_ref / line.v * std::max(g.imag(), 0.0);
}

double qubit_coupling_g(const CouplingParams& p, double omega_ref) {
  for (double value : {p.persistent_current, p.loop_area, p.plate_gap, p.omega0, p.z0, omega_ref}) {
    if (!(value > 0.0)) throw InvalidArgument("qubit_coupling_g: all parameters must be positive");
  }
  const double g = p.persistent_current * p.loop_area * kMu0 /
                   (std::pow(std::numbers::pi, 1.5) * p.plate_gap) * p.omega0 /
                   std::sqrt(kHbar * p.z0);
  return g / omega_ref;
}

}  // namespace qcc
