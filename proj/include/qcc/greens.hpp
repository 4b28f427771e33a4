#pragma once

#include <optional>

#include "qcc/scattering.hpp"

namespace qcc {

/// G(x, x') = i v / (2 omega) exp(i omega |x - x'| / v).
Complex free_green(double x, double xp, double omega, const LineSpec& line = {});

/// Green function of a line with a scatterer occupying [0, L], for x and x'
/// outside it. The coefficients stored in the summary follow the junction
/// convention; the Green function uses their complex conjugates, which are
/// the outgoing-wave amplitudes for the exp(i k |x|) free term. With
/// k = omega / v, R = conj(r), T = conj(t), R' = conj(r_right):
///   x, x' < 0 : (i/2k) [exp(ik|x-x'|) - R exp(-ik(x+x'))]
///   x, x' > L : (i/2k) [exp(ik|x-x'|) - R' exp(ik(x+x'-2L))]
///   otherwise : (i/2k) T exp(ik(|x-x'| - L))
/// Throws PositionInsideScatterer if either point lies strictly inside (0, L).
Complex scatterer_green(const ScatteringSummary& region, double x, double xp, double omega,
                        const LineSpec& line = {});

/// |g(x, omega)|^2 = 2 pi g^2 / v * Im G(x, x, omega), negative Im G clipped
/// to zero. Without a region the free Green function is used.
double coupling_density(double x, double omega, double g_ref, const LineSpec& line = {},
                        const std::optional<ScatteringSummary>& region = std::nullopt);

/// SI inputs for the loop-to-line coupling.
struct CouplingParams {
  double persistent_current = 0.0;  ///< I_p [A]
  double loop_area = 0.0;           ///< A [m^2]
  double plate_gap = 0.0;           ///< d [m]
  double omega0 = 0.0;              ///< fundamental line frequency [rad/s]
  double z0 = 0.0;                  ///< line impedance [Ohm]
};

inline constexpr double kMu0 = 1.25663706212e-6;     // N / A^2
inline constexpr double kHbar = 1.054571817e-34;     // J s

/// g = I_p A mu0 / (pi^{3/2} d) * omega0 / sqrt(hbar Z0), in rad/s, divided
/// by omega_ref (rad/s) to land in internal frequency units.
double qubit_coupling_g(const CouplingParams& p, double omega_ref);

}  // namespace qcc
