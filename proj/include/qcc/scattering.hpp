#pragma once

// Linearised junction scattering and transfer-matrix composition.
//
// Internal units: v = 1 by default, frequencies in units of a reference
// plasma frequency w_ref, lengths in units of v / w_ref so that a free
// segment of length d picks up the phase w d / v. A length of one
// reference wavelength is 2 pi in these units (see wavelengths()).

#include <numbers>
#include <variant>
#include <vector>

#include "qcc/linalg.hpp"

namespace qcc {

using TransferMatrix2 = CMat;

struct LineSpec {
  double v = 1.0;  ///< wave speed
};

struct JunctionSpec {
  double omega_p = 1.0;  ///< plasma frequency
  double z_ratio = 1.0;  ///< Z0 / Z_J
};

struct Segment {
  double length = 0.0;
};

using ChainElement = std::variant<JunctionSpec, Segment>;

/// Ordered elements, left to right. May be empty (bare line).
struct CrystalChain {
  std::vector<ChainElement> elements;

  /// Sum of segment lengths.
  double length() const;
  std::size_t junction_count() const;
  /// Throws InvalidArgument on non-positive junction parameters or negative
  /// segment lengths.
  void validate() const;
};

/// Converts a length given in reference wavelengths (2 pi v / w_ref) to
/// internal units.
inline double wavelengths(double n, const LineSpec& line = {}) {
  return 2.0 * std::numbers::pi * n * line.v;
}

struct ScatteringSummary {
  Complex r_total{};  ///< reflection for incidence from the left
  Complex t_total{1.0, 0.0};
  Complex r_right{};  ///< reflection for incidence from the right
  double length = 0.0;
  double omega = 0.0;
};

struct RT {
  Complex r;
  Complex t;
};

/// Threshold on |t| below which a junction counts as a perfect mirror.
inline constexpr double kResonanceThreshold = 1e-12;

/// r = 1 / (1 + 2i z (wb^2 - 1) / wb), wb = omega / omega_p, t = 1 - r.
RT junction_rt(const JunctionSpec& j, double omega, const LineSpec& line = {});

/// [[1/t*, -r*/t*], [-r/t, 1/t]]. Throws SingularAtResonance for |t| < 1e-12.
TransferMatrix2 junction_T(Complex r, Complex t);

/// diag(exp(i w d / v), exp(-i w d / v)).
TransferMatrix2 propagator(double d, double omega, const LineSpec& line = {});

/// Product E_n ... E_1 over the elements. Junction elements enter through
/// junction_T of the conjugated pair (r*, t*): junction_rt follows the
/// opposite time convention to the propagator, and conjugating once here
/// keeps the printed forms of both intact.
TransferMatrix2 chain_T(const CrystalChain& chain, double omega, const LineSpec& line = {});

/// Total reflection and transmission of the chain. With M = chain_T:
/// t = conj(1 / M22), r = conj(-M21 / M22), r_right = conj(M12 / M22), so a
/// one-junction chain returns junction_rt exactly.
ScatteringSummary chain_scattering(const CrystalChain& chain, double omega,
                                   const LineSpec& line = {});

}  // namespace qcc
