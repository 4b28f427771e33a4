#pragma once

// Square-lattice network of junction branches. Each lattice edge is a copy
// of a 1D cell: horizontal edges use cell_h, vertical edges cell_v. Nodes
// impose voltage continuity and current conservation, which with Bloch
// factors X = exp(-i px), Y = exp(-i py) leads to a 4x4 homogeneous system
// M (build_M). Its determinant factorises as
//   det M = X Y [q+-_v (2 cos px - Tr T_h) + q+-_h (2 cos py - Tr T_v)],
// where q = 1/2 E^t T E with E = [e+ e-], e+- = (1, +-1).

#include <optional>
#include <span>
#include <vector>

#include "qcc/scattering.hpp"

namespace qcc {

struct Bloch2D {
  double omega = 0.0;
  double px = 0.0;
  double py = 0.0;
};

/// Projections q_ab = 1/2 e_a^t T e_b of one branch transfer matrix. For a
/// unimodular T: pp*mm - pm*mp = 1 and pp + mm = Tr T.
struct BranchInvariants {
  Complex pp, pm, mp, mm;
};

BranchInvariants branch_invariants(const TransferMatrix2& t);

CMat build_M(const CrystalChain& cell_h, const CrystalChain& cell_v, double omega, double px,
             double py, const LineSpec& line = {});

/// det build_M(...).
Complex dispersion_residual(const CrystalChain& cell_h, const CrystalChain& cell_v, double omega,
                            double px, double py, const LineSpec& line = {});

/// Branch data frozen at one frequency, giving the real reduced residual
///   F = [g_v (2 cos px - tau_h) + g_h (2 cos py - tau_v)] / (g_h + g_v),
/// g = Im q+-. Then det M = i X Y (g_h + g_v) F, and F reduces to
/// cos px + cos py - Tr T for identical branches. If g_h + g_v = 0 the
/// un-normalised numerator is used.
class Dispersion2D {
 public:
  Dispersion2D(const CrystalChain& cell_h, const CrystalChain& cell_v, double omega,
               const LineSpec& line = {});

  double residual(double px, double py) const;
  /// dF/dpx, dF/dpy.
  std::pair<double, double> gradient(double px, double py) const;

  double omega() const { return omega_; }
  double trace_h() const { return tau_h_; }
  double trace_v() const { return tau_v_; }

 private:
  double omega_;
  double tau_h_, tau_v_;
  double w_h_, w_v_;  // normalised weights of the two cosines
};

/// Zero set of the reduced residual on a resolution x resolution grid over
/// [-pi, pi]^2 (marching squares), each vertex polished by one Newton step.
/// Throws EmptyContour when the residual has no sign change.
std::vector<Bloch2D> isofrequency_contour(const CrystalChain& cell_h, const CrystalChain& cell_v,
                                          double omega, std::size_t resolution,
                                          const LineSpec& line = {});

struct Velocity2D {
  double vx = 0.0;
  double vy = 0.0;
};

/// grad_p omega = -grad_p F / dF/domega, scaled by the branch lengths so a
/// free lattice reports physical speeds. dF/domega by central difference
/// with step 1e-5 omega. Throws BandEdge when dF/domega vanishes.
Velocity2D group_velocity_2d(const CrystalChain& cell_h, const CrystalChain& cell_v, double omega,
                             double px, double py, const LineSpec& line = {});

/// Free region F (speed c1) meeting a junction lattice N with identical
/// horizontal and vertical branches.
struct Interface {
  double c1 = 0.70710678118654752;  ///< F-region speed; v / sqrt(2) matches a free network
  CrystalChain cell;
  bool rotated = true;  ///< lattice rotated by pi/4 relative to the interface
};

struct Refraction {
  double theta_R = 0.0;     ///< angle of the refracted group velocity to the normal
  double p_parallel = 0.0;  ///< conserved momentum along the interface, per cell
  Bloch2D branch;
  double v_normal = 0.0;  ///< group velocity component into N (> 0)
  double v_tangential = 0.0;
};

/// Matches omega and the interface-parallel momentum k_F a sin(theta_in)
/// and keeps the N mode whose group velocity points into N (ties go to the
/// smaller normal momentum). std::nullopt means total reflection, which
/// includes a lattice junction sitting exactly on resonance.
std::optional<Refraction> refract(const Interface& iface, double omega, double theta_in,
                                  const LineSpec& line = {});

struct RefractionRow {
  double omega = 0.0;
  double theta_in = 0.0;
  std::optional<Refraction> result;
};

/// refract over the product grid, omega-major. Parallel over rows.
std::vector<RefractionRow> refraction_scan(const Interface& iface, std::span<const double> omegas,
                                           std::span<const double> thetas,
                                           const LineSpec& line = {});
std::vector<RefractionRow> refraction_scan_serial(const Interface& iface,
                                                  std::span<const double> omegas,
                                                  std::span<const double> thetas,
                                                  const LineSpec& line = {});

struct FrequencyWindow {
  double omega_lo = 0.0;
  double omega_hi = 0.0;
};

/// True when the refracted ray leaves on the same side of the normal as the
/// incident one, i.e. theta_R and theta_in have opposite signs.
bool is_negative(const RefractionRow& row);

/// Maximal runs of consecutive scanned frequencies at which some incidence
/// angle refracts negatively.
std::vector<FrequencyWindow> negative_refraction_windows(std::span<const RefractionRow> rows);

}  // namespace qcc
