#pragma once

#include <span>
#include <vector>

#include "qcc/scattering.hpp"

namespace qcc {

/// Quasimomentum p per cell at one frequency. Re p in [0, pi], Im p >= 0;
/// Im p > 0 marks an evanescent (gap) mode.
struct BlochPoint {
  double omega = 0.0;
  Complex p{};
  double trace = 0.0;  ///< Tr T_cell

  bool propagating() const;
};

struct BandGap {
  double omega_lo = 0.0;
  double omega_hi = 0.0;
};

/// |Tr| up to 2 (1 + kEdgeTolerance) is treated as a band point, so band
/// edges belong to bands.
inline constexpr double kEdgeTolerance = 1e-12;

/// Real trace of the cell transfer matrix. Throws NonRealTrace if the
/// imaginary part exceeds 1e-9 (1 + |Tr|).
double cell_trace(const CrystalChain& cell, double omega, const LineSpec& line = {});

/// p = arccos(Tr / 2) on the branch with Im p >= 0.
BlochPoint bloch_phase(const CrystalChain& cell, double omega, const LineSpec& line = {});

/// One BlochPoint per grid frequency, evaluated in parallel.
std::vector<BlochPoint> band_structure(const CrystalChain& cell, std::span<const double> omega_grid,
                                       const LineSpec& line = {});
/// Serial reference for band_structure.
std::vector<BlochPoint> band_structure_serial(const CrystalChain& cell,
                                              std::span<const double> omega_grid,
                                              const LineSpec& line = {});

/// Maximal runs of gap points, with edges at grid resolution (the outermost
/// gap points of each run).
std::vector<BandGap> find_gaps(std::span<const BlochPoint> points);

/// As above, with each interior edge refined by bisection on |Tr| - 2
/// between the last band point and the first gap point, to 1e-8 relative.
std::vector<BandGap> find_gaps(std::span<const BlochPoint> points, const CrystalChain& cell,
                               const LineSpec& line = {});

/// Group velocity |d omega / dp| times the cell length, by central
/// difference with step h (default 1e-5 omega). Throws InsideGap when omega
/// or omega +- h is not propagating.
double group_velocity(const CrystalChain& cell, double omega, const LineSpec& line = {},
                      double h = 0.0);

/// Uniform grid of n points on [start, stop].
std::vector<double> linspace(double start, double stop, std::size_t n);

}  // namespace qcc
