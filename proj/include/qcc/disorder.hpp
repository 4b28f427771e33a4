#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcc/scattering.hpp"

namespace qcc {

struct DisorderSpec {
  CrystalChain base_chain;
  double delta = 0.0;
  std::size_t n_realizations = 1;
  std::uint64_t seed = 0;
  /// Use one draw per junction for both omega_p and Z_J instead of two.
  bool correlated_draws = false;
};

/// N identical junctions over length L: end segments L/(2N) and spacing L/N,
/// so the junctions sit at the centres of N equal cells.
CrystalChain regular_chain(std::size_t n_junctions, double length, const JunctionSpec& junction);

/// Junction j of realization r gets u, w uniform in [-delta, delta] keyed by
/// (seed, r, j, slot): omega_p -> omega_p (1 + u), Z_J -> Z_J (1 + w), i.e.
/// z_ratio -> z_ratio / (1 + w). Segments are untouched.
CrystalChain sample_chain(const DisorderSpec& spec, std::size_t realization);

struct QubitParams {
  double gamma0 = 1.0;
  double f = 0.1;
  double lambda_nr = 0.4;
};

/// n separations on [0, lambda/2) with lambda = 2 pi v / omega; the rates
/// have period lambda/2 in D.
std::vector<double> default_D_grid(double omega, std::size_t n = 64, const LineSpec& line = {});

struct RealizationResult {
  double c_max = 0.0;
  double d_opt = 0.0;
  double t2 = 0.0;  ///< |T|^2 of the chain
};

/// Maximum steady-state concurrence over D_grid with qubits resonant with
/// the drive at omega.
RealizationResult realization_concurrence(const CrystalChain& chain, double omega,
                                          const QubitParams& qubits,
                                          std::span<const double> D_grid,
                                          const LineSpec& line = {});

/// Row-major arrays indexed [i_omega * n_delta + i_delta].
struct EnsembleResult {
  std::vector<double> omega_grid;
  std::vector<double> delta_grid;
  std::vector<double> mean_concurrence;
  std::vector<double> mean_T2;
  std::vector<double> mean_D_opt;
  std::vector<std::size_t> n_failed;

  std::size_t index(std::size_t i_omega, std::size_t i_delta) const {
    return i_omega * delta_grid.size() + i_delta;
  }
};

struct EnsembleOptions {
  std::size_t d_points = 64;
  int workers = 0;  ///< 0 keeps the OpenMP default
};

/// Mean over realizations for every (omega, delta). spec.delta is replaced
/// by each delta_grid entry. Realizations that raise a NumericalError are
/// counted in n_failed and excluded; a point with no successes reports NaN.
/// The parallel map is followed by a serial reduction in index order, so
/// the result is independent of the worker count.
EnsembleResult ensemble_map(const DisorderSpec& spec, std::span<const double> omega_grid,
                            std::span<const double> delta_grid, const QubitParams& qubits,
                            const EnsembleOptions& options = {}, const LineSpec& line = {});

/// Serial reference for ensemble_map.
EnsembleResult ensemble_map_serial(const DisorderSpec& spec, std::span<const double> omega_grid,
                                   std::span<const double> delta_grid, const QubitParams& qubits,
                                   const EnsembleOptions& options = {}, const LineSpec& line = {});

}  // namespace qcc
