#include "qcc/disorder.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include <omp.h>

#include "qcc/errors.hpp"
#include "qcc/openqubits.hpp"
#include "qcc/rng.hpp"

namespace qcc {
namespace {

enum Slot : std::uint64_t { kSlotOmega = 0, kSlotImpedance = 1 };

struct TaskOutcome {
  RealizationResult value;
  bool failed = false;
};

struct TaskGrid {
  std::size_t n_omega, n_delta, n_real;
  std::size_t size() const { return n_omega * n_delta * n_real; }
};

void check_inputs(const DisorderSpec& spec, std::span<const double> omega_grid,
                  std::span<const double> delta_grid) {
  if (omega_grid.empty() || delta_grid.empty()) throw InvalidArgument("ensemble_map: empty grid");
  if (spec.n_realizations < 1) throw InvalidArgument("ensemble_map: n_realizations must be >= 1");
  for (double d : delta_grid) {
    if (!(d >= 0.0) || d >= 1.0) throw InvalidArgument("ensemble_map: delta must lie in [0, 1)");
  }
  spec.base_chain.validate();
}

TaskOutcome evaluate_task(const DisorderSpec& spec, std::span<const double> omega_grid,
                          std::span<const double> delta_grid, const QubitParams& qubits,
                          const EnsembleOptions& options, const LineSpec& line,
                          const TaskGrid& grid, std::size_t k) {
  const std::size_t r = k % grid.n_real;
  const std::size_t i_delta = (k / grid.n_real) % grid.n_delta;
  const std::size_t i_omega = k / (grid.n_real * grid.n_delta);
  DisorderSpec local = spec;
  local.delta = delta_grid[i_delta];
  const double omega = omega_grid[i_omega];
  try {
    const CrystalChain chain = sample_chain(local, r);
    const auto d_grid = default_D_grid(omega, options.d_points, line);
    return {realization_concurrence(chain, omega, qubits, d_grid, line), false};
  } catch (const NumericalError&) {
    return {{}, true};
  }
}

EnsembleResult reduce(std::span<const double> omega_grid, std::span<const double> delta_grid,
                      const TaskGrid& grid, const std::vector<TaskOutcome>& outcomes) {
  EnsembleResult out;
  out.omega_grid.assign(omega_grid.begin(), omega_grid.end());
  out.delta_grid.assign(delta_grid.begin(), delta_grid.end());
  const std::size_t cells = grid.n_omega * grid.n_delta;
  out.mean_concurrence.assign(cells, 0.0);
  out.mean_T2.assign(cells, 0.0);
  out.mean_D_opt.assign(cells, 0.0);
  out.n_failed.assign(cells, 0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    double sum_c = 0.0, sum_t = 0.0, sum_d = 0.0;
    std::size_t ok = 0;
    for (std::size_t r = 0; r < grid.n_real; ++r) {
      const TaskOutcome& o = outcomes[cell * grid.n_real + r];
      if (o.failed) {
        ++out.n_failed[cell];
        continue;
      }
      sum_c += o.value.c_max;
      sum_t += o.value.t2;
      sum_d += o.value.d_opt;
      ++ok;
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double n = static_cast<double>(ok);
    out.mean_concurrence[cell] = ok ? sum_c / n : nan;
    out.mean_T2[cell] = ok ? sum_t / n : nan;
    out.mean_D_opt[cell] = ok ? sum_d / n : nan;
  }
  return out;
}

}  // namespace

CrystalChain regular_chain(std::size_t n_junctions, double length, const JunctionSpec& junction) {
  if (n_junctions == 0) throw InvalidArgument("regular_chain: need at least one junction");
  if (!(length >= 0.0)) throw InvalidArgument("regular_chain: length must be non-negative");
  const double spacing = length / static_cast<double>(n_junctions);
  CrystalChain chain;
  chain.elements.emplace_back(Segment{0.5 * spacing});
  for (std::size_t j = 0; j < n_junctions; ++j) {
    chain.elements.emplace_back(junction);
    chain.elements.emplace_back(Segment{j + 1 < n_junctions ? spacing : 0.5 * spacing});
  }
  return chain;
}

CrystalChain sample_chain(const DisorderSpec& spec, std::size_t realization) {
  if (realization >= spec.n_realizations) {
    throw InvalidArgument("sample_chain: realization index out of range");
  }
  if (!(spec.delta >= 0.0)) throw InvalidArgument("sample_chain: delta must be non-negative");
  CrystalChain chain = spec.base_chain;
  if (spec.delta == 0.0) return chain;
  std::uint64_t j = 0;
  for (auto& e : chain.elements) {
    auto* junction = std::get_if<JunctionSpec>(&e);
    if (!junction) continue;
    const double u = spec.delta * (2.0 * counter_uniform(spec.seed, realization, j, kSlotOmega) - 1.0);
    const double w = spec.correlated_draws
                         ? u
                         : spec.delta * (2.0 * counter_uniform(spec.seed, realization, j, kSlotImpedance) - 1.0);
    junction->omega_p *= 1.0 + u;
    junction->z_ratio /= 1.0 + w;
    ++j;
  }
  return chain;
}

std::vector<double> default_D_grid(double omega, std::size_t n, const LineSpec& line) {
  if (!(omega > 0.0)) throw InvalidArgument("default_D_grid: omega must be positive");
  if (n == 0) throw InvalidArgument("default_D_grid: need at least one point");
  const double half_wavelength = std::numbers::pi * line.v / omega;
  std::vector<double> grid(n);
  for (std::size_t k = 0; k < n; ++k) {
    grid[k] = half_wavelength * static_cast<double>(k) / static_cast<double>(n);
  }
  return grid;
}

RealizationResult realization_concurrence(const CrystalChain& chain, double omega,
                                          const QubitParams& qubits,
                                          std::span<const double> D_grid, const LineSpec& line) {
  if (D_grid.empty()) throw InvalidArgument("realization_concurrence: empty D grid");
  const ScatteringSummary region = chain_scattering(chain, omega, line);
  RealizationResult best;
  best.t2 = std::norm(region.t_total);
  best.c_max = -1.0;
  for (double d : D_grid) {
    const LindbladModel model =
        rates_from_line(region, d, omega, qubits.gamma0, qubits.lambda_nr, qubits.f, line);
    const double c = concurrence(steady_state(build_liouvillian(model)));
    if (c > best.c_max) {
      best.c_max = c;
      best.d_opt = d;
    }
  }
  return best;
}

EnsembleResult ensemble_map(const DisorderSpec& spec, std::span<const double> omega_grid,
                            std::span<const double> delta_grid, const QubitParams& qubits,
                            const EnsembleOptions& options, const LineSpec& line) {
  check_inputs(spec, omega_grid, delta_grid);
  const TaskGrid grid{omega_grid.size(), delta_grid.size(), spec.n_realizations};
  std::vector<TaskOutcome> outcomes(grid.size());
  std::exception_ptr failure;
  const int threads = options.workers > 0 ? options.workers : omp_get_max_threads();
  const auto total = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    try {
      outcomes[static_cast<std::size_t>(k)] = evaluate_task(spec, omega_grid, delta_grid, qubits,
                                                            options, line, grid, static_cast<std::size_t>(k));
    } catch (...) {
#pragma omp critical(qcc_ensemble_map)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return reduce(omega_grid, delta_grid, grid, outcomes);
}

EnsembleResult ensemble_map_serial(const DisorderSpec& spec, std::span<const double> omega_grid,
                                   std::span<const double> delta_grid, const QubitParams& qubits,
                                   const EnsembleOptions& options, const LineSpec& line) {
  check_inputs(spec, omega_grid, delta_grid);
  const TaskGrid grid{omega_grid.size(), delta_grid.size(), spec.n_realizations};
  std::vector<TaskOutcome> outcomes(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    outcomes[k] = evaluate_task(spec, omega_grid, delta_grid, qubits, options, line, grid, k);
  }
  return reduce(omega_grid, delta_grid, grid, outcomes);
}

}  // namespace qcc
