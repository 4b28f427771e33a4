#include "qcc/crystal1d.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>

#include "qcc/errors.hpp"

namespace qcc {
namespace {

Complex arccos_upper(double x) {
  if (x > 1.0 + kEdgeTolerance) return {0.0, std::acosh(x)};
  if (x < -1.0 - kEdgeTolerance) return {std::numbers::pi, std::acosh(-x)};
  return {std::acos(std::clamp(x, -1.0, 1.0)), 0.0};
}

// |Tr| - 2, with a resonance treated as deep inside a gap.
double edge_function(const CrystalChain& cell, double omega, const LineSpec& line) {
  try {
    return std::abs(cell_trace(cell, omega, line)) - 2.0;
  } catch (const SingularAtResonance&) {
    return std::numeric_limits<double>::infinity();
  }
}

double bisect_edge(const CrystalChain& cell, double band_omega, double gap_omega,
                   const LineSpec& line) {
  double a = band_omega;
  double b = gap_omega;
  while (std::abs(b - a) > 1e-8 * std::max(std::abs(a), std::abs(b))) {
    const double mid = 0.5 * (a + b);
    if (edge_function(cell, mid, line) > 2.0 * kEdgeTolerance) {
      b = mid;
    } else {
      a = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

bool BlochPoint::propagating() const { return p.imag() == 0.0; }

double cell_trace(const CrystalChain& cell, double omega, const LineSpec& line) {
  const Complex tr = chain_T(cell, omega, line).trace();
  if (std::abs(tr.imag()) > 1e-9 * (1.0 + std::abs(tr.real()))) {
    throw NonRealTrace("cell trace has imaginary part " + std::to_string(tr.imag()) +
                       " at omega = " + std::to_string(omega));
  }
  return tr.real();
}

BlochPoint bloch_phase(const CrystalChain& cell, double omega, const LineSpec& line) {
  const double tr = cell_trace(cell, omega, line);
  return {omega, arccos_upper(0.5 * tr), tr};
}

std::vector<BlochPoint> band_structure(const CrystalChain& cell, std::span<const double> omega_grid,
                                       const LineSpec& line) {
  const auto n = static_cast<std::ptrdiff_t>(omega_grid.size());
  std::vector<BlochPoint> out(omega_grid.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = bloch_phase(cell, omega_grid[static_cast<std::size_t>(i)], line);
    } catch (...) {
#pragma omp critical(qcc_band_structure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<BlochPoint> band_structure_serial(const CrystalChain& cell,
                                              std::span<const double> omega_grid,
                                              const LineSpec& line) {
  std::vector<BlochPoint> out;
  out.reserve(omega_grid.size());
  for (double w : omega_grid) out.push_back(bloch_phase(cell, w, line));
  return out;
}

std::vector<BandGap> find_gaps(std::span<const BlochPoint> points) {
  std::vector<BandGap> gaps;
  std::size_t i = 0;
  while (i < points.size()) {
    if (points[i].propagating()) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < points.size() && !points[j + 1].propagating()) ++j;
    gaps.push_back({points[i].omega, points[j].omega});
    i = j + 1;
  }
  return gaps;
}

std::vector<BandGap> find_gaps(std::span<const BlochPoint> points, const CrystalChain& cell,
                               const LineSpec& line) {
  std::vector<BandGap> gaps;
  std::size_t i = 0;
  while (i < points.size()) {
    if (points[i].propagating()) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < points.size() && !points[j + 1].propagating()) ++j;
    BandGap g{points[i].omega, points[j].omega};
    if (i > 0) g.omega_lo = bisect_edge(cell, points[i - 1].omega, points[i].omega, line);
    if (j + 1 < points.size()) g.omega_hi = bisect_edge(cell, points[j + 1].omega, points[j].omega, line);
    gaps.push_back(g);
    i = j + 1;
  }
  return gaps;
}

double group_velocity(const CrystalChain& cell, double omega, const LineSpec& line, double h) {
  const double a = cell.length();
  if (!(a > 0.0)) throw InvalidArgument("group_velocity: cell has zero length");
  if (h <= 0.0) h = 1e-5 * omega;
  const BlochPoint lo = bloch_phase(cell, omega - h, line);
  const BlochPoint hi = bloch_phase(cell, omega + h, line);
  const BlochPoint mid = bloch_phase(cell, omega, line);
  if (!lo.propagating() || !hi.propagating() || !mid.propagating()) {
    throw InsideGap("group_velocity: omega = " + std::to_string(omega) + " is not inside a band");
  }
  const double dp = hi.p.real() - lo.p.real();
  if (dp == 0.0) throw InsideGap("group_velocity: flat Bloch phase at band edge");
  return std::abs(2.0 * h / dp) * a;
}

std::vector<double> linspace(double start, double stop, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = start;
    return out;
  }
  const double step = (stop - start) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = start + step * static_cast<double>(i);
  if (n > 1) out.back() = stop;
  return out;
}

}  // namespace qcc
