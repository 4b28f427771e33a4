#include "qcc/crystal2d.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "qcc/errors.hpp"

namespace qcc {
namespace {

constexpr double kPi = std::numbers::pi;

double real_trace(const TransferMatrix2& t) {
  const Complex tr = t.trace();
  if (std::abs(tr.imag()) > 1e-9 * (1.0 + std::abs(tr.real()))) {
    throw NonRealTrace("branch trace is not real: Im = " + std::to_string(tr.imag()));
  }
  return tr.real();
}

double wrap_angle(double x) {
  double y = std::remainder(x, 2.0 * kPi);
  if (y >= kPi) y -= 2.0 * kPi;
  return y;
}

double cell_length_or_throw(const CrystalChain& cell, const char* what) {
  const double a = cell.length();
  if (!(a > 0.0)) throw InvalidArgument(std::string(what) + ": branch cell has zero length");
  return a;
}

struct Crossing {
  double px, py;
};

}  // namespace

BranchInvariants branch_invariants(const TransferMatrix2& t) {
  if (t.dim() != 2) throw DimensionMismatch("branch_invariants: expected a 2x2 matrix");
  const Complex a = t(0, 0), b = t(0, 1), c = t(1, 0), d = t(1, 1);
  return {0.5 * (a + b + c + d), 0.5 * (a - b + c - d), 0.5 * (a + b - c - d),
          0.5 * (a - b - c + d)};
}

CMat build_M(const CrystalChain& cell_h, const CrystalChain& cell_v, double omega, double px,
             double py, const LineSpec& line) {
  const BranchInvariants h = branch_invariants(chain_T(cell_h, omega, line));
  const BranchInvariants v = branch_invariants(chain_T(cell_v, omega, line));
  const Complex x = std::polar(1.0, -px);
  const Complex y = std::polar(1.0, -py);
  return CMat(4, {1.0, 0.0, -1.0, 0.0,                                 //
                  x * h.pp - 1.0, x * h.pm, 0.0, 0.0,                  //
                  0.0, 0.0, y * v.pp - 1.0, y * v.pm,                  //
                  x * h.mp, x * h.mm - 1.0, y * v.mp, y * v.mm - 1.0});
}

Complex dispersion_residual(const CrystalChain& cell_h, const CrystalChain& cell_v, double omega,
                            double px, double py, const LineSpec& line) {
  return det(build_M(cell_h, cell_v, omega, px, py, line));
}

Dispersion2D::Dispersion2D(const CrystalChain& cell_h, const CrystalChain& cell_v, double omega,
                           const LineSpec& line)
    : omega_(omega) {
  const TransferMatrix2 th = chain_T(cell_h, omega, line);
  const TransferMatrix2 tv = chain_T(cell_v, omega, line);
  tau_h_ = real_trace(th);
  tau_v_ = real_trace(tv);
  const double g_h = branch_invariants(th).pm.imag();
  const double g_v = branch_invariants(tv).pm.imag();
  const double sum = g_h + g_v;
  if (std::abs(sum) > 1e-14 * (std::abs(g_h) + std::abs(g_v))) {
    w_h_ = g_v / sum;
    w_v_ = g_h / sum;
  } else {
    w_h_ = g_v;
    w_v_ = g_h;
  }
}

double Dispersion2D::residual(double px, double py) const {
  return w_h_ * (2.0 * std::cos(px) - tau_h_) + w_v_ * (2.0 * std::cos(py) - tau_v_);
}

std::pair<double, double> Dispersion2D::gradient(double px, double py) const {
  return {-2.0 * w_h_ * std::sin(px), -2.0 * w_v_ * std::sin(py)};
}

std::vector<Bloch2D> isofrequency_contour(const CrystalChain& cell_h, const CrystalChain& cell_v,
                                          double omega, std::size_t resolution,
                                          const LineSpec& line) {
  if (resolution < 2) throw InvalidArgument("isofrequency_contour: resolution must be >= 2");
  const Dispersion2D disp(cell_h, cell_v, omega, line);
  const std::size_t n = resolution;
  const double step = 2.0 * kPi / static_cast<double>(n - 1);
  auto coord = [&](std::size_t i) { return -kPi + step * static_cast<double>(i); };

  std::vector<double> f(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) f[i * n + j] = disp.residual(coord(i), coord(j));
  }

  // Every grid edge whose endpoints bracket a zero contributes the linear
  // interpolant of the crossing; exact zeros on vertices are taken as is.
  std::vector<Crossing> raw;
  auto interp = [](double fa, double fb) { return fa / (fa - fb); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double f0 = f[i * n + j];
      if (f0 == 0.0) {
        raw.push_back({coord(i), coord(j)});
        continue;
      }
      if (i + 1 < n) {
        const double f1 = f[(i + 1) * n + j];
        if (f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0)) {
          raw.push_back({coord(i) + step * interp(f0, f1), coord(j)});
        }
      }
      if (j + 1 < n) {
        const double f1 = f[i * n + j + 1];
        if (f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0)) {
          raw.push_back({coord(i), coord(j) + step * interp(f0, f1)});
        }
      }
    }
  }
  if (raw.empty()) {
    throw EmptyContour("isofrequency_contour: no Bloch modes at omega = " + std::to_string(omega));
  }

  std::vector<Bloch2D> out;
  out.reserve(raw.size());
  for (const auto& c : raw) {
    double px = c.px;
    double py = c.py;
    const double value = disp.residual(px, py);
    const auto [gx, gy] = disp.gradient(px, py);
    const double g2 = gx * gx + gy * gy;
    if (g2 > 0.0) {
      px -= value * gx / g2;
      py -= value * gy / g2;
    }
    out.push_back({omega, wrap_angle(px), wrap_angle(py)});
  }
  return out;
}

Velocity2D group_velocity_2d(const CrystalChain& cell_h, const CrystalChain& cell_v, double omega,
                             double px, double py, const LineSpec& line) {
  const double a_h = cell_length_or_throw(cell_h, "group_velocity_2d");
  const double a_v = cell_length_or_throw(cell_v, "group_velocity_2d");
  const double h = 1e-5 * omega;
  const Dispersion2D here(cell_h, cell_v, omega, line);
  const double f_plus = Dispersion2D(cell_h, cell_v, omega + h, line).residual(px, py);
  const double f_minus = Dispersion2D(cell_h, cell_v, omega - h, line).residual(px, py);
  const double f_omega = (f_plus - f_minus) / (2.0 * h);
  if (!(std::abs(f_omega) > 1e-12) || !std::isfinite(f_omega)) {
    throw BandEdge("group_velocity_2d: residual is stationary in omega at omega = " +
                   std::to_string(omega));
  }
  const auto [gx, gy] = here.gradient(px, py);
  return {-gx / f_omega * a_h, -gy / f_omega * a_v};
}

std::optional<Refraction> refract(const Interface& iface, double omega, double theta_in,
                                  const LineSpec& line) {
  if (!(iface.c1 > 0.0)) throw InvalidArgument("refract: c1 must be positive");
  if (!(omega > 0.0)) throw InvalidArgument("refract: omega must be positive");
  const double a = cell_length_or_throw(iface.cell, "refract");
  const double q = omega * a / iface.c1 * std::sin(theta_in);
  std::optional<Dispersion2D> maybe_disp;
  try {
    maybe_disp.emplace(iface.cell, iface.cell, omega, line);
  } catch (const SingularAtResonance&) {
    return std::nullopt;  // a junction on resonance is a perfect mirror
  }
  const Dispersion2D& disp = *maybe_disp;

  const double rs2 = std::numbers::sqrt2 / 2.0;
  auto momentum = [&](double s) -> std::pair<double, double> {
    if (iface.rotated) return {q * rs2 + s, q * rs2 - s};
    return {s, q};
  };
  auto f = [&](double s) {
    const auto [px, py] = momentum(s);
    return disp.residual(px, py);
  };

  constexpr std::size_t kSamples = 2048;
  const double ds = 2.0 * kPi / static_cast<double>(kSamples);
  std::vector<double> roots;
  double s0 = -kPi;
  double f0 = f(s0);
  for (std::size_t k = 1; k <= kSamples; ++k) {
    const double s1 = -kPi + ds * static_cast<double>(k);
    const double f1 = f(s1);
    if (f0 == 0.0) {
      roots.push_back(s0);
    } else if (f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0)) {
      double lo = s0, hi = s1, flo = f0;
      for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    s0 = s1;
    f0 = f1;
  }

  std::optional<Refraction> best;
  double best_abs_s = 0.0;
  for (double s : roots) {
    const auto [px, py] = momentum(s);
    Velocity2D v;
    try {
      v = group_velocity_2d(iface.cell, iface.cell, omega, px, py, line);
    } catch (const BandEdge&) {
      continue;
    } catch (const SingularAtResonance&) {
      continue;
    }
    double vn = v.vx;
    double vt = v.vy;
    if (iface.rotated) {
      vn = (v.vx - v.vy) * rs2;
      vt = (v.vx + v.vy) * rs2;
    }
    if (!(vn > 0.0)) continue;
    const double abs_s = std::abs(wrap_angle(s));
    if (best && abs_s >= best_abs_s) continue;
    best_abs_s = abs_s;
    best = Refraction{std::atan2(vt, vn), q, Bloch2D{omega, wrap_angle(px), wrap_angle(py)}, vn, vt};
  }
  return best;
}

std::vector<RefractionRow> refraction_scan(const Interface& iface, std::span<const double> omegas,
                                           std::span<const double> thetas,
                                           const LineSpec& line) {
  const std::size_t nt = thetas.size();
  const auto total = static_cast<std::ptrdiff_t>(omegas.size() * nt);
  std::vector<RefractionRow> rows(static_cast<std::size_t>(total));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    RefractionRow& row = rows[idx];
    row.omega = omegas[idx / nt];
    row.theta_in = thetas[idx % nt];
    try {
      row.result = refract(iface, row.omega, row.theta_in, line);
    } catch (...) {
#pragma omp critical(qcc_refraction_scan)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<RefractionRow> refraction_scan_serial(const Interface& iface,
                                                  std::span<const double> omegas,
                                                  std::span<const double> thetas,
                                                  const LineSpec& line) {
  std::vector<RefractionRow> rows;
  rows.reserve(omegas.size() * thetas.size());
  for (double w : omegas) {
    for (double th : thetas) rows.push_back({w, th, refract(iface, w, th, line)});
  }
  return rows;
}

bool is_negative(const RefractionRow& row) {
  return row.result && row.result->theta_R * row.theta_in < 0.0;
}

std::vector<FrequencyWindow> negative_refraction_windows(std::span<const RefractionRow> rows) {
  // Collapse to one flag per distinct frequency, in scan order.
  std::vector<std::pair<double, bool>> flags;
  for (const auto& row : rows) {
    if (flags.empty() || flags.back().first != row.omega) flags.emplace_back(row.omega, false);
    flags.back().second = flags.back().second || is_negative(row);
  }
  std::vector<FrequencyWindow> windows;
  for (std::size_t i = 0; i < flags.size();) {
    if (!flags[i].second) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < flags.size() && flags[j + 1].second) ++j;
    windows.push_back({flags[i].first, flags[j].first});
    i = j + 1;
  }
  return windows;
}

}  // namespace qcc
