#include "qcc/openqubits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "qcc/errors.hpp"

namespace qcc {
namespace {

CMat single(Complex a, Complex b, Complex c, Complex d) { return CMat(2, {a, b, c, d}); }

CMat embed(const CMat& op, int qubit) {
  const CMat id = CMat::identity(2);
  if (qubit == 0) return kron(op, id);
  if (qubit == 1) return kron(id, op);
  throw InvalidArgument("qubit index must be 0 or 1");
}

CMat matrix_sqrt_psd(const CMat& a) {
  const HermitianEigen e = eigh(a);
  const std::size_t n = a.dim();
  CMat out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sqrt(std::max(e.values[k], 0.0));
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += s * e.vectors(i, k) * std::conj(e.vectors(j, k));
      }
    }
  }
  return out;
}

}  // namespace

void LindbladModel::validate() const {
  if (!(gamma0 > 0.0)) throw InvalidArgument("LindbladModel: gamma0 must be positive");
  if (gamma[0][1] != gamma[1][0]) throw InvalidArgument("LindbladModel: gamma must be symmetric");
  if (gamma[0][0] < 0.0 || gamma[1][1] < 0.0) {
    throw InvalidArgument("LindbladModel: diagonal rates must be non-negative");
  }
  if (std::abs(gamma[0][1]) > std::sqrt(gamma[0][0] * gamma[1][1]) + 1e-9) {
    throw InvalidArgument("LindbladModel: rate matrix is not positive semidefinite");
  }
}

CMat sigma_plus(int qubit) { return embed(single(0.0, 1.0, 0.0, 0.0), qubit); }
CMat sigma_minus(int qubit) { return embed(single(0.0, 0.0, 1.0, 0.0), qubit); }

CVec vectorize(const CMat& rho) { return {rho.entries().begin(), rho.entries().end()}; }

CMat unvectorize(std::span<const Complex> v) {
  const auto n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size()) throw DimensionMismatch("unvectorize: length is not a square");
  return CMat(n, CVec(v.begin(), v.end()));
}

LindbladModel rates_from_line(const ScatteringSummary& region, double D, double epsilon,
                              double gamma0, double lambda_nr, double f, const LineSpec& line) {
  if (!(epsilon > 0.0)) throw InvalidArgument("rates_from_line: epsilon must be positive");
  if (!(gamma0 > 0.0)) throw InvalidArgument("rates_from_line: gamma0 must be positive");
  if (!(lambda_nr >= 0.0)) throw InvalidArgument("rates_from_line: lambda_nr must be >= 0");
  const double k = epsilon / line.v;
  const Complex u = std::polar(1.0, -2.0 * k * D);
  LindbladModel m;
  m.epsilon = epsilon;
  m.omega_d = epsilon;
  m.f = f;
  m.gamma0 = gamma0;
  m.lambda_nr = lambda_nr;
  m.gamma[0][0] = gamma0 * (1.0 - (region.r_total * u).real()) + lambda_nr;
  m.gamma[1][1] = gamma0 * (1.0 - (region.r_right * u).real()) + lambda_nr;
  m.gamma[0][1] = m.gamma[1][0] = gamma0 * (region.t_total * u).real();
  m.J12 = 0.5 * gamma0 * (region.t_total * u).imag();
  return m;
}

CMat build_liouvillian(const LindbladModel& model) {
  model.validate();
  const CMat id = CMat::identity(4);
  const CMat sp[2] = {sigma_plus(0), sigma_plus(1)};
  const CMat sm[2] = {sigma_minus(0), sigma_minus(1)};

  const double detuning = model.epsilon - model.omega_d;
  CMat h = model.f * (sp[0] + sm[0]) + model.J12 * (sp[0] * sm[1] + sp[1] * sm[0]);
  if (detuning != 0.0) {
    // sz = s+ s- - s- s+ on each qubit.
    for (int q = 0; q < 2; ++q) h += (0.5 * detuning) * (sp[q] * sm[q] - sm[q] * sp[q]);
  }

  CMat l = Complex(0.0, -1.0) * (kron(h, id) - kron(id, h.transpose()));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double g = model.gamma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (g == 0.0) continue;
      const CMat pm = sp[i] * sm[j];
      l += g * (kron(sm[i], sp[j].transpose()) - 0.5 * kron(pm, id) - 0.5 * kron(id, pm.transpose()));
    }
  }
  return l;
}

DensityMatrix steady_state(const CMat& liouvillian) {
  const NullSpaceInfo info = null_space_info(liouvillian);
  const std::size_t n = info.sigma.size();
  if (n < 2) throw DimensionMismatch("steady_state: Liouvillian too small");
  const double largest = info.sigma.front();
  if (largest == 0.0 || info.sigma[n - 2] < 1e-8 * largest) {
    throw DegenerateSteadyState("steady_state: second-smallest singular value " +
                                std::to_string(info.sigma[n - 2]) + " indicates several steady states");
  }
  CMat rho = unvectorize(info.vector);
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-14) throw NumericalError("steady_state: null vector is traceless");
  rho *= 1.0 / tr;
  rho = 0.5 * (rho + rho.adjoint());
  const CVec residual = liouvillian * std::span<const Complex>(vectorize(rho));
  if (norm(residual) > 1e-10 * std::max(1.0, largest)) {
    throw NumericalError("steady_state: residual " + std::to_string(norm(residual)) + " too large");
  }
  return rho;
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimensionMismatch("concurrence: expected a 4x4 density matrix");
  const CMat sy = single(0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0);
  const CMat yy = kron(sy, sy);
  const CMat tilde = yy * rho.conj() * yy;
  const CMat root = matrix_sqrt_psd(rho);
  const HermitianEigen e = eigh(root * tilde * root);
  std::array<double, 4> lam{};
  for (std::size_t k = 0; k < 4; ++k) lam[k] = std::sqrt(std::max(e.values[k], 0.0));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::clamp(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0);
}

bool is_density_matrix(const DensityMatrix& rho, double tol) {
  if ((rho - rho.adjoint()).norm() > tol) return false;
  if (std::abs(rho.trace() - 1.0) > tol) return false;
  const HermitianEigen e = eigh(rho);
  return e.values.front() >= -1e-9;
}

}  // namespace qcc
