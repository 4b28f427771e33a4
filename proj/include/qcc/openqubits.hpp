#pragma once

// Two qubits coupled through the line. Basis order |ee>, |eg>, |ge>, |gg>;
// density matrices are 4x4 and the Liouvillian acts on the row-major
// vectorisation vec(rho)[4 i + j] = rho(i, j).

#include <array>

#include "qcc/linalg.hpp"
#include "qcc/scattering.hpp"

namespace qcc {

struct LindbladModel {
  double epsilon = 1.0;  ///< qubit splitting
  double f = 0.0;        ///< drive amplitude on qubit 1
  double omega_d = 1.0;  ///< drive frequency (resonant: omega_d = epsilon)
  std::array<std::array<double, 2>, 2> gamma{};  ///< gamma_ij, lambda_nr included on the diagonal
  double J12 = 0.0;
  double lambda_nr = 0.0;
  double gamma0 = 1.0;

  /// Symmetric gamma, gamma_ii >= 0, |gamma_12| <= sqrt(gamma_11 gamma_22)
  /// + 1e-9, gamma0 > 0. Throws InvalidArgument.
  void validate() const;
};

using DensityMatrix = CMat;

/// Rates for qubits at x1 = -D and x2 = L + D, with k = epsilon / v and
/// u = exp(-2 i k D):
///   gamma_11 = gamma0 (1 - Re(R u)) + lambda,  gamma_22 = gamma0 (1 - Re(R' u)) + lambda,
///   gamma_12 = gamma0 Re(T u),  J12 = gamma0 Im(T u) / 2.
LindbladModel rates_from_line(const ScatteringSummary& region, double D, double epsilon,
                              double gamma0, double lambda_nr, double f = 0.0,
                              const LineSpec& line = {});

/// Generator in the frame rotating at omega_d:
///   H = (epsilon - omega_d)/2 (sz1 + sz2) + f (s1+ + s1-) + J12 (s1+ s2- + s2+ s1-)
///   L rho = -i[H, rho] + sum_ij gamma_ij (s_i- rho s_j+ - 1/2 {s_i+ s_j-, rho}).
CMat build_liouvillian(const LindbladModel& model);

/// Trace-normalised, Hermitised null vector of L. Throws
/// DegenerateSteadyState if the second-smallest singular value is below
/// 1e-8 times the largest, NumericalError if the residual exceeds 1e-10.
DensityMatrix steady_state(const CMat& liouvillian);

/// Wootters concurrence, using the Hermitian form sqrt(rho) rho~ sqrt(rho).
double concurrence(const DensityMatrix& rho);

/// Checks Hermiticity, unit trace (1e-10) and eigenvalues >= -1e-9.
bool is_density_matrix(const DensityMatrix& rho, double tol = 1e-10);

/// Single-qubit operators embedded in the two-qubit space (qubit 0 or 1).
CMat sigma_plus(int qubit);
CMat sigma_minus(int qubit);

/// Row-major vectorisation and its inverse.
CVec vectorize(const CMat& rho);
CMat unvectorize(std::span<const Complex> v);

}  // namespace qcc
