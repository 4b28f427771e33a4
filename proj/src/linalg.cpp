#include "qcc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "qcc/errors.hpp"

namespace qcc {
namespace {

void check_same_dim(const CMat& a, const CMat& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()) + ")");
  }
}

Eigen::MatrixXcd to_eigen(const CMat& a) {
  const auto n = static_cast<Eigen::Index>(a.dim());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return m;
}

Complex det2(Complex a, Complex b, Complex c, Complex d) { return a * d - b * c; }

Complex det3(const CMat& m, const std::size_t r[3], const std::size_t c[3]) {
  return m(r[0], c[0]) * det2(m(r[1], c[1]), m(r[1], c[2]), m(r[2], c[1]), m(r[2], c[2])) -
         m(r[0], c[1]) * det2(m(r[1], c[0]), m(r[1], c[2]), m(r[2], c[0]), m(r[2], c[2])) +
         m(r[0], c[2]) * det2(m(r[1], c[0]), m(r[1], c[1]), m(r[2], c[0]), m(r[2], c[1]));
}

Complex det_lu(CMat m) {
  const std::size_t n = m.dim();
  Complex result{1.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > std::abs(m(pivot, k))) pivot = i;
    }
    if (m(pivot, k) == Complex{}) return Complex{};
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      result = -result;
    }
    result *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= factor * m(k, j);
    }
  }
  return result;
}

Complex horner(std::span<const Complex> coeffs, Complex x) {
  Complex acc{};
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

Complex horner_derivative(std::span<const Complex> coeffs, Complex x) {
  Complex acc{};
  for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * coeffs[k];
  return acc;
}

// Aberth-Ehrlich simultaneous iteration for a monic polynomial.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return {};
  // Cauchy bound on root moduli.
  double bound = 0.0;
  for (std::size_t k = 0; k < n; ++k) bound = std::max(bound, std::abs(coeffs[k]));
  bound += 1.0;

  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25) / static_cast<double>(n) + 0.4;
    z[k] = 0.5 * bound * Complex{std::cos(angle), std::sin(angle)};
  }

  constexpr int kMaxIter = 500;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double max_step = 0.0;
    double max_mod = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Complex p = horner(coeffs, z[k]);
      if (p == Complex{}) continue;
      const Complex ratio = p / horner_derivative(coeffs, z[k]);
      Complex repulsion{};
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      }
      const Complex step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step));
      max_mod = std::max(max_mod, std::abs(z[k]));
    }
    if (max_step <= 1e-15 * std::max(1.0, max_mod)) return z;
  }
  // Multiple roots converge only linearly; accept if residuals are tiny.
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  for (const auto& root : z) {
    const double mod = std::max(1.0, std::abs(root));
    if (std::abs(horner(coeffs, root)) > 1e-8 * scale * std::pow(mod, static_cast<double>(n))) {
      throw NonConvergence("eigvals: characteristic polynomial roots did not converge");
    }
  }
  return z;
}

}  // namespace

CMat::CMat(std::size_t dim) : dim_(dim), data_(dim * dim) {}

CMat::CMat(std::size_t dim, std::initializer_list<Complex> entries)
    : CMat(dim, CVec(entries)) {}

CMat::CMat(std::size_t dim, CVec entries) : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw InvalidArgument("CMat: expected " + std::to_string(dim_ * dim_) + " entries, got " +
                          std::to_string(data_.size()));
  }
  for (const auto& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidArgument("CMat: non-finite entry");
    }
  }
}

CMat CMat::identity(std::size_t dim) {
  CMat m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::diagonal(std::span<const Complex> diag) {
  CMat m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Complex CMat::trace() const {
  Complex sum{};
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

CMat CMat::adjoint() const {
  CMat out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

CMat CMat::transpose() const {
  CMat out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

CMat CMat::conj() const {
  CMat out(*this);
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

double CMat::norm() const { return qcc::norm(data_); }

CMat& CMat::operator+=(const CMat& other) {
  check_same_dim(*this, other, "operator+=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

CMat& CMat::operator-=(const CMat& other) {
  check_same_dim(*this, other, "operator-=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

CMat& CMat::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

CMat operator+(CMat a, const CMat& b) { return a += b; }
CMat operator-(CMat a, const CMat& b) { return a -= b; }
CMat operator*(Complex scale, CMat a) { return a *= scale; }
CMat operator*(const CMat& a, const CMat& b) { return matmul(a, b); }

CVec operator*(const CMat& a, std::span<const Complex> v) {
  if (v.size() != a.dim()) throw DimensionMismatch("matrix-vector product: dimension mismatch");
  CVec out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Complex sum{};
    for (std::size_t j = 0; j < a.dim(); ++j) sum += a(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

CMat matmul(const CMat& a, const CMat& b) {
  check_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  CMat out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

CMat kron(const CMat& a, const CMat& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  CMat out(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

Complex det(const CMat& a) {
  switch (a.dim()) {
    case 0:
      return 1.0;
    case 1:
      return a(0, 0);
    case 2:
      return det2(a(0, 0), a(0, 1), a(1, 0), a(1, 1));
    case 3: {
      const std::size_t idx[3] = {0, 1, 2};
      return det3(a, idx, idx);
    }
    case 4: {
      Complex sum{};
      const std::size_t rows[3] = {1, 2, 3};
      for (std::size_t c = 0; c < 4; ++c) {
        std::size_t cols[3];
        std::size_t m = 0;
        for (std::size_t j = 0; j < 4; ++j) {
          if (j != c) cols[m++] = j;
        }
        const double sign = (c % 2 == 0) ? 1.0 : -1.0;
        sum += sign * a(0, c) * det3(a, rows, cols);
      }
      return sum;
    }
    default:
      return det_lu(a);
  }
}

double norm(std::span<const Complex> v) {
  double sum = 0.0;
  for (const auto& z : v) sum += std::norm(z);
  return std::sqrt(sum);
}

std::vector<double> singular_values(const CMat& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

NullSpaceInfo null_space_info(const CMat& a) {
  const std::size_t n = a.dim();
  if (n == 0) throw DimensionMismatch("null_vector: empty matrix");
  NullSpaceInfo info{CVec(n), std::vector<double>(n, 0.0)};
  if (std::all_of(a.entries().begin(), a.entries().end(), [](Complex z) { return z == Complex{}; })) {
    info.vector[0] = 1.0;
    return info;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  for (std::size_t i = 0; i < n; ++i) info.sigma[i] = s(static_cast<Eigen::Index>(i));
  const auto col = svd.matrixV().col(static_cast<Eigen::Index>(n) - 1);
  auto& v = info.vector;
  std::size_t largest = 0;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = col(static_cast<Eigen::Index>(i));
    if (std::abs(v[i]) > std::abs(v[largest])) largest = i;
  }
  const Complex phase = std::abs(v[largest]) / v[largest];
  const double scale = 1.0 / norm(v);
  for (auto& z : v) z *= phase * scale;
  return info;
}

CVec null_vector(const CMat& a, double tol) {
  NullSpaceInfo info = null_space_info(a);
  const double largest = info.sigma.front();
  const double smallest = info.sigma.back();
  if (smallest > tol * largest) {
    throw NoNullSpace("null_vector: smallest singular value " + std::to_string(smallest) +
                      " exceeds tolerance " + std::to_string(tol * largest));
  }
  return std::move(info.vector);
}

std::vector<Complex> characteristic_polynomial(const CMat& a) {
  const std::size_t n = a.dim();
  std::vector<Complex> c(n + 1);
  c[n] = 1.0;
  CMat m(n);  // M_0 = 0
  const CMat id = CMat::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = matmul(a, m) + c[n - k + 1] * id;
    c[n - k] = -matmul(a, m).trace() / static_cast<double>(k);
  }
  return c;
}

std::vector<Complex> eigvals(const CMat& a) {
  const std::size_t n = a.dim();
  if (n > 4) throw DimensionMismatch("eigvals: dimension must be <= 4");
  const auto coeffs = characteristic_polynomial(a);
  auto roots = polynomial_roots(coeffs);
  // Newton polish with the directly evaluated determinant.
  for (auto& lambda : roots) {
    CMat shifted = lambda * CMat::identity(n) - a;
    const Complex value = det(shifted);
    const Complex slope = horner_derivative(coeffs, lambda);
    if (std::abs(slope) > 1e-8 * std::max(1.0, std::abs(value))) {
      const Complex candidate = lambda - value / slope;
      CMat check = candidate * CMat::identity(n) - a;
      if (std::abs(det(check)) < std::abs(value)) lambda = candidate;
    }
  }
  return roots;
}

HermitianEigen eigh(const CMat& a) {
  const std::size_t n = a.dim();
  CMat m = 0.5 * (a + a.adjoint());
  CMat v = CMat::identity(n);

  const double scale = std::max(m.norm(), 1e-300);
  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(m(p, q));
    }
    if (std::sqrt(off) <= 1e-15 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const Complex phase = apq / mag;
        const double tau = (m(q, q).real() - m(p, p).real()) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U has columns p, q: (c, -s conj(phase)) and (s phase, c).
        const Complex upq = s * phase;
        const Complex uqp = -s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {  // m <- m U
          const Complex mkp = m(k, p);
          const Complex mkq = m(k, q);
          m(k, p) = mkp * c + mkq * uqp;
          m(k, q) = mkp * upq + mkq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {  // m <- U^H m
          const Complex mpk = m(p, k);
          const Complex mqk = m(q, k);
          m(p, k) = c * mpk + std::conj(uqp) * mqk;
          m(q, k) = std::conj(upq) * mpk + c * mqk;
        }
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {  // v <- v U
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * c + vkq * uqp;
          v(k, q) = vkp * upq + vkq * c;
        }
      }
    }
  }
  if (sweep == kMaxSweeps) throw NonConvergence("eigh: Jacobi sweeps did not converge");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return m(x, x).real() < m(y, y).real(); });
  HermitianEigen out{std::vector<double>(n), CMat(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = m(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace qcc
