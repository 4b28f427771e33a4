#pragma once

// Small dense complex linear algebra. Every object in this project is at
// most 16x16 (the two-qubit Liouvillian), so storage is a flat row-major
// vector and all algorithms are the direct ones.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qcc {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// Square complex matrix, row-major.
class CMat {
 public:
  CMat() = default;
  explicit CMat(std::size_t dim);
  /// Row-major entries; throws InvalidArgument on size mismatch or
  /// non-finite entries.
  CMat(std::size_t dim, std::initializer_list<Complex> entries);
  CMat(std::size_t dim, CVec entries);

  static CMat identity(std::size_t dim);
  static CMat diagonal(std::span<const Complex> diag);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  Complex trace() const;
  CMat adjoint() const;
  CMat transpose() const;
  CMat conj() const;
  /// Frobenius norm.
  double norm() const;

  CMat& operator+=(const CMat& other);
  CMat& operator-=(const CMat& other);
  CMat& operator*=(Complex scale);

  friend bool operator==(const CMat&, const CMat&) = default;

 private:
  std::size_t dim_ = 0;
  CVec data_;
};

CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(Complex scale, CMat a);
CMat operator*(const CMat& a, const CMat& b);
CVec operator*(const CMat& a, std::span<const Complex> v);

/// Standard matrix product; throws DimensionMismatch when a.dim != b.dim.
CMat matmul(const CMat& a, const CMat& b);

/// Kronecker product a (x) b.
CMat kron(const CMat& a, const CMat& b);

/// Determinant. Cofactor expansion up to 4x4, partial-pivot LU above.
Complex det(const CMat& a);

/// Euclidean norm of a vector.
double norm(std::span<const Complex> v);

/// Singular values in decreasing order.
std::vector<double> singular_values(const CMat& a);

/// Unit vector v with |a v| <= tol |a|, where tol is relative to the
/// largest singular value. The zero matrix returns the first basis vector.
/// The global phase is fixed so the largest component is real positive.
/// Throws NoNullSpace when the smallest singular value exceeds the bound.
CVec null_vector(const CMat& a, double tol = 1e-10);

struct NullSpaceInfo {
  CVec vector;                 // right singular vector of the smallest value
  std::vector<double> sigma;   // all singular values, decreasing
};

/// One SVD giving the candidate null vector (same phase convention as
/// null_vector) together with the full singular spectrum, without any
/// tolerance check.
NullSpaceInfo null_space_info(const CMat& a);

/// All eigenvalues of a general matrix with dim <= 4, unordered. Roots of
/// the characteristic polynomial (Faddeev-LeVerrier coefficients, Aberth
/// iteration) polished by a Newton step on det(lambda I - a).
std::vector<Complex> eigvals(const CMat& a);

/// Coefficients c[0..n] of det(lambda I - a) = sum_k c[k] lambda^k, c[n] = 1.
std::vector<Complex> characteristic_polynomial(const CMat& a);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMat vectors;                // column k pairs with values[k]
};

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Only the upper triangle is trusted; the input is Hermitised.
HermitianEigen eigh(const CMat& a);

}  // namespace qcc
