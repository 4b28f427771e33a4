#pragma once

#include <stdexcept>
#include <string>

namespace qcc {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed something that violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class PositionInsideScatterer : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// The mathematics failed for valid input: singularities, degeneracies,
/// non-convergence. The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A junction sits exactly on resonance (|t| below threshold): its transfer
/// matrix is a pole, the junction is a perfect mirror.
class SingularAtResonance : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoNullSpace : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateSteadyState : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsideGap : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BandEdge : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EmptyContour : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A cell that should be lossless produced a complex trace.
class NonRealTrace : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qcc
