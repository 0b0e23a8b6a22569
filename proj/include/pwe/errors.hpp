#pragma once

#include <stdexcept>
#include <string>

namespace pwe {

/// Base class for failures raised by the solver library.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularPadeSystem : SolverError {
  using SolverError::SolverError;
};

struct RepeatedPoles : SolverError {
  using SolverError::SolverError;
};

struct PoleHit : SolverError {
  using SolverError::SolverError;
};

struct SizeMismatch : SolverError {
  using SolverError::SolverError;
};

struct SpectralPole : SolverError {
  using SolverError::SolverError;
};

struct TridiagonalBreakdown : SolverError {
  using SolverError::SolverError;
};

struct NoPropagatingModes : SolverError {
  using SolverError::SolverError;
};

struct RangeDependentEnvironment : SolverError {
  using SolverError::SolverError;
};

/// Configuration file could not be parsed (syntax, unknown key, bad number).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Configuration parsed but violates invariants; message lists every violation.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pwe
