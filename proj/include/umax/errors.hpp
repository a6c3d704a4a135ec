#pragma once

#include <stdexcept>
#include <string>

namespace umax {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Level set gradient too small to define a normal (|grad| < 1e-12).
struct DegenerateGradient : Error {
  using Error::Error;
};

// segment_root called on a segment without a zero crossing.
struct NoSignChange : Error {
  using Error::Error;
};

// Geometry name not in the built-in catalog.
struct UnknownGeometry : Error {
  using Error::Error;
};

// A face of an active cell crosses the boundary more than once, so the
// single-crossing mesh resolution assumption fails at this level.
struct AssumptionViolated : Error {
  AssumptionViolated(int face_id, const std::string& what)
      : Error(what), face(face_id) {}
  int face;
};

// No fully interior cell exists; the extension map cannot be built.
struct NoInteriorElement : Error {
  using Error::Error;
};

// Closest-point Newton iteration for the boundary lift did not converge.
struct ProjectionFailed : Error {
  using Error::Error;
};

// Incompatible dof layouts passed to a block composition.
struct DimensionMismatch : Error {
  using Error::Error;
};

// Linear solve failed or the factored system has an excessive residual.
struct SingularSystem : Error {
  using Error::Error;
};

// A norm Gram matrix is numerically singular (Cholesky breakdown).
struct NormGramSingular : Error {
  using Error::Error;
};

// Malformed config file line or unknown key.
struct ParseError : Error {
  using Error::Error;
};

// Config values out of range or inconsistent (e.g. r < m+1).
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace umax
