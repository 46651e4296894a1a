#pragma once

#include <stdexcept>
#include <string>

namespace morse {

// Base of the library failure taxonomy. The CLI maps subclasses to exit
// codes; everything carries a human-readable message and, where meaningful,
// the index of the offending sample (-1 when not tied to a sample).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Hermitian symmetry violated beyond tolerance at entry (row, col).
class NonHermitian : public Error {
 public:
  NonHermitian(const std::string& what, int row, int col)
      : Error(what), row(row), col(col) {}
  int row;
  int col;
};

// Levi form numerically singular; index regions are undefined.
class DegenerateLevi : public Error {
 public:
  using Error::Error;
};

// T(q) extends to infinity, so the t-integral diverges.
class DivergentBoundaryTerm : public Error {
 public:
  explicit DivergentBoundaryTerm(const std::string& what, long sample = -1)
      : Error(what), sample_index(sample) {}
  long sample_index;
};

class QuadratureNonConvergence : public Error {
 public:
  using Error::Error;
};

class ConvexityViolation : public Error {
 public:
  explicit ConvexityViolation(const std::string& what, long sample = -1)
      : Error(what), sample_index(sample) {}
  long sample_index;
};

class NotConformal : public Error {
 public:
  explicit NotConformal(const std::string& what, long sample = -1)
      : Error(what), sample_index(sample) {}
  long sample_index;
};

// Zero curvature eigenvalue where a nondegenerate form is required.
class DegenerateCurvature : public Error {
 public:
  using Error::Error;
};

// Zero integer eigenvalue in a torus spec where nonzero is required.
class DegenerateEigenvalue : public Error {
 public:
  using Error::Error;
};

// J(q) is infinite (index of the Levi eigenvalues equals q).
class UnboundedJSet : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NegativeWeight : public Error {
 public:
  explicit NegativeWeight(const std::string& what, long sample = -1)
      : Error(what), sample_index(sample) {}
  long sample_index;
};

}  // namespace morse
