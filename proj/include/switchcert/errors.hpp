#pragma once

#include <stdexcept>
#include <string>

namespace switchcert {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotHurwitz : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// A constructed P failed the common-Lyapunov margin check.
class CertificateInvalid : public Error {
 public:
  using Error::Error;
};

class NotTriangular : public Error {
 public:
  using Error::Error;
};

class NotSolvable : public Error {
 public:
  using Error::Error;
};

/// Eigenspace intersection became empty; carries the best residual reached.
class NoCommonEigenvector : public Error {
 public:
  NoCommonEigenvector(const std::string& what, double best_residual)
      : Error(what), best_residual(best_residual) {}
  double best_residual;
};

/// Triangularization failed at some deflation depth.
class DeflationFailure : public Error {
 public:
  DeflationFailure(const std::string& what, int depth, double best_residual)
      : Error(what), depth(depth), best_residual(best_residual) {}
  int depth;
  double best_residual;
};

class NoCollinearityLines : public Error {
 public:
  using Error::Error;
};

class NotPlanar : public Error {
 public:
  using Error::Error;
};

class TrigUnsupported : public Error {
 public:
  using Error::Error;
};

class FlowDivergence : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace switchcert
