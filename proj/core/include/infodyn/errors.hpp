#pragma once

#include <stdexcept>
#include <string>

namespace infodyn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (vector lengths, matrix sizes, tensor factors).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition: a non-PSD "state", a
/// non-unitary "unitary", a non-stochastic row, an out-of-range index.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A linear-only operation was handed a normalized (nonlinear) channel.
class NonlinearChannel : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Normalized conditioning was requested on a state whose conditioning
/// weight is at or below the probability floor.
class OutsideDomain : public Error {
 public:
  using Error::Error;
};

/// A measurement outcome with (numerically) zero probability was selected.
class ZeroProbabilityOutcome : public OutsideDomain {
 public:
  using OutsideDomain::OutsideDomain;
};

/// An orbit left the declared domain box of its map.
class OrbitEscape : public Error {
 public:
  using Error::Error;
};

}  // namespace infodyn
