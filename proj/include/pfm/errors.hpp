#pragma once

#include <stdexcept>

namespace pfm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument values: probabilities outside [0,1], mismatched dimensions,
// malformed input files.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Graph construction failed validation (cycle, self-loop, duplicate edge,
// label out of range).
class InvalidGraph : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Request would exceed one of the documented size caps (closure vertices,
// dense table width, enumeration width, flow network width).
class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

// Conditioning on an event of probability zero.
class UndefinedConditional : public Error {
 public:
  using Error::Error;
};

// extract_coupling called on a pair that is not stochastically ordered.
class NotDominated : public Error {
 public:
  using Error::Error;
};

// A theorem-level hypothesis did not hold for the supplied inputs.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace pfm
