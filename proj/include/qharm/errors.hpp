#pragma once

#include <stdexcept>
#include <string>

namespace qharm {

// Base for every domain error raised by the library. Callers that only care
// about "the computation was refused" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroConstantTerm : public Error {
 public:
  using Error::Error;
};

class NonUnitConstantTerm : public Error {
 public:
  using Error::Error;
};

class DegenerateAnalyticPart : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

class AffineDegenerate : public Error {
 public:
  using Error::Error;
};

class NonRealCoefficients : public Error {
 public:
  using Error::Error;
};

class BranchAmbiguity : public Error {
 public:
  using Error::Error;
};

class GenerationFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qharm
