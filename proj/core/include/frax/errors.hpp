#pragma once

#include <stdexcept>
#include <string>

namespace frax {

// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter lies outside the admissible range of the operation.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A weighted moment of G_s or G_s' would diverge for the requested exponent.
class DivergentMomentError : public Error {
 public:
  using Error::Error;
};

// Negative-order symbol applied to data with a nonzero zero-frequency mode.
class SingularSymbolError : public Error {
 public:
  using Error::Error;
};

// Input was expected to have unit L^2 norm.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Capacity exponent n - p*beta is not positive.
class DegenerateExponentError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or stream.
class ParseError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void throw_parameter(const std::string& what);

}  // namespace frax
