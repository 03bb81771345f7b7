#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lmopt {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated precondition or malformed argument.
struct UsageError : Error {
  using Error::Error;
};

// Bad input text (invalid UTF-8 etc.). Carries the offending byte offset.
struct IngestError : Error {
  IngestError(const std::string& what, std::size_t offset)
      : Error(what + " at byte offset " + std::to_string(offset)),
        byte_offset(offset) {}
  std::size_t byte_offset;
};

struct IoError : Error {
  using Error::Error;
};

struct TrainError : Error {
  using Error::Error;
};

// Numerical failure inside the simplex solver.
struct SolverError : Error {
  using Error::Error;
};

// Every weight vector hits a zero mixture probability (undefined perplexity).
struct WeakModelError : Error {
  using Error::Error;
};

struct ExperimentError : Error {
  using Error::Error;
};

}  // namespace lmopt
