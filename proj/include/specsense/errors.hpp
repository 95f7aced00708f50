#pragma once

#include <stdexcept>
#include <string>

namespace specsense {

// Base class for all library failures. CLI maps these to exit code 3.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public Error {
public:
  using Error::Error;
};

class NotHermitian : public Error {
public:
  using Error::Error;
};

class ZeroChannel : public Error {
public:
  using Error::Error;
};

class DegenerateInput : public Error {
public:
  using Error::Error;
};

class InvalidDims : public Error {
public:
  using Error::Error;
};

class TooLarge : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class DegenerateMoments : public Error {
public:
  using Error::Error;
};

class NoConvergence : public Error {
public:
  using Error::Error;
};

class InsufficientTrials : public Error {
public:
  using Error::Error;
};

}  // namespace specsense
