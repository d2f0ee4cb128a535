#pragma once

#include <stdexcept>
#include <string>

namespace toda {

// Base of every error raised by the library. Callers that only care about
// "the computation could not be carried out" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// A pivot of some Gauss-type factorization vanished: the input is not generic.
class DegeneratePoint : public Error {
 public:
  using Error::Error;
};

class ModeError : public Error {
 public:
  using Error::Error;
};

class IndexMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroBase : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

// A matrix that is not (numerically) in the Lax chart.
class NotInGamma : public Error {
 public:
  using Error::Error;
};

class OutOfChart : public Error {
 public:
  using Error::Error;
};

class StepBlowup : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace toda
