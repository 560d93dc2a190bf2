#pragma once

#include <stdexcept>
#include <string>

namespace gafcell {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Zero-size or otherwise degenerate geometry.
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

// Argument outside an operation's documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A (protocol, shape, regime) combination, or a lattice, that is not supported.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace gafcell
