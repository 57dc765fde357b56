#pragma once

#include <stdexcept>
#include <string>

namespace rasec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A direction or position vector has (numerically) zero length.
class DegenerateGeometry : public Error {
public:
  using Error::Error;
};

/// The boresight line never becomes orthogonal to the eavesdropper for alpha >= 1.
class AlphaMaxUndefined : public Error {
public:
  using Error::Error;
};

/// The channel-power law collapsed to a point mass at zero.
class DegenerateDensity : public Error {
public:
  using Error::Error;
};

/// Quantity undefined because user and eavesdropper are collinear with the antenna.
class CollinearGeometry : public Error {
public:
  using Error::Error;
};

/// An adaptive numerical routine ran out of budget before reaching its tolerance.
class NonConvergent : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

private:
  int line_;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

}  // namespace rasec
