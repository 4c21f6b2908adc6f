#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdregion {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed transfer-function text. `offset()` is the byte offset into the
/// source at which parsing failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Evaluation at (or numerically on top of) a pole.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, std::size_t row, std::size_t col, double den_abs)
      : Error(what), row_(row), col_(col), den_abs_(den_abs) {}
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }
  double denominator_magnitude() const { return den_abs_; }

 private:
  std::size_t row_;
  std::size_t col_;
  double den_abs_;
};

/// I - G(jw) sigma (or 1 - sigma G) is singular, so the feedback system is not
/// well defined at that frequency.
class SingularFeedbackError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the arguments was violated (shape, sign, range...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not reach its stated accuracy.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdregion
