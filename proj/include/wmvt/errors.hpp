#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wmvt {

/// Malformed expression text. `offset` is the byte offset of the failure.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// A function was evaluated outside the set where it is smooth
/// (log of a non-positive number, division by zero, ...).
class DomainError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inputs of inconsistent shape (wrong row count, anchor width, ...).
class DimensionError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A hypothesis of the mean value theorem does not hold for the input.
class PreconditionError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerically derived quantity is too close to zero to divide by.
class ConditioningError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wmvt
