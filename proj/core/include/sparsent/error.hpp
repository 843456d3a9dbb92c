#pragma once

#include <stdexcept>
#include <string>

namespace sparsent {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input is valid in shape but carries no usable signal (e.g. all zeros).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// A value went non-finite during optimization.
class NumericError : public Error {
 public:
  using Error::Error;
};

// File or stream could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// A binary or text file does not follow its format.
class FormatError : public Error {
 public:
  enum class Kind {
    kBadMagic,
    kBadVersion,
    kTruncated,
    kDimensionOverflow,
    kTrailingBytes,
    kInvalidData,
  };

  FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace sparsent
