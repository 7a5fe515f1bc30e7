#pragma once

#include <stdexcept>
#include <string>

namespace btn {

// Base for every failure raised while reading or writing BTN data.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed container structure: magic, version, flags, letter width,
// alphabet block.
class FormatError : public Error {
public:
  using Error::Error;
};

// Payload does not decode consistently with the alphabet and header.
class CorruptionError : public Error {
public:
  using Error::Error;
};

// Bitstream ended before the expected number of codewords was read.
class TruncationError : public CorruptionError {
public:
  using CorruptionError::CorruptionError;
};

// Reading or writing a file failed.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace btn
