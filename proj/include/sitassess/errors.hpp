#pragma once

#include <stdexcept>
#include <string>

namespace sitassess {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector lengths disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the domain of an operation (negative indicator,
/// similarity outside [0,1], empty relevance list, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An event or tick arrived earlier than the organization clock.
class OutOfOrderError : public Error {
 public:
  using Error::Error;
};

/// Invalid or incomplete configuration (domain table, theta, empty base).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Scenario capture referenced unknown agents or empty groups.
class CaptureError : public Error {
 public:
  using Error::Error;
};

/// A file parsed but violates its schema; the message carries the JSON path.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sitassess
