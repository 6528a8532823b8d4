#pragma once

#include <stdexcept>
#include <string>

namespace pwrc {

enum class ErrorKind {
  kInvalidInput,
  kInvalidRank,
  kDegenerateKnots,
  kOutOfDomain,
  kFormat,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what) : Error(ErrorKind::kInvalidInput, what) {}
};

class InvalidRank : public Error {
 public:
  explicit InvalidRank(const std::string& what) : Error(ErrorKind::kInvalidRank, what) {}
};

class DegenerateKnots : public Error {
 public:
  explicit DegenerateKnots(const std::string& what) : Error(ErrorKind::kDegenerateKnots, what) {}
};

class OutOfDomain : public Error {
 public:
  explicit OutOfDomain(const std::string& what) : Error(ErrorKind::kOutOfDomain, what) {}
};

// Malformed or truncated model, block, CSV or dataset files.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(ErrorKind::kFormat, what) {}
};

}  // namespace pwrc
