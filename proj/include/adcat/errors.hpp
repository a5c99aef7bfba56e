#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adcat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingMismatch : public Error {
 public:
  explicit RingMismatch(const std::string& what) : Error("ring mismatch: " + what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

class ObjectMismatch : public Error {
 public:
  explicit ObjectMismatch(const std::string& what) : Error("object mismatch: " + what) {}
};

/// The requested operation has no decision procedure over this ring.
class UnsupportedRing : public Error {
 public:
  explicit UnsupportedRing(const std::string& what) : Error("unsupported ring: " + what) {}
};

class InvalidRing : public Error {
 public:
  explicit InvalidRing(const std::string& what) : Error("invalid ring: " + what) {}
};

class NotIdempotent : public Error {
 public:
  NotIdempotent() : Error("morphism is not idempotent") {}
};

class NotPolynomial : public Error {
 public:
  explicit NotPolynomial(long long degree)
      : Error("morphism has support in negative degree " + std::to_string(degree)) {}
};

class InvalidLift : public Error {
 public:
  explicit InvalidLift(const std::string& what) : Error("invalid lift: " + what) {}
};

/// A documented precondition does not hold; `index` locates the first offence.
class PreconditionViolation : public Error {
 public:
  PreconditionViolation(const std::string& what, std::size_t index)
      : Error(what + " (first offending index " + std::to_string(index) + ")"), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Malformed instance documents, flags, or element literals.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error("input error: " + what) {}
};

}  // namespace adcat
