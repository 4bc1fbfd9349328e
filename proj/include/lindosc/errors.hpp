#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lindosc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class InvalidParameters : public Error {
 public:
  using Error::Error;
};

// A matrix that fails the density-operator predicates (Hermitian, unit
// trace, positive).
class InvalidState : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// The truncated Fock basis is too small for the requested state.
class TruncationOverflow : public Error {
 public:
  TruncationOverflow(const std::string& what, std::size_t required_dim)
      : Error(what), required_dim_(required_dim) {}

  std::size_t required_dim() const noexcept { return required_dim_; }

 private:
  std::size_t required_dim_;
};

class IntegrationDiverged : public Error {
 public:
  using Error::Error;
};

// The disentangling relations degenerate at v = 0.
class SingularTransform : public Error {
 public:
  using Error::Error;
};

}  // namespace lindosc
