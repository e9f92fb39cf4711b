#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace modext {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the set of admissible parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A function was evaluated outside its domain (e.g. a modulus at t < 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A user-supplied object (knot list, config) failed structural validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The modulus vanishes at a nonzero distance, so ratios are undefined.
class DegenerateModulusError : public Error {
 public:
  using Error::Error;
};

/// Anchor data violate |v_i - v_j| <= M theta(|x_i - x_j|).
class ConsistencyError : public Error {
 public:
  ConsistencyError(const std::string& what, std::pair<std::size_t, std::size_t> witness)
      : Error(what), witness_(witness) {}

  [[nodiscard]] std::pair<std::size_t, std::size_t> witness() const noexcept { return witness_; }

 private:
  std::pair<std::size_t, std::size_t> witness_;
};

/// The requested operation is not supported by this basis / configuration.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// The envelope series diverges; the generator cannot be certified.
class CertificationError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace modext
