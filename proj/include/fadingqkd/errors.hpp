#pragma once

#include <stdexcept>
#include <string>

namespace fqkd {

/// Thrown when an argument violates an operation's precondition.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when a numerical routine cannot deliver a trustworthy value
/// (quadrature budget exhausted, non-finite integrand, unphysical spectrum).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fqkd
