#pragma once

#include <stdexcept>
#include <string>

namespace lckw {

/// A structure failed one of its defining invariants. `invariant()` names it
/// ("almost-complex", "compatibility", "jacobi", ...).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string invariant, const std::string& what)
      : std::runtime_error(invariant + ": " + what), invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

/// An operation was called outside its domain (e.g. a Vaisman-only formula
/// on a non-Vaisman structure).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lckw
