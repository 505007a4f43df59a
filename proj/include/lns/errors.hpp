#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lns {

enum class ErrorKind {
  encoding,                 // bad subset index, frame mismatch, length mismatch
  parameter,                // argument outside its admissible domain
  invalid_mass,             // negative mass or sum far from 1
  not_valid_image,          // inverse transform left the simplex
  total_conflict,           // kappa saturated at 1
  decomposition_undefined,  // dogmatic input to the canonical decomposition
  numeric_domain,           // log of a non-positive commonality
  invalid_weights,          // weight vector does not recompose to a bba
  complexity_guard,         // focal-tuple enumeration too large
  not_separable,            // LNS input with an inverse simple support component
  undefined_gamma,          // EKNN class with no usable pairwise distance
  parse,                    // malformed file
};

std::string_view to_string(ErrorKind kind);

class FusionError : public std::runtime_error {
 public:
  FusionError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Process exit code for the CLI: 2 validation, 3 saturation, 4 complexity guard.
int exit_code(ErrorKind kind);

}  // namespace lns
