#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blocksep {

enum class ErrorKind {
  invalid_partition,
  invalid_model,
  singular_point,
  context_mismatch,
  undeclared_param,
  unsupported_symbolic_potential,
  evaluation_singularity,
  invalid_integral,
  invalid_index,
  inapplicable_relation,
  resolution_failure,
  singular_sample,
  oracle_unconverged,
  inadmissible,
  parse_error,
  usage,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace blocksep
