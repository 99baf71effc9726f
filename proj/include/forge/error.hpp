#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace forge {

enum class Errc {
  zero_divisor,
  context_mismatch,
  invalid_argument,
  field_too_large,
  not_quadratic_tower,
  degenerate_pair,
  degenerate_cross_ratio,
  singular_map,
  insufficient_points,
  insufficient_incidences,
  empty_denominator_set,
  degenerate,
  empty_domain,
  empty_graph,
  cap_too_large,
  not_injective,
  degenerate_instance,
};

std::string_view to_string(Errc code);

/// Every recoverable failure in the library is reported through this type.
/// what() carries the short diagnostic named by the operation contract,
/// optionally followed by ": detail".
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail = {});

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace forge
