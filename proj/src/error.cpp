#include "forge/error.hpp"

namespace forge {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::zero_divisor: return "zero divisor";
    case Errc::context_mismatch: return "context mismatch";
    case Errc::invalid_argument: return "invalid argument";
    case Errc::field_too_large: return "field too large";
    case Errc::not_quadratic_tower: return "not a quadratic tower";
    case Errc::degenerate_pair: return "degenerate pair";
    case Errc::degenerate_cross_ratio: return "degenerate cross ratio";
    case Errc::singular_map: return "singular map";
    case Errc::insufficient_points: return "insufficient points";
    case Errc::insufficient_incidences: return "insufficient incidences";
    case Errc::empty_denominator_set: return "empty denominator set";
    case Errc::degenerate: return "degenerate";
    case Errc::empty_domain: return "empty domain";
    case Errc::empty_graph: return "empty graph";
    case Errc::cap_too_large: return "cap too large";
    case Errc::not_injective: return "not injective";
    case Errc::degenerate_instance: return "degenerate instance";
  }
  return "unknown error";
}

namespace {

std::string compose(Errc code, const std::string& detail) {
  std::string msg(to_string(code));
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(compose(code, detail)), code_(code) {}

}  // namespace forge
