#include "dlab/error.hpp"

#include <cstdio>

namespace dlab {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::model: return "ModelError";
    case Errc::empty_set: return "EmptySet";
    case Errc::parameter: return "ParameterError";
    case Errc::space_mismatch: return "SpaceMismatch";
    case Errc::not_near_daugavet: return "NotNearDaugavet";
    case Errc::degenerate: return "Degenerate";
    case Errc::capacity_exceeded: return "CapacityExceeded";
    case Errc::spec: return "SpecError";
    case Errc::invariant: return "InvariantViolation";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

namespace {
std::string describe(double plus, double minus, double threshold) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "||u+v|| = %.12g, ||u-v|| = %.12g, need both > %.12g", plus, minus,
                threshold);
  return buf;
}
}  // namespace

NotNearDaugavet::NotNearDaugavet(double norm_plus, double norm_minus, double threshold)
    : Error(Errc::not_near_daugavet, describe(norm_plus, norm_minus, threshold)),
      norm_plus_(norm_plus),
      norm_minus_(norm_minus),
      threshold_(threshold) {}

}  // namespace dlab
