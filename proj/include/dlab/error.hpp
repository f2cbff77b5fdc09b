#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

enum class Errc {
  model,              // index out of range, non-finite data
  empty_set,          // an operation needing a set of positive measure got the empty set
  parameter,          // bad scalar argument (eps <= 0, k = 0, B0 not inside A, ...)
  space_mismatch,     // arguments live on different measure spaces
  not_near_daugavet,  // refine_set preconditions fail at B
  degenerate,         // refinement produced an empty set
  capacity_exceeded,  // exhaustive search or lift over budget
  spec,               // malformed operator/space description
  invariant,          // a runtime-checked guarantee failed
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

/// Raised by refine_set when the rescaled pair (u, Tu) is not near-extremal at B.
/// Carries the two norms so callers can print a diagnostic.
class NotNearDaugavet : public Error {
public:
  NotNearDaugavet(double norm_plus, double norm_minus, double threshold);

  double norm_plus() const noexcept { return norm_plus_; }
  double norm_minus() const noexcept { return norm_minus_; }
  double threshold() const noexcept { return threshold_; }

private:
  double norm_plus_;
  double norm_minus_;
  double threshold_;
};

}  // namespace dlab
