#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "dlab/measure.hpp"

namespace dlab {

enum class Strategy { exact, local, paper_guided, automatic };

std::string_view to_string(Strategy s) noexcept;
/// Accepts "exact", "local", "paper_guided", "auto".
std::optional<Strategy> parse_strategy(std::string_view name) noexcept;

struct SearchConfig {
  Strategy strategy = Strategy::automatic;
  int max_exact_bits = 20;
  int restarts = 8;
  int max_iters = 500;
  std::uint64_t seed = 0;
  double eps_schedule = 0.5;
  // Starting eps of the proof-guided descent.
  double initial_eps = 0.5;
  // Threads used by exhaustive enumeration and by local-search restarts.
  int workers = 1;

  /// Throws Errc::parameter on out-of-range fields.
  void validate() const;
};

/// Result of minimizing the shift functional over nonempty subsets of A.
struct MembershipReport {
  double sigma = 0.0;
  AtomSet witness;
  bool exact = false;
  std::string strategy;
};

}  // namespace dlab
