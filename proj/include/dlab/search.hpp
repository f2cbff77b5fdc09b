#pragma once

#include <string>
#include <vector>

#include "dlab/membership.hpp"
#include "dlab/operator.hpp"

namespace dlab {

/// Exhaustive minimum of shift over the 2^|A| - 1 nonempty subsets of A.
///
/// Subsets within 1e-12 (relative to max(1, min)) of the minimum count as ties;
/// the witness is the smallest tied set in AtomSet order. The scan is split by the
/// leading bits of the subset mask, so the result does not depend on
/// config.workers. Throws Errc::capacity_exceeded if |A| > config.max_exact_bits.
MembershipReport exact_min_shift(const DiscreteOperator& op, const AtomSet& domain, const SearchConfig& config = {});

/// Best-improvement single-atom flips from seeded random starts (seed + restart index).
MembershipReport local_min_shift(const DiscreteOperator& op, const AtomSet& domain, const SearchConfig& config = {});

struct DescentStep {
  double eps = 0.0;
  AtomSet domain;     // current A
  AtomSet core;       // A' after the two norm-attaining cores
  AtomSet tried;      // B handed to refine_set (empty if every candidate failed)
  AtomSet refined;    // B' (empty if every candidate failed)
  double shift = 0.0; // shift(T, B') at the original scale
};

struct DescentResult {
  MembershipReport report;
  std::vector<DescentStep> steps;
  std::string stop_reason;  // "fixed_point", "not_near_daugavet", "max_iters", "zero_operator"
};

/// Constructive descent: rescale T on the current A, take the
/// norm-attaining core of Id + T and then of Id - T inside it, refine a set B from
/// that core to B' = B \ Omega1, shrink eps by eps_schedule and continue on B'.
/// B is the core itself or, if refine_set rejects it, the first prefix (by atom
/// index) of length ceil(|core| / 2^k) that it accepts.
DescentResult paper_guided_trace(const DiscreteOperator& op, const AtomSet& domain, const SearchConfig& config = {});

MembershipReport paper_guided_descent(const DiscreteOperator& op, const AtomSet& domain,
                                      const SearchConfig& config = {});

/// Dispatch on config.strategy. `automatic` runs exact when |A| <= max_exact_bits,
/// otherwise paper_guided and local, keeping the better report.
MembershipReport min_shift(const DiscreteOperator& op, const AtomSet& domain, const SearchConfig& config = {});

}  // namespace dlab
