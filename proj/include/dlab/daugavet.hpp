#pragma once

#include <span>

#include "dlab/measure.hpp"
#include "dlab/membership.hpp"
#include "dlab/operator.hpp"

namespace dlab {

/// D(T, A) = 1 + ||T_A|| - ||Id_A + sign * T_A||. The Daugavet equation holds on A iff D = 0.
double daugavet_defect(const DiscreteOperator& op, const AtomSet& domain, int sign);

/// ||chi_B * T(chi_B / mu(B))||: how much of the image of the normalized
/// indicator stays on B.
double shift(const DiscreteOperator& op, const AtomSet& set);

/// Same value as shift() for the set whose atoms are `sorted_atoms` (ascending).
/// The summation order is fixed, so equal sets always produce bit-identical values.
double shift_of_atoms(const DiscreteOperator& op, std::span<const std::size_t> sorted_atoms);

/// min over nonempty B in A of shift(T, B), delegated to the configured search strategy.
MembershipReport sigma(const DiscreteOperator& op, const AtomSet& domain, const SearchConfig& config);

struct DorSplit {
  AtomSet omega1;            // {i : |v_i| >= |u_i|}
  AtomSet omega2;            // complement of omega1
  double overlap = 0.0;      // m = sum_i min(|u_i|, |v_i|) w_i
  double captured_u = 0.0;   // integral of |u| over omega2
  double captured_v = 0.0;   // integral of |v| over omega1
};

/// Pointwise dominance partition of two functions. Guarantees
///   captured_u >= ||u|| - m  and  captured_v >= ||v|| - m.
DorSplit dor_split(const L1Fun& u, const L1Fun& v);

/// A1 = {j in A : d_j > ||T_A|| - eps} for the adjoint certificate d. Every nonnegative
/// f supported in A1 satisfies ||Tf|| >= (||T_A|| - eps) ||f||.
AtomSet norm_attaining_core(const DiscreteOperator& op, const AtomSet& domain, double eps);

/// Trace of one refinement step B -> B' = B \ Omega1.
///
/// `shift` and the norms refer to the operator rescaled by 1/scale so that its
/// restriction to A has norm 1.
struct RefineResult {
  AtomSet set;      // B
  AtomSet refined;  // B'
  DorSplit split;
  double eps = 0.0;
  double scale = 0.0;
  double norm_plus = 0.0;      // ||u + v||
  double norm_minus = 0.0;     // ||u - v||
  double mass_fraction = 0.0;  // mu(B cap Omega1) / mu(B)
  double distance = 0.0;       // ||chi_B'/mu(B') - chi_B/mu(B)||
  double shift = 0.0;
};

/// Requires B in A, ||T_A|| > 0, ||u + v|| > 2 - eps and ||u - v|| > 2 - eps for
/// u = chi_B / mu(B), v = (T / ||T_A||) u; throws NotNearDaugavet otherwise and
/// Errc::degenerate if B' comes out empty. On success the three bounds
///   mass_fraction <= eps, distance <= 2 eps, shift <= 3 eps
/// have been checked.
RefineResult refine_set(const DiscreteOperator& op, const AtomSet& domain, const AtomSet& set, double eps);

/// Witness-based upper bound on the Daugavet defect (sign +1):
///   D(T, A) <= (||T_A|| - ||T(chi_B0 / mu(B0))||) + 2 shift(T, B0).
struct DefectCertificate {
  AtomSet b0;
  double gap = 0.0;
  double shift_value = 0.0;
  double bound = 0.0;
  double defect = 0.0;

  bool holds(double tol = kTol) const noexcept { return bound >= defect - tol; }
};

DefectCertificate defect_bound(const DiscreteOperator& op, const AtomSet& domain, const AtomSet& b0);

}  // namespace dlab
