#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlab/measure.hpp"
#include "dlab/operator.hpp"

namespace dlab {

enum class Kind { matrix, rank_one, multiplication, composition, average, neg_average, rademacher_mult, sum };

std::string_view to_string(Kind kind) noexcept;
std::optional<Kind> parse_kind(std::string_view name) noexcept;

/// Declarative description of an operator, independent of the space it is built on.
///
/// Vector parameters (g, phi) of length n are read per atom on an n-atom space.
/// Any other length m is a step function on [0, 1] with m equal pieces, sampled
/// at the atom midpoints of the normalized cumulative mass. A permutation of
/// length m acts on m equal blocks of atoms (block size n / m).
struct OperatorSpec {
  Kind kind = Kind::average;
  std::vector<std::vector<double>> columns;  // matrix: columns[j][i] = K_ij
  std::vector<double> g;                     // rank_one: Tf = (sum_j phi_j f_j w_j) g
  std::vector<double> phi;                   // rank_one (default 1), multiplication: Tf = phi f
  std::vector<std::size_t> perm;             // composition: column j = e_{perm(j)}
  std::string rule;                          // composition without perm: "pair_swap" (i <-> i^1)
  std::vector<OperatorSpec> terms;           // sum: sum_t coefficients[t] * terms[t]
  std::vector<double> coefficients;

  /// Structural checks that do not depend on the space. Throws Errc::spec.
  void validate() const;
};

/// Canonical representative of a kind: multiplication by -1/2, pair-swap composition,
/// rank one with g = 2 chi_[1/2,1] and phi = 1. Throws Errc::spec for matrix and sum.
OperatorSpec default_spec(Kind kind);

/// Throws Errc::spec if the spec does not fit the space.
DiscreteOperator build(const OperatorSpec& spec, const MeasureSpace& space);

inline constexpr int kMaxLiftLevel = 12;

struct Lifted {
  MeasureSpace space;
  DiscreteOperator op;
};

/// The spec built on the uniform space with 2^level atoms. Throws Errc::parameter
/// for level < 1 and Errc::capacity_exceeded above kMaxLiftLevel.
Lifted lift(const OperatorSpec& spec, int level);

/// Values of a vector parameter on the atoms of `space` (see OperatorSpec).
std::vector<double> sample_on(std::span<const double> values, const MeasureSpace& space);

}  // namespace dlab
