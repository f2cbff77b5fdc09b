#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dlab/measure.hpp"

namespace dlab {

/// Bounded operator on L1 of a finite-atom space, stored by columns.
///
/// Column j holds the values of T(e_j) where e_j = chi_{a_j} / w_j is the
/// normalized indicator of atom j. With this convention
///   (Tf)_i = sum_j K_ij f_j w_j
/// and every restricted norm is a weighted column-sum maximum.
class DiscreteOperator {
public:
  /// `columns[j][i]` = K_ij.
  DiscreteOperator(MeasureSpace space, const std::vector<std::vector<double>>& columns);
  /// Column-major storage: entry (i, j) at data[j * n + i].
  DiscreteOperator(MeasureSpace space, std::vector<double> column_major);

  static DiscreteOperator identity(const MeasureSpace& space);
  static DiscreteOperator zero(const MeasureSpace& space);

  const MeasureSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return space_.size(); }

  double entry(std::size_t i, std::size_t j) const noexcept { return k_[j * size() + i]; }
  std::span<const double> column(std::size_t j) const noexcept {
    return std::span<const double>(k_).subspan(j * size(), size());
  }
  std::span<const double> data() const noexcept { return k_; }

  /// sum_i |K_ij| w_i, the norm of T(e_j).
  double column_norm(std::size_t j) const;

private:
  MeasureSpace space_;
  std::vector<double> k_;
};

/// Norm-attaining functional g* (values gamma_i in [-1, 1]) for T restricted to A,
/// together with d = T* g* evaluated on the normalized atom indicators.
struct DualCertificate {
  std::vector<double> gamma;
  int theta = 1;
  std::vector<double> d;
  std::size_t argmax = 0;  // j*, the column that attains the restricted norm
};

L1Fun apply(const DiscreteOperator& op, const L1Fun& f);

/// ||T_A|| = max_{j in A} column_norm(j).
double op_norm(const DiscreteOperator& op, const AtomSet& domain);

/// ||Id_A + sign * T_A||, computed column by column. sign must be +1 or -1.
double id_plus_norm(const DiscreteOperator& op, const AtomSet& domain, int sign);

/// j* = lowest index attaining op_norm on A, gamma_i = sgn(K_{i,j*}) (zero entries take the
/// sign of the other norm-attaining columns), theta = +1. d_{j*} equals op_norm exactly.
DualCertificate adjoint_certificate(const DiscreteOperator& op, const AtomSet& domain);

/// alpha * U + beta * V.
DiscreteOperator lincomb(double alpha, const DiscreteOperator& u, double beta, const DiscreteOperator& v);

void require_sign(int sign);
void require_nonempty(const MeasureSpace& space, const AtomSet& set, const char* what);

}  // namespace dlab
