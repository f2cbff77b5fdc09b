#include "dlab/daugavet.hpp"

#include <algorithm>
#include <cmath>

#include "dlab/error.hpp"
#include "dlab/search.hpp"

namespace dlab {

double daugavet_defect(const DiscreteOperator& op, const AtomSet& domain, int sign) {
  require_sign(sign);
  return 1.0 + op_norm(op, domain) - id_plus_norm(op, domain, sign);
}

double shift_of_atoms(const DiscreteOperator& op, std::span<const std::size_t> atoms) {
  if (atoms.empty()) throw Error(Errc::empty_set, "shift of the empty set");
  const auto w = op.space().weights();
  double mu = 0.0;
  for (std::size_t i : atoms) mu += w[i];
  double acc = 0.0;
  for (std::size_t i : atoms) {
    double s = 0.0;
    for (std::size_t j : atoms) s += op.entry(i, j) * w[j];
    acc += std::abs(s) * w[i];
  }
  return acc / mu;
}

double shift(const DiscreteOperator& op, const AtomSet& set) {
  require_nonempty(op.space(), set, "shift set");
  const auto atoms = set.indices();
  return shift_of_atoms(op, atoms);
}

MembershipReport sigma(const DiscreteOperator& op, const AtomSet& domain, const SearchConfig& config) {
  return min_shift(op, domain, config);
}

DorSplit dor_split(const L1Fun& u, const L1Fun& v) {
  require_same_space(u.space(), v.space());
  const std::size_t n = u.size();
  const auto w = u.space().weights();
  DorSplit out{AtomSet(n), AtomSet(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double au = std::abs(u[i]);
    const double av = std::abs(v[i]);
    out.overlap += std::min(au, av) * w[i];
    if (av >= au) {
      out.omega1.insert(i);
      out.captured_v += av * w[i];
    } else {
      out.omega2.insert(i);
      out.captured_u += au * w[i];
    }
  }
  return out;
}

AtomSet norm_attaining_core(const DiscreteOperator& op, const AtomSet& domain, double eps) {
  if (!(eps > 0.0)) throw Error(Errc::parameter, "eps must be positive");
  const DualCertificate cert = adjoint_certificate(op, domain);
  const double threshold = cert.d[cert.argmax] - eps;
  AtomSet core(op.size());
  domain.for_each([&](std::size_t j) {
    if (cert.theta * cert.d[j] > threshold) core.insert(j);
  });
  return core;
}

RefineResult refine_set(const DiscreteOperator& op, const AtomSet& domain, const AtomSet& set, double eps) {
  if (!(eps > 0.0)) throw Error(Errc::parameter, "eps must be positive");
  require_nonempty(op.space(), domain, "domain A");
  require_nonempty(op.space(), set, "set B");
  if (!set.is_subset_of(domain)) throw Error(Errc::parameter, "B must be a subset of A");

  const MeasureSpace& space = op.space();
  const double scale = op_norm(op, domain);
  const L1Fun u = normalized_indicator(space, set);
  const L1Fun v = scale > 0.0 ? apply(op, u).scaled(1.0 / scale) : L1Fun::zero(space);

  RefineResult r;
  r.set = set;
  r.eps = eps;
  r.scale = scale;
  r.norm_plus = norm1(u + v);
  r.norm_minus = norm1(u - v);
  const double threshold = 2.0 - eps;
  if (scale <= 0.0 || !(r.norm_plus > threshold) || !(r.norm_minus > threshold))
    throw NotNearDaugavet(r.norm_plus, r.norm_minus, threshold);

  r.split = dor_split(u, v);
  r.refined = set - r.split.omega1;
  if (r.refined.empty()) throw Error(Errc::degenerate, "B \\ Omega1 is empty; eps is too large");

  const double mu_b = mass(space, set);
  r.mass_fraction = mass(space, set & r.split.omega1) / mu_b;
  r.distance = norm1(normalized_indicator(space, r.refined) - u);
  r.shift = shift(op, r.refined) / scale;

  if (r.mass_fraction > eps + kTol)
    throw Error(Errc::invariant, "refine_set: mu(B cap Omega1) exceeds eps * mu(B)");
  if (r.distance > 2.0 * eps + kTol)
    throw Error(Errc::invariant, "refine_set: normalized-indicator distance exceeds 2 eps");
  if (r.shift > 3.0 * eps + kTol) throw Error(Errc::invariant, "refine_set: shift exceeds 3 eps");
  return r;
}

DefectCertificate defect_bound(const DiscreteOperator& op, const AtomSet& domain, const AtomSet& b0) {
  require_universe(op.space(), domain);
  require_universe(op.space(), b0);
  if (b0.empty()) throw Error(Errc::parameter, "B0 must be nonempty");
  if (!b0.is_subset_of(domain)) throw Error(Errc::parameter, "B0 must be a subset of A");

  DefectCertificate c;
  c.b0 = b0;
  const double norm_a = op_norm(op, domain);
  c.gap = norm_a - norm1(apply(op, normalized_indicator(op.space(), b0)));
  c.shift_value = shift(op, b0);
  c.bound = c.gap + 2.0 * c.shift_value;
  c.defect = 1.0 + norm_a - id_plus_norm(op, domain, 1);
  return c;
}

}  // namespace dlab
