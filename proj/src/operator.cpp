#include "dlab/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dlab/error.hpp"

namespace dlab {

namespace {

void check_finite(std::span<const double> data) {
  for (double x : data)
    if (!std::isfinite(x)) throw Error(Errc::model, "operator entries must be finite");
}

}  // namespace

void require_sign(int sign) {
  if (sign != 1 && sign != -1) throw Error(Errc::parameter, "sign must be +1 or -1");
}

void require_nonempty(const MeasureSpace& space, const AtomSet& set, const char* what) {
  require_universe(space, set);
  if (set.empty()) throw Error(Errc::empty_set, std::string(what) + " must be nonempty");
}

DiscreteOperator::DiscreteOperator(MeasureSpace space, const std::vector<std::vector<double>>& columns)
    : space_(std::move(space)) {
  const std::size_t n = space_.size();
  if (columns.size() != n) throw Error(Errc::model, "operator needs one column per atom");
  k_.reserve(n * n);
  for (const auto& col : columns) {
    if (col.size() != n) throw Error(Errc::model, "operator column length does not match the atom count");
    k_.insert(k_.end(), col.begin(), col.end());
  }
  check_finite(k_);
}

DiscreteOperator::DiscreteOperator(MeasureSpace space, std::vector<double> column_major)
    : space_(std::move(space)), k_(std::move(column_major)) {
  if (k_.size() != space_.size() * space_.size())
    throw Error(Errc::model, "operator storage must hold n*n entries");
  check_finite(k_);
}

DiscreteOperator DiscreteOperator::identity(const MeasureSpace& space) {
  const std::size_t n = space.size();
  std::vector<double> k(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) k[j * n + j] = 1.0 / space.weights()[j];
  return DiscreteOperator(space, std::move(k));
}

DiscreteOperator DiscreteOperator::zero(const MeasureSpace& space) {
  return DiscreteOperator(space, std::vector<double>(space.size() * space.size(), 0.0));
}

double DiscreteOperator::column_norm(std::size_t j) const {
  const auto w = space_.weights();
  const auto col = column(j);
  double s = 0.0;
  for (std::size_t i = 0; i < col.size(); ++i) s += std::abs(col[i]) * w[i];
  return s;
}

L1Fun apply(const DiscreteOperator& op, const L1Fun& f) {
  require_same_space(op.space(), f.space());
  const std::size_t n = op.size();
  const auto w = op.space().weights();
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double coeff = f[j] * w[j];
    if (coeff == 0.0) continue;
    const auto col = op.column(j);
    for (std::size_t i = 0; i < n; ++i) out[i] += col[i] * coeff;
  }
  return L1Fun(op.space(), std::move(out));
}

double op_norm(const DiscreteOperator& op, const AtomSet& domain) {
  require_nonempty(op.space(), domain, "operator domain");
  double best = 0.0;
  domain.for_each([&](std::size_t j) {
    const double c = op.column_norm(j);
    if (c > best) best = c;
  });
  return best;
}

double id_plus_norm(const DiscreteOperator& op, const AtomSet& domain, int sign) {
  require_sign(sign);
  require_nonempty(op.space(), domain, "operator domain");
  const auto w = op.space().weights();
  const double s = static_cast<double>(sign);
  double best = 0.0;
  domain.for_each([&](std::size_t j) {
    const auto col = op.column(j);
    double c = 0.0;
    for (std::size_t i = 0; i < col.size(); ++i) {
      const double entry = s * col[i] + (i == j ? 1.0 / w[j] : 0.0);
      c += std::abs(entry) * w[i];
    }
    if (c > best) best = c;
  });
  return best;
}

DualCertificate adjoint_certificate(const DiscreteOperator& op, const AtomSet& domain) {
  require_nonempty(op.space(), domain, "operator domain");
  const std::size_t n = op.size();
  const auto w = op.space().weights();

  DualCertificate cert;
  double best = -1.0;
  domain.for_each([&](std::size_t j) {
    const double c = op.column_norm(j);
    if (c > best) {
      best = c;
      cert.argmax = j;
    }
  });

  // gamma follows the signs of column j*. Where that column vanishes, gamma takes
  // the sign of the sum of the other columns attaining the norm (0 if none), so
  // tied columns are certified too.
  const double tie = best - kTightTol * std::max(1.0, best);
  std::vector<double> tied_sum(n, 0.0);
  domain.for_each([&](std::size_t j) {
    if (op.column_norm(j) < tie) return;
    const auto col = op.column(j);
    for (std::size_t i = 0; i < n; ++i) tied_sum[i] += col[i];
  });
  auto sgn = [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); };
  const auto star = op.column(cert.argmax);
  cert.gamma.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) cert.gamma[i] = star[i] != 0.0 ? sgn(star[i]) : sgn(tied_sum[i]);

  cert.theta = 1;
  cert.d.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto col = op.column(j);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += cert.gamma[i] * col[i] * w[i];
    cert.d[j] = s;
  }
  // d_{j*} must equal op_norm bit for bit.
  cert.d[cert.argmax] = op.column_norm(cert.argmax);
  return cert;
}

DiscreteOperator lincomb(double alpha, const DiscreteOperator& u, double beta, const DiscreteOperator& v) {
  require_same_space(u.space(), v.space());
  const auto a = u.data();
  const auto b = v.data();
  std::vector<double> k(a.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = alpha * a[i] + beta * b[i];
  return DiscreteOperator(u.space(), std::move(k));
}

}  // namespace dlab
