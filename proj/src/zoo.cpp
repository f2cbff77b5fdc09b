#include "dlab/zoo.hpp"

#include <algorithm>
#include <cmath>

#include "dlab/error.hpp"

namespace dlab {

std::string_view to_string(Kind kind) noexcept {
  switch (kind) {
    case Kind::matrix: return "matrix";
    case Kind::rank_one: return "rank_one";
    case Kind::multiplication: return "multiplication";
    case Kind::composition: return "composition";
    case Kind::average: return "average";
    case Kind::neg_average: return "neg_average";
    case Kind::rademacher_mult: return "rademacher_mult";
    case Kind::sum: return "sum";
  }
  return "average";
}

std::optional<Kind> parse_kind(std::string_view name) noexcept {
  for (Kind k : {Kind::matrix, Kind::rank_one, Kind::multiplication, Kind::composition, Kind::average,
                 Kind::neg_average, Kind::rademacher_mult, Kind::sum})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

namespace {

void require_finite(const std::vector<double>& v, const char* name) {
  for (double x : v)
    if (!std::isfinite(x)) throw Error(Errc::spec, std::string(name) + " entries must be finite");
}

}  // namespace

void OperatorSpec::validate() const {
  switch (kind) {
    case Kind::matrix:
      if (columns.empty()) throw Error(Errc::spec, "matrix needs columns");
      for (const auto& c : columns) require_finite(c, "matrix");
      break;
    case Kind::rank_one:
      if (g.empty()) throw Error(Errc::spec, "rank_one needs g");
      require_finite(g, "g");
      require_finite(phi, "phi");
      break;
    case Kind::multiplication:
      if (phi.empty()) throw Error(Errc::spec, "multiplication needs phi");
      require_finite(phi, "phi");
      break;
    case Kind::composition:
      if (perm.empty()) {
        if (rule != "pair_swap") throw Error(Errc::spec, "composition needs perm or rule \"pair_swap\"");
      } else {
        std::vector<char> hit(perm.size(), 0);
        for (std::size_t p : perm) {
          if (p >= perm.size() || hit[p]) throw Error(Errc::spec, "perm is not a bijection");
          hit[p] = 1;
        }
      }
      break;
    case Kind::sum:
      if (terms.empty()) throw Error(Errc::spec, "sum needs terms");
      if (!coefficients.empty() && coefficients.size() != terms.size())
        throw Error(Errc::spec, "sum coefficients must match terms");
      require_finite(coefficients, "coefficients");
      for (const auto& t : terms) t.validate();
      break;
    case Kind::average:
    case Kind::neg_average:
    case Kind::rademacher_mult:
      break;
  }
}

OperatorSpec default_spec(Kind kind) {
  OperatorSpec s;
  s.kind = kind;
  switch (kind) {
    case Kind::rank_one:
      s.g = {0.0, 2.0};
      s.phi = {1.0};
      break;
    case Kind::multiplication: s.phi = {-0.5}; break;
    case Kind::composition: s.rule = "pair_swap"; break;
    case Kind::average:
    case Kind::neg_average:
    case Kind::rademacher_mult: break;
    case Kind::matrix:
    case Kind::sum: throw Error(Errc::spec, "kind has no default parameters");
  }
  return s;
}

std::vector<double> sample_on(std::span<const double> values, const MeasureSpace& space) {
  if (values.empty()) throw Error(Errc::spec, "empty parameter vector");
  const std::size_t n = space.size();
  if (values.size() == n) return {values.begin(), values.end()};
  const std::size_t m = values.size();
  std::vector<double> out(n);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = space.weights()[i];
    const double mid = (cumulative + 0.5 * w) / space.total_mass();
    cumulative += w;
    const auto piece = std::min(m - 1, static_cast<std::size_t>(mid * static_cast<double>(m)));
    out[i] = values[piece];
  }
  return out;
}

namespace {

std::vector<std::size_t> permutation_on(const OperatorSpec& spec, std::size_t n) {
  std::vector<std::size_t> pi(n);
  if (spec.perm.empty()) {
    if (n % 2 != 0) throw Error(Errc::spec, "pair_swap needs an even number of atoms");
    for (std::size_t i = 0; i < n; ++i) pi[i] = i ^ 1;
    return pi;
  }
  const std::size_t m = spec.perm.size();
  if (n % m != 0) throw Error(Errc::spec, "perm length must divide the atom count");
  const std::size_t block = n / m;
  for (std::size_t i = 0; i < n; ++i) pi[i] = spec.perm[i / block] * block + i % block;
  return pi;
}

}  // namespace

DiscreteOperator build(const OperatorSpec& spec, const MeasureSpace& space) {
  spec.validate();
  const std::size_t n = space.size();
  const auto w = space.weights();
  std::vector<double> k(n * n, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return k[j * n + i]; };

  switch (spec.kind) {
    case Kind::matrix: {
      if (spec.columns.size() != n) throw Error(Errc::spec, "matrix needs one column per atom");
      for (std::size_t j = 0; j < n; ++j) {
        if (spec.columns[j].size() != n) throw Error(Errc::spec, "matrix column length must equal the atom count");
        for (std::size_t i = 0; i < n; ++i) at(i, j) = spec.columns[j][i];
      }
      break;
    }
    case Kind::rank_one: {
      const auto g = sample_on(spec.g, space);
      const auto phi = spec.phi.empty() ? std::vector<double>(n, 1.0) : sample_on(spec.phi, space);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) at(i, j) = phi[j] * g[i];
      break;
    }
    case Kind::multiplication: {
      const auto phi = sample_on(spec.phi, space);
      for (std::size_t j = 0; j < n; ++j) at(j, j) = phi[j] / w[j];
      break;
    }
    case Kind::composition: {
      const auto pi = permutation_on(spec, n);
      for (std::size_t j = 0; j < n; ++j) at(pi[j], j) = 1.0 / w[pi[j]];
      break;
    }
    case Kind::average:
    case Kind::neg_average: {
      const double v = spec.kind == Kind::average ? 1.0 : -1.0;
      std::fill(k.begin(), k.end(), v);
      break;
    }
    case Kind::rademacher_mult: {
      for (std::size_t j = 0; j < n; ++j) at(j, j) = (j % 2 == 0 ? 1.0 : -1.0) / w[j];
      break;
    }
    case Kind::sum: {
      DiscreteOperator acc = DiscreteOperator::zero(space);
      for (std::size_t t = 0; t < spec.terms.size(); ++t) {
        const double c = spec.coefficients.empty() ? 1.0 : spec.coefficients[t];
        acc = lincomb(1.0, acc, c, build(spec.terms[t], space));
      }
      return acc;
    }
  }
  return DiscreteOperator(space, std::move(k));
}

Lifted lift(const OperatorSpec& spec, int level) {
  if (level < 1) throw Error(Errc::parameter, "lift level must be >= 1");
  if (level > kMaxLiftLevel)
    throw Error(Errc::capacity_exceeded, "lift level " + std::to_string(level) + " exceeds " +
                                             std::to_string(kMaxLiftLevel));
  MeasureSpace space = MeasureSpace::uniform(std::size_t{1} << level);
  DiscreteOperator op = build(spec, space);
  return Lifted{std::move(space), std::move(op)};
}

}  // namespace dlab
