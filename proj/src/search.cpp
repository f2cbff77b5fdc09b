#include "dlab/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <thread>

#include "dlab/daugavet.hpp"
#include "dlab/error.hpp"

namespace dlab {

// ------------------------------------------------------------------ config

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::exact: return "exact";
    case Strategy::local: return "local";
    case Strategy::paper_guided: return "paper_guided";
    case Strategy::automatic: return "auto";
  }
  return "auto";
}

std::optional<Strategy> parse_strategy(std::string_view name) noexcept {
  if (name == "exact") return Strategy::exact;
  if (name == "local") return Strategy::local;
  if (name == "paper_guided") return Strategy::paper_guided;
  if (name == "auto") return Strategy::automatic;
  return std::nullopt;
}

void SearchConfig::validate() const {
  if (max_exact_bits < 1 || max_exact_bits > 30)
    throw Error(Errc::parameter, "max_exact_bits must lie in [1, 30]");
  if (restarts < 1) throw Error(Errc::parameter, "restarts must be >= 1");
  if (max_iters < 1) throw Error(Errc::parameter, "max_iters must be >= 1");
  if (!(eps_schedule > 0.0 && eps_schedule < 1.0))
    throw Error(Errc::parameter, "eps_schedule must lie in (0, 1)");
  if (!(initial_eps > 0.0)) throw Error(Errc::parameter, "initial_eps must be positive");
  if (workers < 1) throw Error(Errc::parameter, "workers must be >= 1");
}

namespace {

double tie_tolerance(double best) { return kTightTol * std::max(1.0, std::abs(best)); }

// Runs fn(0..count-1) on up to `workers` threads; task t goes to thread t % workers.
template <class F>
void parallel_for(std::size_t count, int workers, F&& fn) {
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  if (threads <= 1) {
    for (std::size_t t = 0; t < count; ++t) fn(t);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t t = w; t < count; t += threads) fn(t);
    });
  for (auto& th : pool) th.join();
}

// Shift restricted to the atoms of A, indexed locally 0..k-1. The products
// K_ij * w_j and the summation order match shift_of_atoms() exactly.
class LocalShift {
public:
  LocalShift(const DiscreteOperator& op, std::vector<std::size_t> atoms) : atoms_(std::move(atoms)) {
    const auto w = op.space().weights();
    const std::size_t k = atoms_.size();
    wa_.resize(k);
    kw_.resize(k * k);
    for (std::size_t a = 0; a < k; ++a) {
      wa_[a] = w[atoms_[a]];
      for (std::size_t b = 0; b < k; ++b) kw_[a * k + b] = op.entry(atoms_[a], atoms_[b]) * w[atoms_[b]];
    }
  }

  std::size_t size() const noexcept { return atoms_.size(); }
  double weight(std::size_t a) const noexcept { return wa_[a]; }
  double kw(std::size_t a, std::size_t b) const noexcept { return kw_[a * atoms_.size() + b]; }

  double eval(std::uint32_t mask) const noexcept {
    double mu = 0.0;
    for (std::uint32_t m = mask; m != 0; m &= m - 1) mu += wa_[std::countr_zero(m)];
    double acc = 0.0;
    for (std::uint32_t mi = mask; mi != 0; mi &= mi - 1) {
      const auto a = static_cast<std::size_t>(std::countr_zero(mi));
      const double* row = &kw_[a * atoms_.size()];
      double s = 0.0;
      for (std::uint32_t mj = mask; mj != 0; mj &= mj - 1) s += row[std::countr_zero(mj)];
      acc += std::abs(s) * wa_[a];
    }
    return acc / mu;
  }

  AtomSet to_set(std::size_t universe, std::uint32_t mask) const {
    AtomSet s(universe);
    for (std::uint32_t m = mask; m != 0; m &= m - 1) s.insert(atoms_[std::countr_zero(m)]);
    return s;
  }

  AtomSet to_set(std::size_t universe, const std::vector<char>& members) const {
    AtomSet s(universe);
    for (std::size_t a = 0; a < members.size(); ++a)
      if (members[a]) s.insert(atoms_[a]);
    return s;
  }

private:
  std::vector<std::size_t> atoms_;
  std::vector<double> wa_;
  std::vector<double> kw_;
};

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  AtomSet set;
};

// Smallest value wins; sets within the tie tolerance of it are ordered by AtomSet order.
Candidate pick_best(const std::vector<Candidate>& cands) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cands) best = std::min(best, c.value);
  const double limit = best + tie_tolerance(best);
  const Candidate* pick = nullptr;
  for (const auto& c : cands)
    if (c.value <= limit && (pick == nullptr || c.set < pick->set)) pick = &c;
  return pick ? *pick : Candidate{};
}

}  // namespace

// ------------------------------------------------------------------- exact

MembershipReport exact_min_shift(const DiscreteOperator& op, const AtomSet& domain, const SearchConfig& config) {
  config.validate();
  require_nonempty(op.space(), domain, "search domain");
  const std::size_t k = domain.count();
  if (k > static_cast<std::size_t>(config.max_exact_bits))
    throw Error(Errc::capacity_exceeded, "|A| = " + std::to_string(k) + " exceeds max_exact_bits = " +
                                             std::to_string(config.max_exact_bits));

  const LocalShift local(op, domain.indices());
  const std::uint64_t total = std::uint64_t{1} << k;  // masks 1 .. total-1
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 64);
  const std::uint64_t span = total / chunks;           // both powers of two

  // Pass 1: per-chunk minimum (order independent).
  std::vector<double> chunk_min(chunks, std::numeric_limits<double>::infinity());
  parallel_for(chunks, config.workers, [&](std::size_t c) {
    double best = std::numeric_limits<double>::infinity();
    const std::uint64_t lo = std::max<std::uint64_t>(1, c * span);
    const std::uint64_t hi = (c + 1) * span;
    for (std::uint64_t m = lo; m < hi; ++m) best = std::min(best, local.eval(static_cast<std::uint32_t>(m)));
    chunk_min[c] = best;
  });
  const double best = *std::min_element(chunk_min.begin(), chunk_min.end());
  const double limit = best + tie_tolerance(best);

  // Pass 2: first mask within tolerance in each chunk; the lowest chunk wins.
  std::vector<std::uint64_t> chunk_first(chunks, 0);
  std::vector<double> chunk_value(chunks, 0.0);
  parallel_for(chunks, config.workers, [&](std::size_t c) {
    if (chunk_min[c] > limit) return;
    const std::uint64_t lo = std::max<std::uint64_t>(1, c * span);
    const std::uint64_t hi = (c + 1) * span;
    for (std::uint64_t m = lo; m < hi; ++m) {
      const double v = local.eval(static_cast<std::uint32_t>(m));
      if (v <= limit) {
        chunk_first[c] = m;
        chunk_value[c] = v;
        return;
      }
    }
  });

  for (std::uint64_t c = 0; c < chunks; ++c) {
    if (chunk_first[c] != 0) {
      return MembershipReport{chunk_value[c], local.to_set(op.size(), static_cast<std::uint32_t>(chunk_first[c])),
                              true, "exact"};
    }
  }
  throw Error(Errc::invariant, "exhaustive search found no minimizer");
}

// ------------------------------------------------------------------- local

namespace {

Candidate local_restart(const DiscreteOperator& op, const LocalShift& local, std::uint64_t seed, int max_iters) {
  const std::size_t k = local.size();
  std::mt19937_64 rng(seed);
  std::vector<char> in(k, 0);
  std::size_t count = 0;
  for (std::size_t a = 0; a < k; ++a) {
    in[a] = static_cast<char>(rng() & 1);
    count += static_cast<std::size_t>(in[a]);
  }
  if (count == 0) {
    in[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)] = 1;
    count = 1;
  }

  // s[a] = sum_{b in B} K_ab w_b for every atom a of A.
  std::vector<double> s(k, 0.0);
  double mu = 0.0;
  for (std::size_t b = 0; b < k; ++b) {
    if (!in[b]) continue;
    mu += local.weight(b);
    for (std::size_t a = 0; a < k; ++a) s[a] += local.kw(a, b);
  }
  auto value_after_flip = [&](std::size_t c) {
    const double sign = in[c] ? -1.0 : 1.0;
    const double mu2 = mu + sign * local.weight(c);
    double acc = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      const bool member = (a == c) ? !in[a] : static_cast<bool>(in[a]);
      if (member) acc += std::abs(s[a] + sign * local.kw(a, c)) * local.weight(a);
    }
    return acc / mu2;
  };
  double current = 0.0;
  for (std::size_t a = 0; a < k; ++a)
    if (in[a]) current += std::abs(s[a]) * local.weight(a);
  current /= mu;

  for (int iter = 0; iter < max_iters; ++iter) {
    std::size_t best_flip = k;
    double best_value = current;
    for (std::size_t c = 0; c < k; ++c) {
      if (in[c] && count == 1) continue;
      const double v = value_after_flip(c);
      if (v < best_value - 1e-15 * std::max(1.0, std::abs(best_value))) {
        best_value = v;
        best_flip = c;
      }
    }
    if (best_flip == k) break;
    const double sign = in[best_flip] ? -1.0 : 1.0;
    for (std::size_t a = 0; a < k; ++a) s[a] += sign * local.kw(a, best_flip);
    mu += sign * local.weight(best_flip);
    count = in[best_flip] ? count - 1 : count + 1;
    in[best_flip] = static_cast<char>(!in[best_flip]);
    current = best_value;
  }

  Candidate out;
  out.set = local.to_set(op.size(), in);
  out.value = shift(op, out.set);
  return out;
}

}  // namespace

MembershipReport local_min_shift(const DiscreteOperator& op, const AtomSet& domain, const SearchConfig& config) {
  config.validate();
  require_nonempty(op.space(), domain, "search domain");
  const LocalShift local(op, domain.indices());

  std::vector<Candidate> results(static_cast<std::size_t>(config.restarts));
  parallel_for(results.size(), config.workers, [&](std::size_t r) {
    results[r] = local_restart(op, local, config.seed + r, config.max_iters);
  });
  const Candidate best = pick_best(results);
  return MembershipReport{best.value, best.set, false, "local"};
}

// ------------------------------------------------------------------ descent

DescentResult paper_guided_trace(const DiscreteOperator& op, const AtomSet& domain, const SearchConfig& config) {
  config.validate();
  require_nonempty(op.space(), domain, "search domain");

  DescentResult result;
  std::vector<Candidate> seen;
  auto record = [&](const AtomSet& set) { seen.push_back(Candidate{shift(op, set), set}); };
  auto finish = [&](std::string reason) {
    const Candidate best = pick_best(seen);
    result.report = MembershipReport{best.value, best.set, false, "paper_guided"};
    result.stop_reason = std::move(reason);
    return result;
  };

  record(domain);
  if (op_norm(op, domain) == 0.0) return finish("zero_operator");

  const DiscreteOperator id = DiscreteOperator::identity(op.space());
  AtomSet current = domain;
  double eps = config.initial_eps;

  for (int iter = 0; iter < config.max_iters; ++iter) {
    const double scale = op_norm(op, current);
    if (scale == 0.0) return finish("zero_operator");

    DescentStep step;
    step.eps = eps;
    step.domain = current;
    const AtomSet first = norm_attaining_core(lincomb(1.0, id, 1.0 / scale, op), current, eps);
    step.core = norm_attaining_core(lincomb(1.0, id, -1.0 / scale, op), first, eps);
    record(step.core);

    const auto core_atoms = step.core.indices();
    std::optional<RefineResult> refined;
    for (std::size_t len = core_atoms.size();; len = (len + 1) / 2) {
      const AtomSet b = AtomSet::of(op.size(), std::span<const std::size_t>(core_atoms.data(), len));
      try {
        refined = refine_set(op, current, b, eps);
        step.tried = b;
        break;
      } catch (const Error& e) {
        if (e.code() != Errc::not_near_daugavet && e.code() != Errc::degenerate) throw;
      }
      if (len == 1) break;
    }

    if (!refined) {
      step.tried = AtomSet(op.size());
      step.refined = AtomSet(op.size());
      result.steps.push_back(std::move(step));
      return finish("not_near_daugavet");
    }

    step.refined = refined->refined;
    step.shift = shift(op, step.refined);
    seen.push_back(Candidate{step.shift, step.refined});
    result.steps.push_back(step);

    if (step.refined == current) return finish("fixed_point");
    current = step.refined;
    eps *= config.eps_schedule;
  }
  return finish("max_iters");
}

MembershipReport paper_guided_descent(const DiscreteOperator& op, const AtomSet& domain, const SearchConfig& config) {
  return paper_guided_trace(op, domain, config).report;
}

// ---------------------------------------------------------------- dispatch

MembershipReport min_shift(const DiscreteOperator& op, const AtomSet& domain, const SearchConfig& config) {
  config.validate();
  switch (config.strategy) {
    case Strategy::exact: return exact_min_shift(op, domain, config);
    case Strategy::local: return local_min_shift(op, domain, config);
    case Strategy::paper_guided: return paper_guided_descent(op, domain, config);
    case Strategy::automatic: break;
  }
  require_nonempty(op.space(), domain, "search domain");
  if (domain.count() <= static_cast<std::size_t>(config.max_exact_bits)) return exact_min_shift(op, domain, config);

  MembershipReport guided = paper_guided_descent(op, domain, config);
  MembershipReport local = local_min_shift(op, domain, config);
  const double limit = guided.sigma + tie_tolerance(guided.sigma);
  if (local.sigma < guided.sigma && !(local.sigma <= limit && guided.witness < local.witness)) return local;
  return guided;
}

}  // namespace dlab
