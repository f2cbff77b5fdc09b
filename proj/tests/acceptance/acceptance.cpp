// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Reference values come from the oracles in tests/unit/oracles.hpp, which only
// use apply/norm1/mask on explicit functions.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dlab/daugavet.hpp"
#include "dlab/error.hpp"
#include "dlab/search.hpp"
#include "dlab/zoo.hpp"
#include "oracles.hpp"

using namespace dlab;
namespace oracle = dlab::testing;

namespace {

struct Check {
  bool ok = true;
  int checked = 0;
  double worst = 0.0;  // largest violation or error seen
  std::string first_failure;

  void expect(bool cond, double err, const std::string& what) {
    ++checked;
    worst = std::max(worst, err);
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

int failures = 0;

void run(int id, const char* title, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.first_failure = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool fast = secs < limit_s;
  const bool pass = c.ok && fast && c.checked > 0;
  if (!pass) ++failures;
  std::printf("%s  criterion %d: %s  [%d checks, worst %.3g, %.3f s / limit %.0f s]\n", pass ? "PASS" : "FAIL", id,
              title, c.checked, c.worst, secs, limit_s);
  if (!c.ok) std::printf("      first failure: %s\n", c.first_failure.c_str());
  if (!fast) std::printf("      runtime limit exceeded\n");
  std::fflush(stdout);
}

std::string set_str(const AtomSet& s) { return s.to_hex(); }

SearchConfig exact_config(int workers = 1) {
  SearchConfig c;
  c.strategy = Strategy::exact;
  c.workers = workers;
  return c;
}

// Every zoo kind that has a canonical representative, plus pair-swap + neg_average.
std::vector<std::pair<std::string, OperatorSpec>> zoo_specs() {
  std::vector<std::pair<std::string, OperatorSpec>> out;
  for (Kind k : {Kind::rank_one, Kind::multiplication, Kind::composition, Kind::average, Kind::neg_average,
                 Kind::rademacher_mult})
    out.emplace_back(std::string(to_string(k)), default_spec(k));
  OperatorSpec sum;
  sum.kind = Kind::sum;
  sum.terms = {default_spec(Kind::composition), default_spec(Kind::neg_average)};
  out.emplace_back("pair_swap+neg_average", sum);
  return out;
}

void criterion1(Check& c) {
  const auto space = MeasureSpace::uniform(8);
  const auto id = DiscreteOperator::identity(space);
  for (const auto& a : oracle::nonempty_subsets(AtomSet::full(8))) {
    const double plus = daugavet_defect(id, a, 1);
    const double minus = daugavet_defect(id, a, -1);
    const double err = std::max(std::abs(plus), std::abs(minus - 2.0));
    c.expect(err <= 1e-12, err, "A=" + set_str(a));
  }
}

void criterion2(Check& c) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    const auto space = oracle::random_space(rng, n);
    const auto u = oracle::random_fun(rng, space);
    const auto v = oracle::random_fun(rng, space);
    const auto split = dor_split(u, v);
    const double rhs = norm1(u) + norm1(v) - (norm1(u + v) + norm1(u - v)) / 2.0;
    double direct = 0.0;
    for (std::size_t i = 0; i < n; ++i) direct += std::min(std::abs(u[i]), std::abs(v[i])) * space.weight(i);
    const double err = std::max(std::abs(split.overlap - rhs), std::abs(direct - rhs));
    c.expect(err <= 1e-12, err, "pair " + std::to_string(trial));
  }
}

void criterion3(Check& c) {
  std::mt19937_64 rng(3033);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const auto space = oracle::random_space(rng, n);
    const auto t = oracle::random_operator(rng, space);
    const auto full = AtomSet::full(n);
    const double defect = daugavet_defect(t, full, 1);
    const double norm = op_norm(t, full);
    for (const auto& b0 : oracle::nonempty_subsets(full)) {
      const auto cert = defect_bound(t, full, b0);
      // Independent recomputation of the bound.
      const double gap = norm - norm1(apply(t, normalized_indicator(space, b0)));
      const double bound = gap + 2.0 * oracle::shift_oracle(t, b0);
      const double violation = std::max(defect - bound, cert.defect - cert.bound);
      c.expect(violation <= 1e-9 && std::abs(cert.bound - bound) <= 1e-9, std::max(0.0, violation),
               "trial " + std::to_string(trial) + " B0=" + set_str(b0));
    }
  }
}

void criterion4(Check& c) {
  const auto avg = default_spec(Kind::average);
  const auto neg = default_spec(Kind::neg_average);
  const auto mult = default_spec(Kind::multiplication);
  const auto swap = default_spec(Kind::composition);

  for (int level = 2; level <= 6; ++level) {
    const double target = std::ldexp(1.0, -level);
    const auto a = lift(avg, level);
    const double s = sigma(a.op, AtomSet::full(a.space.size()), SearchConfig{}).sigma;
    c.expect(std::abs(s - target) <= 1e-9, std::abs(s - target), "average sigma level " + std::to_string(level));
    const auto b = lift(neg, level);
    const double d = daugavet_defect(b.op, AtomSet::full(b.space.size()), 1);
    c.expect(std::abs(d - 2.0 * target) <= 1e-9, std::abs(d - 2.0 * target),
             "neg_average defect level " + std::to_string(level));
  }
  // Exhaustive oracle at the smallest level.
  {
    const auto a = lift(avg, 2);
    const double o = oracle::popcount_oracle(a.op, AtomSet::full(4)).value;
    c.expect(std::abs(o - 0.25) <= 1e-9, std::abs(o - 0.25), "average oracle level 2");
    const auto b = lift(neg, 2);
    std::mt19937_64 rng(4);
    const auto full = AtomSet::full(4);
    const double brute = 1.0 + oracle::brute_norm(b.space, full, [&](const L1Fun& f) { return norm1(apply(b.op, f)); }, rng) -
                         oracle::brute_norm(b.space, full, [&](const L1Fun& f) { return oracle::plus_norm_at(b.op, f, 1); }, rng);
    c.expect(std::abs(brute - 0.5) <= 1e-9, std::abs(brute - 0.5), "neg_average oracle level 2");
    const auto m = lift(mult, 2);
    const double mo = oracle::popcount_oracle(m.op, full).value;
    c.expect(std::abs(mo - 0.5) <= 1e-9, std::abs(mo - 0.5), "multiplication oracle level 2");
  }
  for (int level = 1; level <= kMaxLiftLevel; ++level) {
    const auto m = lift(mult, level);
    const auto full = AtomSet::full(m.space.size());
    const double d = daugavet_defect(m.op, full, 1);
    c.expect(std::abs(d - 1.0) <= 1e-9, std::abs(d - 1.0), "multiplication defect level " + std::to_string(level));
    // Every shift(B) equals 1/2 for phi = -1/2, so the first candidate of any search is optimal.
    SearchConfig cfg;
    cfg.restarts = 1;
    const double s = sigma(m.op, full, cfg).sigma;
    c.expect(std::abs(s - 0.5) <= 1e-9, std::abs(s - 0.5), "multiplication sigma level " + std::to_string(level));
  }
  {
    const auto p = lift(swap, 1);
    const auto full = AtomSet::full(2);
    const double o = oracle::popcount_oracle(p.op, full).value;
    const double s = sigma(p.op, full, exact_config()).sigma;
    c.expect(std::abs(s) <= 1e-9 && std::abs(o) <= 1e-9, std::max(std::abs(s), std::abs(o)), "pair-swap sigma");
    for (const auto& a : oracle::nonempty_subsets(full))
      for (int sign : {1, -1}) {
        const double d = daugavet_defect(p.op, a, sign);
        c.expect(std::abs(d) <= 1e-9, std::abs(d), "pair-swap defect A=" + set_str(a));
      }
  }
}

void criterion5(Check& c) {
  const auto space = MeasureSpace::uniform(4);
  int applicable = 0;
  for (const auto& [name, spec] : zoo_specs()) {
    const auto t = build(spec, space);
    for (const auto& a : oracle::nonempty_subsets(AtomSet::full(4))) {
      if (op_norm(t, a) == 0.0) continue;
      for (const auto& b : oracle::nonempty_subsets(a)) {
        for (double eps : {0.05, 0.1, 0.3}) {
          RefineResult r;
          try {
            r = refine_set(t, a, b, eps);
          } catch (const NotNearDaugavet&) {
            continue;
          } catch (const Error& e) {
            if (e.code() == Errc::degenerate) continue;
            throw;
          }
          ++applicable;
          const auto scaled = lincomb(1.0 / r.scale, t, 0.0, t);
          const double distance =
              norm1(normalized_indicator(space, r.refined) - normalized_indicator(space, b));
          const double sh = oracle::shift_oracle(scaled, r.refined);
          const double violation = std::max({distance - 2 * eps, sh - 3 * eps, r.distance - 2 * eps, r.shift - 3 * eps});
          c.expect(violation <= 1e-9, std::max(0.0, violation),
                   name + " A=" + set_str(a) + " B=" + set_str(b) + " eps=" + std::to_string(eps));
        }
      }
    }
  }
  c.expect(applicable > 0, 0.0, "no case met the preconditions");
}

void criterion6(Check& c) {
  std::mt19937_64 rng(6066);
  const auto space = MeasureSpace::uniform(8);
  const auto subsets = oracle::nonempty_subsets(AtomSet::full(8));
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = oracle::random_operator(rng, space);
    const auto v = oracle::random_operator(rng, space);
    const auto w = lincomb(1.0, u, 1.0, v);
    for (const auto& b : subsets) {
      const double violation = shift(w, b) - shift(u, b) - shift(v, b);
      c.expect(violation <= 1e-12, std::max(0.0, violation), "pair " + std::to_string(trial) + " B=" + set_str(b));
    }
  }
  OperatorSpec sum;
  sum.kind = Kind::sum;
  sum.terms = {default_spec(Kind::composition), default_spec(Kind::neg_average)};
  for (int level = 2; level <= 6; ++level) {
    const auto l = lift(sum, level);
    const std::size_t n = l.space.size();
    const double target = std::ldexp(1.0, -level);
    const double s = sigma(l.op, AtomSet::full(n), SearchConfig{}).sigma;
    c.expect(s <= target + 1e-12, std::max(0.0, s - target), "closure sigma level " + std::to_string(level));
    for (std::size_t i = 0; i < n; i += 2) {
      const double e = oracle::shift_oracle(l.op, AtomSet::of(n, {i}));
      c.expect(e <= target + 1e-12, std::max(0.0, e - target), "even singleton witness " + std::to_string(i));
    }
  }
}

void criterion7(Check& c) {
  const auto spec = default_spec(Kind::rademacher_mult);
  for (int level = 1; level <= kMaxLiftLevel; ++level) {
    const auto l = lift(spec, level);
    const std::size_t n = l.space.size();
    AtomSet even(n);
    for (std::size_t i = 0; i < n; i += 2) even.insert(i);
    const double dp = daugavet_defect(l.op, AtomSet::full(n), 1);
    const double dm = daugavet_defect(l.op, AtomSet::full(n), -1);
    const double de = daugavet_defect(l.op, even, -1);
    const double err = std::max({std::abs(dp), std::abs(dm), std::abs(de - 2.0)});
    c.expect(err <= 1e-12, err, "level " + std::to_string(level));
  }
}

void criterion8(Check& c) {
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto space = MeasureSpace::uniform(n);
    const auto full = AtomSet::full(n);
    for (const auto& [name, spec] : zoo_specs()) {
      if ((spec.kind == Kind::composition || spec.kind == Kind::sum) && n % 2) continue;
      const auto t = build(spec, space);
      const std::string where = name + " n=" + std::to_string(n);
      const auto ex1 = exact_min_shift(t, full, exact_config(1));
      const auto ex8 = exact_min_shift(t, full, exact_config(8));
      const auto o = oracle::popcount_oracle(t, full);
      const double err = std::abs(ex1.sigma - o.value);
      c.expect(err <= 1e-12 && ex1.witness == o.witness, err, where + " exact vs oracle");
      c.expect(ex1.sigma == ex8.sigma && ex1.witness == ex8.witness, 0.0, where + " exact workers");

      for (Strategy s : {Strategy::local, Strategy::paper_guided}) {
        SearchConfig one;
        one.strategy = s;
        SearchConfig eight = one;
        eight.workers = 8;
        const auto r1 = s == Strategy::local ? local_min_shift(t, full, one) : paper_guided_descent(t, full, one);
        const auto r8 = s == Strategy::local ? local_min_shift(t, full, eight) : paper_guided_descent(t, full, eight);
        const double beat = ex1.sigma - r1.sigma;
        c.expect(beat <= 1e-12, std::max(0.0, beat), where + " " + std::string(to_string(s)) + " beats exact");
        c.expect(r1.sigma == r8.sigma && r1.witness == r8.witness, 0.0,
                 where + " " + std::string(to_string(s)) + " workers");
      }
    }
  }
}

}  // namespace

int main() {
  run(1, "defect identities for Id on uniform n=8", 1, criterion1);
  run(2, "min-identity of the dominance split", 1, criterion2);
  run(3, "defect certificate soundness", 30, criterion3);
  run(4, "closed-form zoo targets", 10, criterion4);
  run(5, "refine_set bounds", 10, criterion5);
  run(6, "shift subadditivity and closure convergence", 10, criterion6);
  run(7, "rademacher quantifier experiment", 60, criterion7);
  run(8, "search consistency", 60, criterion8);
  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
