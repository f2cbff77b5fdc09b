// dlab: command-line front end for the Daugavet laboratory.
//
//   dlab defect   OPFILE [--set HEX] [--sign +1|-1]
//   dlab sigma    OPFILE [--set HEX] [search flags]
//   dlab certify  OPFILE [--set HEX] (--b0 HEX | --auto) [search flags]
//   dlab refine   OPFILE [--set HEX] --b HEX [--eps E]
//   dlab converge KIND|OPFILE --levels A..B --out CSV [search flags]
//
// Exit codes: 0 ok, 2 malformed input, 3 empty set, 4 capacity exceeded,
// 5 certificate check failed, 6 refine preconditions fail.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dlab/daugavet.hpp"
#include "dlab/error.hpp"
#include "dlab/io.hpp"
#include "dlab/search.hpp"
#include "dlab/zoo.hpp"

namespace {

using namespace dlab;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitEmpty = 3;
constexpr int kExitCapacity = 4;
constexpr int kExitCertificate = 5;
constexpr int kExitNotNear = 6;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::empty_set: return kExitEmpty;
    case Errc::capacity_exceeded: return kExitCapacity;
    case Errc::invariant: return kExitCertificate;
    case Errc::not_near_daugavet: return kExitNotNear;
    default: return kExitInput;
  }
}

struct SearchFlags {
  std::string strategy = "auto";
  std::uint64_t seed = 0;
  int restarts = 8;
  int max_exact_bits = 20;
  int max_iters = 500;
  double eps_schedule = 0.5;
  int workers = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--strategy", strategy, "exact | local | paper_guided | auto")->capture_default_str();
    cmd->add_option("--seed", seed, "seed for local search")->capture_default_str();
    cmd->add_option("--restarts", restarts, "local search restarts")->capture_default_str();
    cmd->add_option("--max-exact-bits", max_exact_bits, "largest |A| for exhaustive search")->capture_default_str();
    cmd->add_option("--max-iters", max_iters, "iteration cap for heuristics")->capture_default_str();
    cmd->add_option("--eps-schedule", eps_schedule, "eps shrink factor of the guided descent")
        ->capture_default_str();
    cmd->add_option("--workers", workers, "worker threads")->capture_default_str();
  }

  SearchConfig config() const {
    SearchConfig c;
    const auto s = parse_strategy(strategy);
    if (!s) throw Error(Errc::parameter, "unknown strategy \"" + strategy + "\"");
    c.strategy = *s;
    c.seed = seed;
    c.restarts = restarts;
    c.max_exact_bits = max_exact_bits;
    c.max_iters = max_iters;
    c.eps_schedule = eps_schedule;
    c.workers = workers;
    c.validate();
    return c;
  }

  // workers is excluded: results do not depend on it.
  std::string describe() const {
    std::ostringstream o;
    o << "strategy=" << strategy << " seed=" << seed << " restarts=" << restarts
      << " max_exact_bits=" << max_exact_bits << " max_iters=" << max_iters << " eps_schedule=" << eps_schedule;
    return o.str();
  }
};

AtomSet set_or_full(const MeasureSpace& space, const std::string& hex) {
  return hex.empty() ? AtomSet::full(space.size()) : AtomSet::from_hex(space.size(), hex);
}

int parse_sign(const std::string& s) {
  if (s == "+1" || s == "1") return 1;
  if (s == "-1") return -1;
  throw Error(Errc::parameter, "sign must be +1 or -1");
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// ------------------------------------------------------------------ commands

int run_defect(const std::string& file, const std::string& set_hex, const std::string& sign_text) {
  const OperatorFile f = load_operator_file(file);
  const DiscreteOperator op = build(f.spec, f.space);
  const AtomSet a = set_or_full(f.space, set_hex);
  const int sign = parse_sign(sign_text);
  const double norm = op_norm(op, a);
  const double plus = id_plus_norm(op, a, sign);
  std::cout << "{\"op_norm\":" << format12(norm) << ",\"id_plus_norm\":" << format12(plus)
            << ",\"defect\":" << format12(1.0 + norm - plus) << "}\n";
  return kExitOk;
}

int run_sigma(const std::string& file, const std::string& set_hex, const SearchFlags& flags) {
  const OperatorFile f = load_operator_file(file);
  const SearchConfig config = flags.config();
  const DiscreteOperator op = build(f.spec, f.space);
  const AtomSet a = set_or_full(f.space, set_hex);
  std::cout << to_json(sigma(op, a, config)) << "\n";
  return kExitOk;
}

int run_certify(const std::string& file, const std::string& set_hex, const std::string& b0_hex, bool automatic,
                const SearchFlags& flags) {
  const OperatorFile f = load_operator_file(file);
  const SearchConfig config = flags.config();
  const DiscreteOperator op = build(f.spec, f.space);
  const AtomSet a = set_or_full(f.space, set_hex);
  if (automatic == !b0_hex.empty()) throw Error(Errc::parameter, "give exactly one of --b0 or --auto");
  const AtomSet b0 = automatic ? sigma(op, a, config).witness : AtomSet::from_hex(f.space.size(), b0_hex);
  const DefectCertificate cert = defect_bound(op, a, b0);
  std::cout << to_json(cert) << "\n";
  if (!cert.holds()) {
    std::cerr << "certificate check failed: bound " << format12(cert.bound) << " < defect "
              << format12(cert.defect) << "\n";
    return kExitCertificate;
  }
  return kExitOk;
}

int run_refine(const std::string& file, const std::string& set_hex, const std::string& b_hex, double eps) {
  const OperatorFile f = load_operator_file(file);
  const DiscreteOperator op = build(f.spec, f.space);
  const AtomSet a = set_or_full(f.space, set_hex);
  const AtomSet b = AtomSet::from_hex(f.space.size(), b_hex);
  try {
    std::cout << to_json(refine_set(op, a, b, eps)) << "\n";
  } catch (const NotNearDaugavet& e) {
    std::cout << "{\"error\":\"NotNearDaugavet\",\"norm_plus\":" << format12(e.norm_plus())
              << ",\"norm_minus\":" << format12(e.norm_minus()) << ",\"threshold\":" << format12(e.threshold())
              << "}\n";
    throw;
  }
  return kExitOk;
}

std::pair<int, int> parse_levels(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int l = std::stoi(text);
      return {l, l};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw Error(Errc::parameter, "levels must look like A..B");
  }
}

int run_converge(const std::string& input, const std::string& levels_text, const std::string& out_path,
                 const SearchFlags& flags) {
  OperatorSpec spec;
  if (const auto kind = parse_kind(input)) {
    spec = default_spec(*kind);
  } else {
    std::ifstream in(input);
    if (!in) throw Error(Errc::spec, "\"" + input + "\" is neither an operator kind nor a readable file");
    std::stringstream buf;
    buf << in.rdbuf();
    spec = parse_operator_spec(buf.str());
  }
  const SearchConfig config = flags.config();
  const auto [lo, hi] = parse_levels(levels_text);
  if (lo < 1 || hi < lo) throw Error(Errc::parameter, "levels must satisfy 1 <= A <= B");
  if (hi > kMaxLiftLevel) throw Error(Errc::capacity_exceeded, "level exceeds " + std::to_string(kMaxLiftLevel));

  std::ostringstream rows;
  for (int level = lo; level <= hi; ++level) {
    const auto start = std::chrono::steady_clock::now();
    const Lifted l = lift(spec, level);
    const AtomSet full = AtomSet::full(l.space.size());
    const double norm = op_norm(l.op, full);
    const double dplus = daugavet_defect(l.op, full, 1);
    const double dminus = daugavet_defect(l.op, full, -1);
    const MembershipReport r = sigma(l.op, full, config);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    char runtime[32];
    std::snprintf(runtime, sizeof runtime, "%.3f", ms);
    rows << level << ',' << l.space.size() << ',' << format12(norm) << ',' << format12(dplus) << ','
         << format12(dminus) << ',' << format12(r.sigma) << ',' << r.strategy << ',' << runtime << '\n';
  }

  const std::filesystem::path out(out_path);
  const std::filesystem::path tmp = out.string() + ".partial";
  {
    std::ofstream os(tmp);
    if (!os) throw Error(Errc::parameter, "cannot write " + tmp.string());
    os << "# command: dlab converge\n"
       << "# version: " << DLAB_VERSION << "\n"
       << "# input: " << input << "\n"
       << "# flags: levels=" << lo << ".." << hi << " " << flags.describe() << "\n"
       << "# timestamp: " << utc_timestamp() << "\n"
       << "level,N,op_norm,defect_plus,defect_minus,sigma,strategy,runtime_ms\n"
       << rows.str();
    if (!os) throw Error(Errc::parameter, "failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Daugavet-equation laboratory on finite-atom L1 spaces"};
  app.set_version_flag("--version", std::string(DLAB_VERSION));
  app.require_subcommand(1);

  std::string file, set_hex, sign = "+1", b0_hex, b_hex, levels, out_path, input;
  bool automatic = false;
  double eps = 1e-2;
  SearchFlags flags;

  auto* defect = app.add_subcommand("defect", "op_norm, ||Id_A + sign T_A|| and the Daugavet defect on A");
  defect->add_option("operator", file, "operator spec JSON")->required();
  defect->add_option("--set", set_hex, "domain A as hex bitmask (default: all atoms)");
  defect->add_option("--sign", sign, "+1 or -1")->capture_default_str();

  auto* sig = app.add_subcommand("sigma", "minimum shift over nonempty subsets of A");
  sig->add_option("operator", file, "operator spec JSON")->required();
  sig->add_option("--set", set_hex, "domain A as hex bitmask (default: all atoms)");
  flags.attach(sig);

  auto* cert = app.add_subcommand("certify", "defect certificate from a witness set B0");
  cert->add_option("operator", file, "operator spec JSON")->required();
  cert->add_option("--set", set_hex, "domain A as hex bitmask (default: all atoms)");
  cert->add_option("--b0", b0_hex, "witness B0 as hex bitmask");
  cert->add_flag("--auto", automatic, "use the sigma witness as B0");
  flags.attach(cert);

  auto* ref = app.add_subcommand("refine", "one refinement step B -> B'");
  ref->add_option("operator", file, "operator spec JSON")->required();
  ref->add_option("--set", set_hex, "domain A as hex bitmask (default: all atoms)");
  ref->add_option("--b", b_hex, "set B as hex bitmask")->required();
  ref->add_option("--eps", eps, "tolerance eps")->capture_default_str();

  auto* conv = app.add_subcommand("converge", "sweep dyadic refinement levels, write CSV");
  conv->add_option("kind", input, "operator kind or operator spec JSON")->required();
  conv->add_option("--levels", levels, "level range A..B")->required();
  conv->add_option("--out", out_path, "CSV output path")->required();
  flags.attach(conv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*defect) return run_defect(file, set_hex, sign);
    if (*sig) return run_sigma(file, set_hex, flags);
    if (*cert) return run_certify(file, set_hex, b0_hex, automatic, flags);
    if (*ref) return run_refine(file, set_hex, b_hex, eps);
    if (*conv) return run_converge(input, levels, out_path, flags);
  } catch (const Error& e) {
    std::cerr << "dlab: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "dlab: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
