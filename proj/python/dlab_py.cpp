#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "dlab/daugavet.hpp"
#include "dlab/error.hpp"
#include "dlab/io.hpp"
#include "dlab/search.hpp"
#include "dlab/zoo.hpp"

namespace py = pybind11;
using namespace dlab;

namespace {

// Sets cross the boundary as lists of atom indices; None means every atom.
AtomSet to_set(const DiscreteOperator& op, const std::optional<std::vector<std::size_t>>& atoms) {
  if (!atoms) return AtomSet::full(op.size());
  AtomSet s(op.size());
  for (std::size_t i : *atoms) s.insert(i);
  return s;
}

py::dict report_dict(const MembershipReport& r) {
  py::dict d;
  d["sigma"] = r.sigma;
  d["witness"] = r.witness.indices();
  d["witness_hex"] = r.witness.to_hex();
  d["exact"] = r.exact;
  d["strategy"] = r.strategy;
  return d;
}

SearchConfig make_config(const std::string& strategy, std::uint64_t seed, int restarts, int max_exact_bits,
                         int max_iters, double eps_schedule, int workers) {
  SearchConfig c;
  const auto s = parse_strategy(strategy);
  if (!s) throw Error(Errc::parameter, "unknown strategy '" + strategy + "'");
  c.strategy = *s;
  c.seed = seed;
  c.restarts = restarts;
  c.max_exact_bits = max_exact_bits;
  c.max_iters = max_iters;
  c.eps_schedule = eps_schedule;
  c.workers = workers;
  return c;
}

}  // namespace

PYBIND11_MODULE(dlab, m) {
  m.doc() = "Daugavet defects and shift functionals for operators on finite-atom L1 spaces";
  m.attr("__version__") = DLAB_VERSION;

  const auto& base = py::register_exception<Error>(m, "DlabError", PyExc_ValueError);
  py::register_exception<NotNearDaugavet>(m, "NotNearDaugavetError", base.ptr());

  py::class_<DiscreteOperator>(m, "Operator")
      .def(py::init([](std::vector<double> weights, const std::vector<std::vector<double>>& columns) {
             return DiscreteOperator(MeasureSpace(std::move(weights)), columns);
           }),
           py::arg("weights"), py::arg("columns"), "columns[j][i] is the value of T(e_j) on atom i")
      .def_static(
          "from_json", [](const std::string& text) {
            const auto f = parse_operator_file(text);
            return build(f.spec, f.space);
          },
          py::arg("text"))
      .def_static(
          "lift",
          [](const std::string& kind_or_json, int level) {
            const auto kind = parse_kind(kind_or_json);
            const auto spec = kind ? default_spec(*kind) : parse_operator_spec(kind_or_json);
            return lift(spec, level).op;
          },
          py::arg("spec"), py::arg("level"), "Zoo kind name or operator JSON on 2^level uniform atoms")
      .def_static("identity", [](std::size_t n) { return DiscreteOperator::identity(MeasureSpace::uniform(n)); })
      .def_property_readonly("size", &DiscreteOperator::size)
      .def_property_readonly("weights",
                             [](const DiscreteOperator& t) {
                               const auto w = t.space().weights();
                               return std::vector<double>(w.begin(), w.end());
                             })
      .def_property_readonly("columns",
                             [](const DiscreteOperator& t) {
                               std::vector<std::vector<double>> out;
                               for (std::size_t j = 0; j < t.size(); ++j) {
                                 const auto c = t.column(j);
                                 out.emplace_back(c.begin(), c.end());
                               }
                               return out;
                             })
      .def(
          "apply",
          [](const DiscreteOperator& t, std::vector<double> f) {
            const auto g = apply(t, L1Fun(t.space(), std::move(f)));
            return std::vector<double>(g.values().begin(), g.values().end());
          },
          py::arg("f"))
      .def(
          "op_norm", [](const DiscreteOperator& t, std::optional<std::vector<std::size_t>> a) {
            return op_norm(t, to_set(t, a));
          },
          py::arg("domain") = py::none())
      .def(
          "id_plus_norm",
          [](const DiscreteOperator& t, std::optional<std::vector<std::size_t>> a, int sign) {
            return id_plus_norm(t, to_set(t, a), sign);
          },
          py::arg("domain") = py::none(), py::arg("sign") = 1)
      .def(
          "defect",
          [](const DiscreteOperator& t, std::optional<std::vector<std::size_t>> a, int sign) {
            return daugavet_defect(t, to_set(t, a), sign);
          },
          py::arg("domain") = py::none(), py::arg("sign") = 1)
      .def(
          "shift", [](const DiscreteOperator& t, std::vector<std::size_t> b) { return shift(t, to_set(t, b)); },
          py::arg("set"))
      .def(
          "sigma",
          [](const DiscreteOperator& t, std::optional<std::vector<std::size_t>> a, const std::string& strategy,
             std::uint64_t seed, int restarts, int max_exact_bits, int max_iters, double eps_schedule, int workers) {
            const auto c = make_config(strategy, seed, restarts, max_exact_bits, max_iters, eps_schedule, workers);
            return report_dict(sigma(t, to_set(t, a), c));
          },
          py::arg("domain") = py::none(), py::arg("strategy") = "auto", py::arg("seed") = 0, py::arg("restarts") = 8,
          py::arg("max_exact_bits") = 20, py::arg("max_iters") = 500, py::arg("eps_schedule") = 0.5,
          py::arg("workers") = 1)
      .def(
          "certify",
          [](const DiscreteOperator& t, std::vector<std::size_t> b0, std::optional<std::vector<std::size_t>> a) {
            const auto c = defect_bound(t, to_set(t, a), to_set(t, b0));
            py::dict d;
            d["B0"] = c.b0.indices();
            d["gap"] = c.gap;
            d["shift"] = c.shift_value;
            d["bound"] = c.bound;
            d["defect"] = c.defect;
            d["holds"] = c.holds();
            return d;
          },
          py::arg("b0"), py::arg("domain") = py::none())
      .def(
          "refine",
          [](const DiscreteOperator& t, std::vector<std::size_t> b, double eps,
             std::optional<std::vector<std::size_t>> a) {
            const auto r = refine_set(t, to_set(t, a), to_set(t, b), eps);
            py::dict d;
            d["B"] = r.set.indices();
            d["B_prime"] = r.refined.indices();
            d["omega1"] = r.split.omega1.indices();
            d["scale"] = r.scale;
            d["norm_plus"] = r.norm_plus;
            d["norm_minus"] = r.norm_minus;
            d["mass_fraction"] = r.mass_fraction;
            d["distance"] = r.distance;
            d["shift"] = r.shift;
            return d;
          },
          py::arg("set"), py::arg("eps") = 0.01, py::arg("domain") = py::none());

  m.def(
      "dor_split",
      [](std::vector<double> weights, std::vector<double> u, std::vector<double> v) {
        const MeasureSpace space(std::move(weights));
        const auto s = dor_split(L1Fun(space, std::move(u)), L1Fun(space, std::move(v)));
        py::dict d;
        d["omega1"] = s.omega1.indices();
        d["omega2"] = s.omega2.indices();
        d["overlap"] = s.overlap;
        d["captured_u"] = s.captured_u;
        d["captured_v"] = s.captured_v;
        return d;
      },
      py::arg("weights"), py::arg("u"), py::arg("v"));
}
