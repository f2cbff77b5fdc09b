#include "dlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dlab/error.hpp"

namespace dlab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::spec, std::string("invalid JSON: ") + e.what());
  }
}

std::vector<double> number_array(const json& j, const char* name) {
  if (!j.is_array()) throw Error(Errc::spec, std::string(name) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw Error(Errc::spec, std::string(name) + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

MeasureSpace space_from(const json& j) {
  if (!j.is_object()) throw Error(Errc::spec, "space must be an object");
  const bool has_uniform = j.contains("uniform");
  const bool has_weights = j.contains("weights");
  if (has_uniform == has_weights) throw Error(Errc::spec, "space needs exactly one of \"uniform\" or \"weights\"");
  try {
    if (has_uniform) {
      const auto& u = j.at("uniform");
      if (!u.is_number_integer() || u.get<long long>() < 1)
        throw Error(Errc::spec, "\"uniform\" must be a positive integer");
      return MeasureSpace::uniform(u.get<std::size_t>());
    }
    return MeasureSpace(number_array(j.at("weights"), "weights"));
  } catch (const Error& e) {
    if (e.code() == Errc::spec) throw;
    throw Error(Errc::spec, e.what());
  }
}

OperatorSpec spec_from(const json& j) {
  if (!j.is_object()) throw Error(Errc::spec, "operator must be an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw Error(Errc::spec, "operator needs a string \"kind\"");
  const auto kind = parse_kind(j.at("kind").get<std::string>());
  if (!kind) throw Error(Errc::spec, "unknown operator kind \"" + j.at("kind").get<std::string>() + "\"");

  OperatorSpec s;
  s.kind = *kind;
  if (j.contains("columns")) {
    const auto& cols = j.at("columns");
    if (!cols.is_array()) throw Error(Errc::spec, "columns must be an array of arrays");
    for (const auto& c : cols) s.columns.push_back(number_array(c, "columns"));
  }
  if (j.contains("g")) s.g = number_array(j.at("g"), "g");
  if (j.contains("phi")) s.phi = number_array(j.at("phi"), "phi");
  if (j.contains("perm")) {
    const auto& p = j.at("perm");
    if (!p.is_array()) throw Error(Errc::spec, "perm must be an array of indices");
    for (const auto& x : p) {
      if (!x.is_number_integer() || x.get<long long>() < 0) throw Error(Errc::spec, "perm entries must be indices");
      s.perm.push_back(x.get<std::size_t>());
    }
  }
  if (j.contains("rule")) {
    if (!j.at("rule").is_string()) throw Error(Errc::spec, "rule must be a string");
    s.rule = j.at("rule").get<std::string>();
  }
  if (j.contains("terms")) {
    const auto& t = j.at("terms");
    if (!t.is_array()) throw Error(Errc::spec, "terms must be an array of operators");
    for (const auto& term : t) s.terms.push_back(spec_from(term));
  }
  if (j.contains("coefficients")) s.coefficients = number_array(j.at("coefficients"), "coefficients");
  s.validate();
  return s;
}

double clean(double x) {
  const double r = round12(x);
  return r == 0.0 ? 0.0 : r;
}

}  // namespace

MeasureSpace parse_space(std::string_view json_text) { return space_from(parse_text(json_text)); }

OperatorSpec parse_operator_spec(std::string_view json_text) {
  const json j = parse_text(json_text);
  return spec_from(j.contains("operator") ? j.at("operator") : j);
}

OperatorFile parse_operator_file(std::string_view json_text) {
  const json j = parse_text(json_text);
  if (!j.is_object() || !j.contains("space")) throw Error(Errc::spec, "operator file needs a \"space\"");
  OperatorFile f{space_from(j.at("space")), spec_from(j.contains("operator") ? j.at("operator") : j)};
  build(f.spec, f.space);  // surface size mismatches now, before any output
  return f;
}

OperatorFile load_operator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::spec, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_operator_file(buf.str());
}

std::string format12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

double round12(double x) { return std::stod(format12(x)); }

std::string to_json(const MembershipReport& report) {
  ordered_json j;
  j["sigma"] = clean(report.sigma);
  j["witness"] = report.witness.to_hex();
  j["exact"] = report.exact;
  j["strategy"] = report.strategy;
  return j.dump();
}

std::string to_json(const DefectCertificate& cert) {
  ordered_json j;
  j["B0"] = cert.b0.to_hex();
  j["gap"] = clean(cert.gap);
  j["shift"] = clean(cert.shift_value);
  j["bound"] = clean(cert.bound);
  j["defect"] = clean(cert.defect);
  return j.dump();
}

std::string to_json(const RefineResult& r) {
  ordered_json j;
  j["B"] = r.set.to_hex();
  j["B_prime"] = r.refined.to_hex();
  j["omega1"] = r.split.omega1.to_hex();
  j["eps"] = clean(r.eps);
  j["scale"] = clean(r.scale);
  j["norm_plus"] = clean(r.norm_plus);
  j["norm_minus"] = clean(r.norm_minus);
  j["mass_fraction"] = clean(r.mass_fraction);
  j["distance"] = clean(r.distance);
  j["shift"] = clean(r.shift);
  j["bound_mass"] = clean(r.eps);
  j["bound_distance"] = clean(2.0 * r.eps);
  j["bound_shift"] = clean(3.0 * r.eps);
  return j.dump();
}

}  // namespace dlab
