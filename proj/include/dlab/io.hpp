#pragma once

#include <string>
#include <string_view>

#include "dlab/daugavet.hpp"
#include "dlab/membership.hpp"
#include "dlab/zoo.hpp"

namespace dlab {

/// Operator spec file: {"space": {"uniform": n} | {"weights": [...]}, "kind": ..., <parameters>}.
/// The operator fields may also sit under an "operator" key.
struct OperatorFile {
  MeasureSpace space;
  OperatorSpec spec;
};

/// All parsers throw Errc::spec on malformed input.
MeasureSpace parse_space(std::string_view json_text);
OperatorSpec parse_operator_spec(std::string_view json_text);
OperatorFile parse_operator_file(std::string_view json_text);
OperatorFile load_operator_file(const std::string& path);

/// x rounded to 12 significant digits.
double round12(double x);
/// printf("%.12g").
std::string format12(double x);

/// Compact JSON, numbers rounded to 12 significant digits, keys in fixed order.
std::string to_json(const MembershipReport& report);
std::string to_json(const DefectCertificate& cert);
std::string to_json(const RefineResult& result);

}  // namespace dlab
