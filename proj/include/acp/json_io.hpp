#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "acp/acp_verify.hpp"
#include "acp/dilation.hpp"
#include "acp/group.hpp"
#include "acp/numerics.hpp"

namespace acp {

using json = nlohmann::json;

// Complex numbers are [re, im] pairs; matrices are row-major nested arrays.
// Schemas live in docs/schema.

json complex_to_json(const cx& z);
cx complex_from_json(const json& j);

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json group_to_json(const FiniteGroup& g, const Involution& alpha);

// One problem instance as consumed by the CLI: group + alpha + d + phi,
// optionally a second map psi, a candidate triple, tolerance overrides and
// a seed.
struct ProblemInstance {
  FiniteGroup group;
  Involution alpha;
  std::size_t d = 0;
  OperatorMap phi;
  std::optional<OperatorMap> psi;
  std::optional<Quadruple> triple;
  Tolerance tol;
  std::uint64_t seed = 0;
};

// Throws Error("ParseError", ...) on malformed input; validation failures
// surface with the violated axiom as the code.
ProblemInstance instance_from_json(const json& j);
ProblemInstance load_instance(const std::string& path);

json triple_to_json(const DilationTriple& t, bool emit_matrices);
json acp_report_to_json(const AcpReport& rep, bool emit_matrices);

}  // namespace acp
