#include "acp/json_io.hpp"

#include <fstream>

#include "acp/error.hpp"

namespace acp {

json complex_to_json(const cx& z) { return json::array({z.real(), z.imag()}); }

cx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail("ParseError", "complex numbers are [re, im] pairs, got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) fail("ParseError", "matrix must be an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) fail("ParseError", "matrix rows must be arrays");
    cols = j[0].size();
  }
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail("ParseError", "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

json group_to_json(const FiniteGroup& g, const Involution& alpha) {
  json mul = json::array();
  for (std::size_t r = 0; r < g.n; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < g.n; ++c) row.push_back(g.mul[r * g.n + c]);
    mul.push_back(std::move(row));
  }
  return json{{"n", g.n}, {"mul", mul}, {"e", g.e}, {"inv", g.inv}, {"alpha", alpha.perm}};
}

namespace {

const json& require(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) fail("ParseError", "missing field '" + key + "'");
  return j.at(key);
}

std::vector<int> int_vector(const json& j, const std::string& what) {
  if (!j.is_array()) fail("ParseError", what + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) fail("ParseError", what + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<CMatrix> mats_from_json(const json& j, std::size_t n, const std::string& what) {
  if (!j.is_object()) fail("ParseError", what + " must be an object keyed by element index");
  std::vector<CMatrix> mats(n);
  std::vector<bool> seen(n, false);
  for (const auto& [key, value] : j.items()) {
    std::size_t g = 0;
    try {
      g = std::stoul(key);
    } catch (...) {
      fail("ParseError", what + ": key '" + key + "' is not an element index");
    }
    if (g >= n) fail("ParseError", what + ": element index " + key + " out of range");
    mats[g] = matrix_from_json(value);
    seen[g] = true;
  }
  for (std::size_t g = 0; g < n; ++g)
    if (!seen[g]) fail("ParseError", what + ": missing matrix for element " + std::to_string(g));
  return mats;
}

}  // namespace

ProblemInstance instance_from_json(const json& j) {
  ProblemInstance inst;

  const json& jg = require(j, "group");
  const json& jmul = require(jg, "mul");
  if (!jmul.is_array()) fail("ParseError", "group.mul must be an array of rows");
  std::vector<std::vector<int>> mul;
  for (const auto& row : jmul) mul.push_back(int_vector(row, "group.mul row"));
  const int e = require(jg, "e").get<int>();
  const std::vector<int> inverse = int_vector(require(jg, "inv"), "group.inv");
  if (jg.contains("n") && jg.at("n").get<std::size_t>() != mul.size())
    fail("ParseError", "group.n disagrees with the Cayley table size");

  GroupValidation gv = validate_group(mul, e, inverse);
  if (!gv.ok()) fail(gv.violations.front().axiom, "group validation failed");
  inst.group = *gv.group;

  InvolutionValidation iv =
      validate_involution(inst.group, int_vector(require(jg, "alpha"), "group.alpha"));
  if (!iv.ok()) fail(iv.violations.front().axiom, "involution validation failed");
  inst.alpha = *iv.involution;

  inst.d = require(j, "d").get<std::size_t>();
  if (inst.d < 1) fail("ParseError", "d must be >= 1");
  inst.phi = make_operator_map(inst.group, inst.alpha, inst.d,
                               mats_from_json(require(j, "mats"), inst.group.n, "mats"));

  if (j.contains("psi_mats"))
    inst.psi = make_operator_map(inst.group, inst.alpha, inst.d,
                                 mats_from_json(j.at("psi_mats"), inst.group.n, "psi_mats"));

  if (j.contains("triple")) {
    const json& jt = j.at("triple");
    Quadruple q;
    q.krein.j = matrix_from_json(require(jt, "J"));
    q.krein.m = q.krein.j.rows();
    q.v = matrix_from_json(require(jt, "V"));
    const json& jpi = require(jt, "pi");
    if (!jpi.is_object()) fail("ParseError", "triple.pi must be an object keyed by element index");
    for (const auto& [key, value] : jpi.items()) {
      std::int64_t g = 0;
      try {
        g = std::stoll(key);
      } catch (...) {
        fail("ParseError", "triple.pi: bad element key '" + key + "'");
      }
      q.pi_at[g] = matrix_from_json(value);
    }
    inst.triple = std::move(q);
  }

  if (j.contains("tolerances")) {
    const json& jt = j.at("tolerances");
    if (jt.contains("eps_psd")) inst.tol.eps_psd = jt.at("eps_psd").get<double>();
    if (jt.contains("eps_eq")) inst.tol.eps_eq = jt.at("eps_eq").get<double>();
    if (jt.contains("eps_rank")) inst.tol.eps_rank = jt.at("eps_rank").get<double>();
    if (inst.tol.eps_psd <= 0 || inst.tol.eps_eq <= 0 || inst.tol.eps_rank <= 0)
      fail("ParseError", "tolerances must be strictly positive");
  }
  if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
  return inst;
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("ParseError", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    fail("ParseError", std::string("invalid JSON in ") + path + ": " + ex.what());
  }
  return instance_from_json(j);
}

json triple_to_json(const DilationTriple& t, bool emit_matrices) {
  json out{{"m", t.rank}, {"residuals", t.residuals}};
  if (emit_matrices) {
    out["J"] = matrix_to_json(t.krein.j);
    out["V"] = matrix_to_json(t.v);
    out["E"] = matrix_to_json(t.e);
    json pi = json::object();
    for (std::size_t g = 0; g < t.pi.size(); ++g) pi[std::to_string(g)] = matrix_to_json(t.pi[g]);
    out["pi"] = std::move(pi);
  }
  return out;
}

json acp_report_to_json(const AcpReport& rep, bool emit_matrices) {
  json verdicts{{"acp", rep.all_ok},          {"cond1", rep.cond1_ok},
                {"cond2", rep.cond2_ok},      {"cond3", rep.cond3_ok},
                {"cond4", rep.cond4_ok},      {"remark22", rep.remark22_ok},
                {"gram_hermitian", rep.gram_hermitian}};

  json constants = json::object();
  if (rep.conds34_evaluated) {
    constants["K_min"] = rep.k_min.unbounded ? json("unbounded") : json(rep.k_min.k_min);
    json m = json::array();
    for (const auto& v : rep.m_min) m.push_back(v.unbounded ? json("unbounded") : json(v.k_min));
    constants["M_min"] = std::move(m);
  }

  json witnesses = json::array();
  for (const auto& [g1, g2] : rep.cond1_witnesses) witnesses.push_back(json::array({g1, g2}));

  json out{{"verdicts", std::move(verdicts)},
           {"constants", std::move(constants)},
           {"lambda_min", rep.lambda_min},
           {"residuals",
            {{"cond1", rep.cond1_residual}, {"remark22", rep.remark22_residual}}},
           {"witnesses", std::move(witnesses)}};
  if (emit_matrices) out["gram"] = matrix_to_json(rep.gram.flat);
  return out;
}

}  // namespace acp
