#pragma once

#include <string>
#include <vector>

#include "acp/acp_verify.hpp"
#include "acp/group.hpp"

namespace fixtures {

using namespace acp;

inline CMatrix scalar(double re, double im = 0.0) {
  CMatrix m(1, 1);
  m(0, 0) = cx(re, im);
  return m;
}

inline OperatorMap scalar_map(const FiniteGroup& g, const Involution& alpha,
                              const std::vector<cx>& values) {
  std::vector<CMatrix> mats;
  for (const auto& v : values) {
    CMatrix m(1, 1);
    m(0, 0) = v;
    mats.push_back(m);
  }
  return make_operator_map(g, alpha, 1, std::move(mats));
}

// trivial group, d = 2, phi(e) = [[2, i], [-i, 2]] (eigenvalues 1 and 3)
inline OperatorMap trivial_d2() {
  FiniteGroup g = cyclic_group(1);
  CMatrix m(2, 2);
  m(0, 0) = cx(2, 0);
  m(0, 1) = cx(0, 1);
  m(1, 0) = cx(0, -1);
  m(1, 1) = cx(2, 0);
  return make_operator_map(g, identity_involution(g), 2, {m});
}

// Z2, alpha = id, phi = (1, 1): rank-1 all-ones Gram
inline OperatorMap z2_allones() {
  FiniteGroup g = cyclic_group(2);
  return scalar_map(g, identity_involution(g), {cx(1, 0), cx(1, 0)});
}

// Z3, alpha = id, phi = (1, t, t): circulant Gram, eigenvalues (1+2t, 1-t, 1-t)
inline OperatorMap z3_family(double t) {
  FiniteGroup g = cyclic_group(3);
  return scalar_map(g, identity_involution(g), {cx(1, 0), cx(t, 0), cx(t, 0)});
}

// Z3, alpha = -id, phi = (1, t, t): the twisted Gram is phi(i+j),
// eigenvalues (1+2t, 1-t, t-1); alpha-CP only at t = 1
inline OperatorMap z3_neg_family(double t) {
  FiniteGroup g = cyclic_group(3);
  return scalar_map(g, inverse_involution(g), {cx(1, 0), cx(t, 0), cx(t, 0)});
}

// Z3, alpha = -id, phi(k) = omega^k: fails condition (1) at witness (1,1)
inline OperatorMap z3_omega() {
  FiniteGroup g = cyclic_group(3);
  const double c = -0.5, s = std::sqrt(3.0) / 2.0;
  return scalar_map(g, inverse_involution(g), {cx(1, 0), cx(c, s), cx(c, -s)});
}

// Z4, alpha = -id, scalar phi = (2, 1, 2, 1): rank-2 Gram, nontrivial kernel
inline OperatorMap z4_neg_scalar() {
  FiniteGroup g = cyclic_group(4);
  return scalar_map(g, inverse_involution(g), {cx(2, 0), cx(1, 0), cx(2, 0), cx(1, 0)});
}

// Z4, alpha = -id, d = 2: phi = (A0, A1, A0, A1) with A0 +- A1 both PSD
inline OperatorMap z4_neg_d2() {
  FiniteGroup g = cyclic_group(4);
  CMatrix a0(2, 2), a1(2, 2);
  a0(0, 0) = cx(2, 0);
  a0(1, 1) = cx(2, 0);
  a1(0, 0) = cx(1, 0);
  a1(0, 1) = cx(1, 0);
  a1(1, 0) = cx(1, 0);
  return make_operator_map(g, inverse_involution(g), 2, {a0, a1, a0, a1});
}

// dihedral(3), alpha = id, phi = character of the 2-dim irrep:
// (2, -1, -1, 0, 0, 0) over (e, r, r^2, s, sr, sr^2); Gram rank 4, K_min = 2
inline OperatorMap dihedral3_character() {
  FiniteGroup g = dihedral_group(3);
  return scalar_map(g, identity_involution(g),
                    {cx(2, 0), cx(-1, 0), cx(-1, 0), cx(0, 0), cx(0, 0), cx(0, 0)});
}

struct Fixture {
  std::string name;
  OperatorMap map;
};

// Every alpha-CP fixture exercised by the acceptance suite.
inline std::vector<Fixture> acp_fixtures() {
  std::vector<Fixture> out;
  out.push_back({"trivial_d2", trivial_d2()});
  out.push_back({"z2_allones", z2_allones()});
  out.push_back({"z3_t0", z3_family(0.0)});
  out.push_back({"z3_t025", z3_family(0.25)});
  out.push_back({"z3_t05", z3_family(0.5)});
  out.push_back({"z3_t1", z3_family(1.0)});
  out.push_back({"z3_neg_allones", z3_neg_family(1.0)});
  out.push_back({"z4_neg_scalar", z4_neg_scalar()});
  out.push_back({"z4_neg_d2", z4_neg_d2()});
  out.push_back({"dihedral3_character", dihedral3_character()});
  return out;
}

}  // namespace fixtures
