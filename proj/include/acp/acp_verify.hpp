#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "acp/cmatrix.hpp"
#include "acp/group.hpp"
#include "acp/numerics.hpp"

namespace acp {

// A map phi: G -> L(H) as one d x d matrix per group element.
struct OperatorMap {
  FiniteGroup group;
  Involution alpha;
  std::size_t d = 0;
  std::vector<CMatrix> mats;

  const CMatrix& at(int g) const { return mats[g]; }
  double max_norm() const;
};

OperatorMap make_operator_map(FiniteGroup group, Involution alpha, std::size_t d,
                              std::vector<CMatrix> mats);

// a*x + b*y over the same (G, alpha, d). Throws DimensionMismatch.
OperatorMap linear_combination(double a, const OperatorMap& x, double b, const OperatorMap& y);
OperatorMap scale_map(double a, const OperatorMap& x);

// Full-tuple Gram: block(i,j) = phi(alpha(g_i)^-1 g_j), one block per element pair.
struct GramMatrix {
  std::size_t n = 0, d = 0;
  CMatrix flat;  // (n*d) x (n*d)

  CMatrix block(int i, int j) const { return flat.block(i * d, j * d, d, d); }
};

GramMatrix gram_matrix(const OperatorMap& phi);

// block(i,j) = phi(alpha(g*g_i)^-1 (g*g_j)); equals the block-permutation
// congruence of gram_matrix(phi) by left translation with g.
GramMatrix translated_gram(const OperatorMap& phi, int g);

// block(i,j) = phi(g_i)* phi(g_j); PSD by construction.
CMatrix correlation_matrix(const OperatorMap& phi);

struct Cond1Result {
  bool ok = false;
  std::vector<std::pair<int, int>> witnesses;  // failing (g1, g2)
  double max_residual = 0.0;
};

struct Cond2Result {
  bool ok = false;
  bool hermitian = false;
  double lambda_min = 0.0;
};

struct Remark22Result {
  bool ok = false;
  double max_residual = 0.0;
};

Cond1Result check_condition1(const OperatorMap& phi, const Tolerance& tol = {});
Cond2Result check_condition2(const OperatorMap& phi, const Tolerance& tol = {});
PencilResult check_condition3(const OperatorMap& phi, const Tolerance& tol = {});
std::vector<PencilResult> check_condition4(const OperatorMap& phi, const Tolerance& tol = {});
// phi(alpha(g)) = phi(g) and phi(g^-1) = phi(g)* for all g
Remark22Result check_remark22(const OperatorMap& phi, const Tolerance& tol = {});

struct AcpReport {
  bool cond1_ok = false;
  bool cond2_ok = false;
  bool cond3_ok = false;
  bool cond4_ok = false;
  bool remark22_ok = false;
  bool all_ok = false;
  bool conds34_evaluated = false;  // false when short-circuited by (1)/(2)

  PencilResult k_min;               // Def 2.1(3) constant over the full tuple
  std::vector<PencilResult> m_min;  // Def 2.1(4) constants, m_min[e] = 1

  GramMatrix gram;  // always populated, for diagnostics
  bool gram_hermitian = false;
  double lambda_min = 0.0;  // of the Hermitian part of the Gram

  std::vector<std::pair<int, int>> cond1_witnesses;
  double cond1_residual = 0.0;
  double remark22_residual = 0.0;
};

AcpReport verify_acp(const OperatorMap& phi, const Tolerance& tol = {});

// psi <= lambda * phi in the alpha-CP order: verify_acp(lambda*phi - psi).
bool dominates(const OperatorMap& psi, const OperatorMap& phi, double lambda,
               const Tolerance& tol = {});

struct DominationScan {
  enum class Status { Found, Unbounded, NotFound };
  Status status = Status::NotFound;
  double lambda = 0.0;        // valid when Found
  double lambda_lower = 0.0;  // Gram-pencil lower bound
};

// Semi-decision: grid scan upward from the Gram-pencil lower bound. NotFound
// is inconclusive; Unbounded (kernel mismatch) is a definitive no.
DominationScan find_domination_constant(const OperatorMap& psi, const OperatorMap& phi,
                                        double lambda_max, int steps, const Tolerance& tol = {});

}  // namespace acp
