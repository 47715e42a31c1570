#include "acp/acp_verify.hpp"

#include <algorithm>
#include <cmath>

#include "acp/error.hpp"

namespace acp {

double OperatorMap::max_norm() const {
  double m = 0.0;
  for (const auto& mat : mats) m = std::max(m, mat.max_norm());
  return m;
}

OperatorMap make_operator_map(FiniteGroup group, Involution alpha, std::size_t d,
                              std::vector<CMatrix> mats) {
  if (alpha.perm.size() != group.n) fail("DimensionMismatch", "involution length != group order");
  if (mats.size() != group.n) fail("DimensionMismatch", "need one matrix per group element");
  for (const auto& m : mats) {
    if (m.rows() != d || m.cols() != d) fail("DimensionMismatch", "operator map matrices must be d x d");
    if (!m.all_finite()) fail("InvalidParameter", "operator map has non-finite entries");
  }
  return {std::move(group), std::move(alpha), d, std::move(mats)};
}

static void require_compatible(const OperatorMap& x, const OperatorMap& y) {
  if (!(x.group == y.group) || !(x.alpha == y.alpha) || x.d != y.d)
    fail("DimensionMismatch", "operator maps live on different (G, alpha, d)");
}

OperatorMap linear_combination(double a, const OperatorMap& x, double b, const OperatorMap& y) {
  require_compatible(x, y);
  OperatorMap out = x;
  for (std::size_t g = 0; g < x.group.n; ++g) out.mats[g] = a * x.mats[g] + b * y.mats[g];
  return out;
}

OperatorMap scale_map(double a, const OperatorMap& x) {
  OperatorMap out = x;
  for (auto& m : out.mats) m *= cx(a, 0.0);
  return out;
}

GramMatrix gram_matrix(const OperatorMap& phi) {
  const std::size_t n = phi.group.n;
  const std::size_t d = phi.d;
  GramMatrix gm{n, d, CMatrix(n * d, n * d)};
  for (std::size_t i = 0; i < n; ++i) {
    const int row = phi.group.inverse(phi.alpha(static_cast<int>(i)));
    for (std::size_t j = 0; j < n; ++j)
      gm.flat.set_block(i * d, j * d, phi.at(phi.group.op(row, static_cast<int>(j))));
  }
  return gm;
}

GramMatrix translated_gram(const OperatorMap& phi, int g) {
  const std::size_t n = phi.group.n;
  const std::size_t d = phi.d;
  GramMatrix gm{n, d, CMatrix(n * d, n * d)};
  for (std::size_t i = 0; i < n; ++i) {
    const int gi = phi.group.op(g, static_cast<int>(i));
    const int row = phi.group.inverse(phi.alpha(gi));
    for (std::size_t j = 0; j < n; ++j) {
      const int gj = phi.group.op(g, static_cast<int>(j));
      gm.flat.set_block(i * d, j * d, phi.at(phi.group.op(row, gj)));
    }
  }
  return gm;
}

CMatrix correlation_matrix(const OperatorMap& phi) {
  const std::size_t n = phi.group.n;
  const std::size_t d = phi.d;
  CMatrix b(n * d, n * d);
  for (std::size_t i = 0; i < n; ++i) {
    CMatrix adj = phi.at(static_cast<int>(i)).adjoint();
    for (std::size_t j = 0; j < n; ++j) b.set_block(i * d, j * d, adj * phi.at(static_cast<int>(j)));
  }
  return b;
}

Cond1Result check_condition1(const OperatorMap& phi, const Tolerance& tol) {
  Cond1Result out;
  const std::size_t n = phi.group.n;
  const double scale = std::max(1.0, phi.max_norm());
  for (std::size_t g1 = 0; g1 < n; ++g1)
    for (std::size_t g2 = 0; g2 < n; ++g2) {
      const int prod = phi.group.op(static_cast<int>(g1), static_cast<int>(g2));
      const int twisted = phi.group.op(phi.alpha(static_cast<int>(g1)), phi.alpha(static_cast<int>(g2)));
      const double r = std::max(max_abs_diff(phi.at(twisted), phi.at(phi.alpha(prod))),
                                max_abs_diff(phi.at(phi.alpha(prod)), phi.at(prod)));
      out.max_residual = std::max(out.max_residual, r);
      if (r > tol.eps_eq * scale)
        out.witnesses.emplace_back(static_cast<int>(g1), static_cast<int>(g2));
    }
  out.ok = out.witnesses.empty();
  return out;
}

Cond2Result check_condition2(const OperatorMap& phi, const Tolerance& tol) {
  Cond2Result out;
  const GramMatrix gm = gram_matrix(phi);
  const double scale = std::max(1.0, gm.flat.max_norm());
  out.hermitian = gm.flat.hermitian_deviation() <= tol.eps_eq * scale;
  // the Hermitian-part eigenvalue is reported even when the Gram itself is
  // skewed (condition-1 failures), so the CLI can still show diagnostics
  const PsdReport rep = psd_check(hermitian_part(gm.flat), tol);
  out.lambda_min = rep.lambda_min;
  out.ok = out.hermitian && rep.is_psd;
  return out;
}

PencilResult check_condition3(const OperatorMap& phi, const Tolerance& tol) {
  return pencil_max(gram_matrix(phi).flat, correlation_matrix(phi), tol);
}

std::vector<PencilResult> check_condition4(const OperatorMap& phi, const Tolerance& tol) {
  const GramMatrix gm = gram_matrix(phi);
  std::vector<PencilResult> out(phi.group.n);
  for (std::size_t g = 0; g < phi.group.n; ++g) {
    if (static_cast<int>(g) == phi.group.e) {
      out[g] = {false, 1.0};  // gamma_e is gamma itself
      continue;
    }
    out[g] = pencil_max(gm.flat, translated_gram(phi, static_cast<int>(g)).flat, tol);
  }
  return out;
}

Remark22Result check_remark22(const OperatorMap& phi, const Tolerance& tol) {
  Remark22Result out;
  const std::size_t n = phi.group.n;
  const double scale = std::max(1.0, phi.max_norm());
  for (std::size_t g = 0; g < n; ++g) {
    const int gi = static_cast<int>(g);
    out.max_residual = std::max(out.max_residual, max_abs_diff(phi.at(phi.alpha(gi)), phi.at(gi)));
    out.max_residual = std::max(
        out.max_residual, max_abs_diff(phi.at(phi.group.inverse(gi)), phi.at(gi).adjoint()));
  }
  out.ok = out.max_residual <= tol.eps_eq * scale;
  return out;
}

AcpReport verify_acp(const OperatorMap& phi, const Tolerance& tol) {
  AcpReport rep;
  rep.gram = gram_matrix(phi);

  const Cond1Result c1 = check_condition1(phi, tol);
  rep.cond1_ok = c1.ok;
  rep.cond1_witnesses = c1.witnesses;
  rep.cond1_residual = c1.max_residual;

  const Cond2Result c2 = check_condition2(phi, tol);
  rep.gram_hermitian = c2.hermitian;
  rep.lambda_min = c2.lambda_min;
  rep.cond2_ok = rep.cond1_ok && c2.ok;

  if (rep.cond1_ok && rep.cond2_ok) {
    rep.conds34_evaluated = true;
    rep.k_min = check_condition3(phi, tol);
    rep.cond3_ok = !rep.k_min.unbounded;
    rep.m_min = check_condition4(phi, tol);
    rep.cond4_ok = true;
    for (const auto& m : rep.m_min) rep.cond4_ok = rep.cond4_ok && !m.unbounded;
    const Remark22Result r22 = check_remark22(phi, tol);
    rep.remark22_ok = r22.ok;
    rep.remark22_residual = r22.max_residual;
  }

  rep.all_ok = rep.cond1_ok && rep.cond2_ok && rep.cond3_ok && rep.cond4_ok && rep.remark22_ok;
  return rep;
}

bool dominates(const OperatorMap& psi, const OperatorMap& phi, double lambda,
               const Tolerance& tol) {
  if (lambda <= 0.0) fail("InvalidParameter", "dominates: lambda must be positive");
  return verify_acp(linear_combination(lambda, phi, -1.0, psi), tol).all_ok;
}

DominationScan find_domination_constant(const OperatorMap& psi, const OperatorMap& phi,
                                        double lambda_max, int steps, const Tolerance& tol) {
  require_compatible(psi, phi);
  DominationScan out;

  const CMatrix gram_phi = gram_matrix(phi).flat;
  const CMatrix gram_psi = gram_matrix(psi).flat;
  const PencilResult lower = pencil_max(gram_phi, gram_psi, tol);
  if (lower.unbounded) {
    out.status = DominationScan::Status::Unbounded;
    return out;
  }
  out.lambda_lower = lower.k_min;

  // lambda_lower == 0 happens only for psi == 0, which any lambda dominates
  const double start = lower.k_min > 0.0 ? lower.k_min : 1.0;
  if (start > lambda_max || steps < 1) return out;
  const double delta = (lambda_max / start - 1.0) / steps;
  for (int k = 0; k <= steps; ++k) {
    const double lambda = start * (1.0 + k * delta);
    if (dominates(psi, phi, lambda, tol)) {
      out.status = DominationScan::Status::Found;
      out.lambda = lambda;
      return out;
    }
  }
  return out;
}

}  // namespace acp
