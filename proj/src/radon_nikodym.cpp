#include "acp/radon_nikodym.hpp"

#include <algorithm>
#include <cmath>

#include "acp/error.hpp"

namespace acp {

namespace {

double commutation_residual(const CMatrix& t, const std::vector<CMatrix>& pi, const CMatrix& j) {
  double r = j.rows() ? max_abs_diff(t * j, j * t) : 0.0;
  for (const auto& p : pi) r = std::max(r, max_abs_diff(t * p, p * t));
  return r;
}

// Hermitian m x m matrices <-> real parameter vectors of length m^2:
// diagonal first, then (re, im) per upper off-diagonal pair in row-major
// order. The parameterization keeps reconstructed matrices exactly Hermitian.
std::size_t param_count(std::size_t m) { return m * m; }

CMatrix params_to_hermitian(const std::vector<double>& theta, std::size_t m) {
  CMatrix t(m, m);
  for (std::size_t i = 0; i < m; ++i) t(i, i) = cx(theta[i], 0.0);
  std::size_t k = m;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      t(i, j) = cx(theta[k], theta[k + 1]);
      t(j, i) = std::conj(t(i, j));
      k += 2;
    }
  return t;
}

std::vector<double> hermitian_to_params(const CMatrix& t) {
  const std::size_t m = t.rows();
  std::vector<double> theta(param_count(m), 0.0);
  for (std::size_t i = 0; i < m; ++i) theta[i] = t(i, i).real();
  std::size_t k = m;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      theta[k] = t(i, j).real();
      theta[k + 1] = t(i, j).imag();
      k += 2;
    }
  return theta;
}

}  // namespace

OperatorMap phi_t(const DilationTriple& t, const CMatrix& commutant_element, const Tolerance& tol) {
  const std::size_t m = t.rank;
  if (commutant_element.rows() != m || commutant_element.cols() != m)
    fail("DimensionMismatch", "phi_t: commutant element has the wrong size");

  const double threshold = 100.0 * tol.eps_eq * std::max(t.scale, commutant_element.max_norm());
  if (commutant_element.hermitian_deviation() > threshold)
    fail("ConstraintViolated", "positivity: element is not Hermitian");
  if (!psd_check(hermitian_part(commutant_element), tol).is_psd)
    fail("ConstraintViolated", "positivity: element is not PSD");
  const double comm = commutation_residual(commutant_element, t.pi, t.krein.j);
  if (comm > threshold)
    fail("ConstraintViolated", "commutant: element does not commute with pi(G) and J");

  std::vector<CMatrix> mats;
  mats.reserve(t.group.n);
  for (std::size_t g = 0; g < t.group.n; ++g)
    mats.push_back(t.v.adjoint() * commutant_element * t.pi[g] * t.v);
  return make_operator_map(t.group, t.alpha, t.d, std::move(mats));
}

CommutantConstraint commutant_basis(const DilationTriple& t, const Tolerance& tol) {
  const std::size_t m = t.rank;
  const std::size_t params = param_count(m);
  CommutantConstraint out;
  if (m == 0) return out;

  // One row block per constraint matrix X: vec_re/vec_im of (B_p X - X B_p)
  // stacked over the parameter basis B_p.
  std::vector<const CMatrix*> constraints;
  for (const auto& p : t.pi) constraints.push_back(&p);
  constraints.push_back(&t.krein.j);

  const std::size_t rows = constraints.size() * 2 * m * m;
  CMatrix c(rows, params);
  for (std::size_t p = 0; p < params; ++p) {
    std::vector<double> theta(params, 0.0);
    theta[p] = 1.0;
    CMatrix basis = params_to_hermitian(theta, m);
    std::size_t row = 0;
    for (const CMatrix* x : constraints) {
      CMatrix k = basis * (*x) - (*x) * basis;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          c(row++, p) = cx(k(i, j).real(), 0.0);
          c(row++, p) = cx(k(i, j).imag(), 0.0);
        }
    }
  }

  CMatrix gram = c.adjoint() * c;
  const EigResult eig = herm_eig(hermitian_part(gram), tol);
  const double lmax = std::max(0.0, eig.values.back());
  const double cutoff = tol.eps_rank * std::max(1.0, lmax);
  for (std::size_t j = 0; j < params; ++j) {
    if (eig.values[j] > cutoff) continue;
    std::vector<double> theta(params);
    for (std::size_t i = 0; i < params; ++i) theta[i] = eig.vectors(i, j).real();
    out.basis.push_back(params_to_hermitian(theta, m));
  }
  return out;
}

IntertwinerResult intertwiner(const DilationTriple& t_phi, const DilationTriple& t_psi,
                              const Tolerance& tol) {
  IntertwinerResult out;
  if (!(t_phi.group == t_psi.group) || !(t_phi.alpha == t_psi.alpha) || t_phi.d != t_psi.d)
    fail("DimensionMismatch", "intertwiner: triples live on different (G, alpha, d)");

  const std::size_t big = t_phi.group.n * t_phi.d;
  CMatrix kernel_proj = CMatrix::identity(big) - t_phi.e_pinv * t_phi.e;
  const double leak = spectral_norm(t_psi.e * kernel_proj, tol);
  const double lambda_psi = spectral_norm(t_psi.e, tol);
  const double gate = std::sqrt(100.0 * tol.eps_rank * std::max(1.0, lambda_psi * lambda_psi));
  out.residuals["kernel_leak"] = leak;
  if (leak > gate) {
    out.reason = "KernelNotContained";
    return out;
  }

  out.s = t_psi.e * t_phi.e_pinv;

  const double scale = std::max(t_phi.scale, t_psi.scale);
  const double threshold = 100.0 * tol.eps_eq * std::max(scale, out.s.max_norm());
  auto record = [&](const std::string& name, double value) {
    out.residuals[name] = value;
    if (value > threshold && out.reason.empty())
      out.reason = name + " residual " + std::to_string(value);
  };

  double pi_resid = 0.0;
  for (std::size_t g = 0; g < t_phi.group.n; ++g)
    pi_resid = std::max(pi_resid, max_abs_diff(out.s * t_phi.pi[g], t_psi.pi[g] * out.s));
  record("pi_intertwining", pi_resid);
  record("v_match", max_abs_diff(out.s * t_phi.v, t_psi.v));
  record("j_intertwining", max_abs_diff(out.s * t_phi.krein.j, t_psi.krein.j * out.s));

  out.ok = out.reason.empty();
  return out;
}

RnResult rn_derivative(const DilationTriple& t_phi, const DilationTriple& t_psi,
                       const Tolerance& tol) {
  RnResult out;
  IntertwinerResult s = intertwiner(t_phi, t_psi, tol);
  if (!s.ok) {
    out.status = RnStatus::KernelNotContained;
    out.reason = s.reason;
    return out;
  }

  RnCertificate cert;
  cert.s = s.s;
  cert.t = s.s.adjoint() * s.s;
  cert.residuals = s.residuals;

  const double scale = std::max({t_phi.scale, t_psi.scale, cert.t.max_norm()});
  const double threshold = 100.0 * tol.eps_eq * scale;

  cert.residuals["commutation"] = commutation_residual(cert.t, t_phi.pi, t_phi.krein.j);
  const PsdReport psd = psd_check(hermitian_part(cert.t), tol);
  cert.residuals["lambda_min"] = psd.lambda_min;

  double reconstruction = 0.0;
  for (std::size_t g = 0; g < t_phi.group.n; ++g) {
    CMatrix lhs = t_phi.v.adjoint() * cert.t * t_phi.pi[g] * t_phi.v;
    CMatrix rhs = t_psi.v.adjoint() * t_psi.pi[g] * t_psi.v;
    reconstruction = std::max(reconstruction, max_abs_diff(lhs, rhs));
  }
  cert.residuals["reconstruction"] = reconstruction;

  if (!psd.is_psd || cert.residuals["commutation"] > threshold) {
    out.status = RnStatus::ReconstructionFailed;
    out.reason = "derived operator violates the commutant constraints";
    out.cert = std::move(cert);
    return out;
  }
  if (reconstruction > threshold) {
    out.status = RnStatus::ReconstructionFailed;
    out.reason = "phi_T does not reproduce psi; domination inconclusive";
    out.cert = std::move(cert);
    return out;
  }

  // Constructive uniqueness: inside the commutant the affine system
  // V* T' pi(g) V = psi(g) must have a 0-dimensional solution space, i.e.
  // the homogeneous map T' -> (V* T' pi(g) V)_g has trivial null space.
  const CommutantConstraint basis = commutant_basis(t_phi, tol);
  const std::size_t dim = basis.dimension();
  if (dim > 0) {
    const std::size_t n = t_phi.group.n;
    const std::size_t d = t_phi.d;
    CMatrix a(2 * n * d * d, dim);
    for (std::size_t k = 0; k < dim; ++k) {
      std::size_t row = 0;
      for (std::size_t g = 0; g < n; ++g) {
        CMatrix y = t_phi.v.adjoint() * basis.basis[k] * t_phi.pi[g] * t_phi.v;
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) {
            a(row++, k) = cx(y(i, j).real(), 0.0);
            a(row++, k) = cx(y(i, j).imag(), 0.0);
          }
      }
    }
    CMatrix gram = a.adjoint() * a;
    const EigResult eig = herm_eig(hermitian_part(gram), tol);
    const double lmax = std::max(0.0, eig.values.back());
    const double cutoff = tol.eps_rank * std::max(1.0, lmax);
    for (double lam : eig.values)
      if (lam <= cutoff) ++cert.uniqueness_nullity;
  }
  cert.unique = cert.uniqueness_nullity == 0;

  // hygiene: distance from T to its projection onto the commutant basis
  std::vector<double> theta = hermitian_to_params(hermitian_part(cert.t));
  std::vector<double> proj(theta.size(), 0.0);
  for (const auto& b : basis.basis) {
    const std::vector<double> bp = hermitian_to_params(b);
    double dot = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) dot += theta[i] * bp[i];
    for (std::size_t i = 0; i < theta.size(); ++i) proj[i] += dot * bp[i];
  }
  double proj_dev = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i)
    proj_dev = std::max(proj_dev, std::abs(theta[i] - proj[i]));
  cert.residuals["commutant_projection"] = proj_dev;

  out.status = RnStatus::Ok;
  out.cert = std::move(cert);
  return out;
}

RecoveryResult recover_dilation(const DilationTriple& t_phi, const RnCertificate& cert,
                                const Tolerance& tol) {
  const std::size_t m = t_phi.rank;
  const EigResult eig = herm_eig(hermitian_part(cert.t), tol);
  const double lmax = m == 0 ? 0.0 : std::max(0.0, eig.values.back());
  const double cutoff = tol.eps_rank * lmax;

  std::vector<std::size_t> kept;  // descending, matching range_factor's convention
  for (std::size_t j = m; j-- > 0;)
    if (eig.values[j] > cutoff && eig.values[j] > 0.0) kept.push_back(j);
  const std::size_t r = kept.size();

  CMatrix q_plus(m, r);
  std::vector<double> roots(r);
  for (std::size_t k = 0; k < r; ++k) {
    roots[k] = std::sqrt(eig.values[kept[k]]);  // below-cutoff noise already dropped
    for (std::size_t i = 0; i < m; ++i) q_plus(i, k) = eig.vectors(i, kept[k]);
  }

  RecoveryResult out;
  DilationTriple& rec = out.triple;
  rec.group = t_phi.group;
  rec.alpha = t_phi.alpha;
  rec.d = t_phi.d;
  rec.rank = r;
  rec.krein.m = r;
  rec.krein.j = q_plus.adjoint() * t_phi.krein.j * q_plus;
  for (const auto& p : t_phi.pi) rec.pi.push_back(q_plus.adjoint() * p * q_plus);
  // V = P T^(1/2) V_phi in support coordinates: Lambda^(1/2) Q+* V_phi
  CMatrix qv = q_plus.adjoint() * t_phi.v;
  rec.v = CMatrix(r, t_phi.d);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t c = 0; c < t_phi.d; ++c) rec.v(k, c) = roots[k] * qv(k, c);
  // quotient factor for downstream intertwiners: E_rec = Lambda^(1/2) Q+* E_phi
  CMatrix qe = q_plus.adjoint() * t_phi.e;
  rec.e = CMatrix(r, qe.cols());
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t c = 0; c < qe.cols(); ++c) rec.e(k, c) = roots[k] * qe(k, c);
  // full row rank, so the pseudo-inverse is e*(e e*)^-1
  CMatrix row_gram = rec.e * rec.e.adjoint();
  const EigResult ge = herm_eig(hermitian_part(row_gram), tol);
  CMatrix row_gram_inv(r, r);
  for (std::size_t k = 0; k < r; ++k) {
    const double w = 1.0 / ge.values[k];
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        row_gram_inv(i, j) += ge.vectors(i, k) * w * std::conj(ge.vectors(j, k));
  }
  rec.e_pinv = rec.e.adjoint() * row_gram_inv;
  rec.scale = t_phi.scale;
  for (const auto& p : rec.pi) rec.scale = std::max(rec.scale, spectral_norm(p, tol));

  // support projector must commute with pi(G) and J
  CMatrix proj = q_plus * q_plus.adjoint();
  rec.residuals["support_projector_commutation"] =
      commutation_residual(proj, t_phi.pi, t_phi.krein.j);

  // certify against the canonical construction of psi = phi_T
  OperatorMap psi = phi_t(t_phi, hermitian_part(cert.t), tol);
  const AcpReport psi_report = verify_acp(psi, tol);
  if (!psi_report.all_ok) fail("NotAcp", "recover_dilation: phi_T failed verification");
  DilationTriple canonical = construct_minimal(psi, psi_report, tol);
  out.equivalence = unitary_equivalence(rec, canonical, tol);
  return out;
}

UniformEquivalenceResult uniform_equiv_unitary(const DilationTriple& t_phi,
                                               const DilationTriple& t_psi,
                                               const Tolerance& tol) {
  UniformEquivalenceResult out;
  IntertwinerResult s1 = intertwiner(t_phi, t_psi, tol);
  if (!s1.ok) {
    out.reason = "NotUniformlyEquivalent: forward intertwiner failed (" + s1.reason + ")";
    return out;
  }
  IntertwinerResult s2 = intertwiner(t_psi, t_phi, tol);
  if (!s2.ok) {
    out.reason = "NotUniformlyEquivalent: reverse intertwiner failed (" + s2.reason + ")";
    return out;
  }
  if (t_phi.rank != t_psi.rank) {
    out.reason = "NotUniformlyEquivalent: rank mismatch";
    return out;
  }

  const std::size_t m = t_phi.rank;
  CMatrix t = s1.s.adjoint() * s1.s;
  const EigResult eig = herm_eig(hermitian_part(t), tol);
  const double lmax = m == 0 ? 0.0 : std::max(0.0, eig.values.back());
  if (m > 0 && eig.values.front() <= tol.eps_rank * lmax) {
    out.reason = "NotUniformlyEquivalent: Delta is singular";
    return out;
  }

  CMatrix t_invroot(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    const double w = 1.0 / std::sqrt(eig.values[k]);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        t_invroot(i, j) += eig.vectors(i, k) * w * std::conj(eig.vectors(j, k));
  }
  out.u = s1.s * t_invroot;

  const double scale = std::max(t_phi.scale, t_psi.scale);
  const double threshold = 100.0 * tol.eps_eq * scale;
  auto record = [&](const std::string& name, double value) {
    out.residuals[name] = value;
    if (value > threshold && out.reason.empty())
      out.reason = name + " residual " + std::to_string(value);
  };
  record("unitary_left", max_abs_diff(out.u.adjoint() * out.u, CMatrix::identity(m)));
  record("unitary_right", max_abs_diff(out.u * out.u.adjoint(), CMatrix::identity(m)));
  record("j_intertwining", max_abs_diff(out.u * t_phi.krein.j, t_psi.krein.j * out.u));
  record("v_match", max_abs_diff(out.u * t_phi.v, t_psi.v));
  double pi_resid = 0.0;
  for (std::size_t g = 0; g < t_phi.group.n; ++g)
    pi_resid = std::max(pi_resid, max_abs_diff(out.u * t_phi.pi[g], t_psi.pi[g] * out.u));
  record("pi_intertwining", pi_resid);

  out.ok = out.reason.empty();
  return out;
}

AffineReport affine_check(const DilationTriple& t_phi, const OperatorMap& psi1,
                          const OperatorMap& psi2, double t, const Tolerance& tol) {
  if (t < 0.0 || t > 1.0) fail("InvalidParameter", "affine_check: t must be in [0,1]");
  AffineReport out;

  auto delta_of = [&](const OperatorMap& psi) -> CMatrix {
    const AcpReport rep = verify_acp(psi, tol);
    if (!rep.all_ok) fail("NotAcp", "affine_check: input map is not alpha-CP");
    DilationTriple t_psi = construct_minimal(psi, rep, tol);
    RnResult rn = rn_derivative(t_phi, t_psi, tol);
    if (rn.status != RnStatus::Ok)
      fail("KernelNotContained", "affine_check: input map is not dominated by phi");
    return rn.cert->t;
  };

  const CMatrix delta1 = delta_of(psi1);
  const CMatrix delta2 = delta_of(psi2);
  const CMatrix delta_mix = delta_of(linear_combination(t, psi1, 1.0 - t, psi2));
  const CMatrix affine = t * delta1 + (1.0 - t) * delta2;
  out.deviation = max_abs_diff(delta_mix, affine);
  const double scale = std::max({1.0, delta1.max_norm(), delta2.max_norm()});
  out.ok = out.deviation <= 100.0 * tol.eps_eq * scale;

  // pre-order preservation at a scanned lambda (semi-decision)
  const DominationScan scan = find_domination_constant(psi1, psi2, 64.0, 64, tol);
  if (scan.status == DominationScan::Status::Found) {
    out.order_checked = true;
    out.order_lambda = scan.lambda;
    const PsdReport psd =
        psd_check(hermitian_part(scan.lambda * delta2 - delta1), tol);
    out.order_lambda_min = psd.lambda_min;
    out.order_ok = psd.is_psd;
  }
  return out;
}

}  // namespace acp
