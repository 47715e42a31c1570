#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acp/acp_verify.hpp"
#include "acp/dilation.hpp"

namespace acp {

// phi_T(g) = V* T pi(g) V for T >= 0 in the commutant of pi(G) commuting
// with J. Constraint violations throw ConstraintViolated.
OperatorMap phi_t(const DilationTriple& t, const CMatrix& commutant_element,
                  const Tolerance& tol = {});

// Real-linear basis of {T : T = T*, T pi(g) = pi(g) T for all g, TJ = JT},
// orthonormal in the Hermitian parameterization; deterministic ordering.
struct CommutantConstraint {
  std::vector<CMatrix> basis;
  std::size_t dimension() const { return basis.size(); }
};

CommutantConstraint commutant_basis(const DilationTriple& t, const Tolerance& tol = {});

struct IntertwinerResult {
  bool ok = false;
  CMatrix s;  // m_psi x m_phi with S pi_phi(g) V_phi = pi_psi(g) V_psi
  std::map<std::string, double> residuals;
  std::string reason;
};

// S = E_psi E_phi^+; fails with KernelNotContained when ker(Gamma_phi) is
// not killed by E_psi (then psi is definitively not uniformly dominated).
IntertwinerResult intertwiner(const DilationTriple& t_phi, const DilationTriple& t_psi,
                              const Tolerance& tol = {});

enum class RnStatus { Ok, KernelNotContained, ReconstructionFailed };

struct RnCertificate {
  CMatrix t;  // Delta_phi(psi), m_phi x m_phi
  CMatrix s;  // the intertwiner
  std::map<std::string, double> residuals;
  bool unique = false;
  std::size_t uniqueness_nullity = 0;
};

struct RnResult {
  RnStatus status = RnStatus::KernelNotContained;
  std::optional<RnCertificate> cert;
  std::string reason;
};

// T = S*S with full certification: positivity, commutation with pi and J,
// reconstruction psi(g) = V* T pi(g) V, and constructive uniqueness (the
// affine reconstruction system has a 0-dimensional solution space inside
// the commutant). ReconstructionFailed means domination is inconclusive.
RnResult rn_derivative(const DilationTriple& t_phi, const DilationTriple& t_psi,
                       const Tolerance& tol = {});

struct RecoveryResult {
  DilationTriple triple;
  EquivalenceResult equivalence;  // against construct_minimal(phi_T)
};

// Remark-3.4 recovery: restrict (pi_phi, J_phi) to the support of T and take
// V = P T^(1/2) V_phi; certified unitarily equivalent to the minimal
// construction of psi = phi_T.
RecoveryResult recover_dilation(const DilationTriple& t_phi, const RnCertificate& cert,
                                const Tolerance& tol = {});

struct UniformEquivalenceResult {
  bool ok = false;
  CMatrix u;
  std::map<std::string, double> residuals;
  std::string reason;
};

// Proposition-3.5 unitary U = S1 T^(-1/2); requires both intertwiners to
// exist and T to be invertible at the eps_rank scale.
UniformEquivalenceResult uniform_equiv_unitary(const DilationTriple& t_phi,
                                               const DilationTriple& t_psi,
                                               const Tolerance& tol = {});

struct AffineReport {
  double deviation = 0.0;  // || Delta(t psi1 + (1-t) psi2) - t Delta1 - (1-t) Delta2 ||_max
  bool ok = false;
  bool order_checked = false;   // a lambda with psi1 <= lambda psi2 was found
  double order_lambda = 0.0;
  double order_lambda_min = 0.0;  // lambda_min(lambda Delta2 - Delta1)
  bool order_ok = false;
};

// Theorem-3.6 affinity check with both sides computed through independent
// pipelines, plus pre-order preservation at a scanned lambda.
AffineReport affine_check(const DilationTriple& t_phi, const OperatorMap& psi1,
                          const OperatorMap& psi2, double t, const Tolerance& tol = {});

}  // namespace acp
