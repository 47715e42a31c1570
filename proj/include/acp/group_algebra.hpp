#pragma once

#include <cstdint>
#include <vector>

#include "acp/acp_verify.hpp"
#include "acp/dilation.hpp"
#include "acp/radon_nikodym.hpp"

namespace acp {

// f = sum_g f(g) delta_g in C[G]; coefficient vector of length n.
using AlgebraElement = std::vector<cx>;

// phi~(f) = sum_g f(g) phi(g)
CMatrix eval_extended_map(const OperatorMap& phi, const AlgebraElement& f);

// pi~(f) = sum_g f(g) pi(g)
CMatrix eval_extended_rep(const DilationTriple& t, const AlgebraElement& f);

// alpha~(f) = f compose alpha
AlgebraElement alpha_tilde(const AlgebraElement& f, const Involution& alpha);

// (f * h)(g) = sum_{g1 g2 = g} f(g1) h(g2)
AlgebraElement convolve(const FiniteGroup& g, const AlgebraElement& f, const AlgebraElement& h);

// f#(g) = conj(f(g^-1))
AlgebraElement star(const FiniteGroup& g, const AlgebraElement& f);

struct CorrespondenceReport {
  double max_residual = 0.0;
  int samples = 0;
  bool ok = false;
};

// Checks psi~(f) = V* T pi~(f) V on seeded random algebra elements, with
// psi recovered from the certificate as phi_T. This is the finite-group
// content of the Radon-Nikodym correspondence between G and C[G].
CorrespondenceReport rn_correspondence_check(const DilationTriple& t_phi,
                                             const RnCertificate& cert, int samples,
                                             std::uint64_t seed, const Tolerance& tol = {});

}  // namespace acp
