#include "acp/group_algebra.hpp"

#include <algorithm>

#include "acp/error.hpp"
#include "acp/rng.hpp"

namespace acp {

CMatrix eval_extended_map(const OperatorMap& phi, const AlgebraElement& f) {
  if (f.size() != phi.group.n) fail("DimensionMismatch", "eval_extended_map");
  CMatrix out(phi.d, phi.d);
  for (std::size_t g = 0; g < f.size(); ++g) out += f[g] * phi.at(static_cast<int>(g));
  return out;
}

CMatrix eval_extended_rep(const DilationTriple& t, const AlgebraElement& f) {
  if (f.size() != t.group.n) fail("DimensionMismatch", "eval_extended_rep");
  CMatrix out(t.rank, t.rank);
  for (std::size_t g = 0; g < f.size(); ++g) out += f[g] * t.pi[g];
  return out;
}

AlgebraElement alpha_tilde(const AlgebraElement& f, const Involution& alpha) {
  if (f.size() != alpha.perm.size()) fail("DimensionMismatch", "alpha_tilde");
  AlgebraElement out(f.size());
  for (std::size_t g = 0; g < f.size(); ++g) out[g] = f[alpha(static_cast<int>(g))];
  return out;
}

AlgebraElement convolve(const FiniteGroup& g, const AlgebraElement& f, const AlgebraElement& h) {
  if (f.size() != g.n || h.size() != g.n) fail("DimensionMismatch", "convolve");
  AlgebraElement out(g.n, cx(0.0, 0.0));
  for (std::size_t a = 0; a < g.n; ++a)
    for (std::size_t b = 0; b < g.n; ++b)
      out[g.op(static_cast<int>(a), static_cast<int>(b))] += f[a] * h[b];
  return out;
}

AlgebraElement star(const FiniteGroup& g, const AlgebraElement& f) {
  if (f.size() != g.n) fail("DimensionMismatch", "star");
  AlgebraElement out(g.n);
  for (std::size_t a = 0; a < g.n; ++a) out[a] = std::conj(f[g.inverse(static_cast<int>(a))]);
  return out;
}

CorrespondenceReport rn_correspondence_check(const DilationTriple& t_phi,
                                             const RnCertificate& cert, int samples,
                                             std::uint64_t seed, const Tolerance& tol) {
  CorrespondenceReport rep;
  rep.samples = samples;

  // psi(g) = V* T pi(g) V is what the certificate reconstructs
  std::vector<CMatrix> psi;
  psi.reserve(t_phi.group.n);
  for (std::size_t g = 0; g < t_phi.group.n; ++g)
    psi.push_back(t_phi.v.adjoint() * cert.t * t_phi.pi[g] * t_phi.v);

  double scale = std::max(1.0, cert.t.max_norm());
  for (const auto& m : psi) scale = std::max(scale, m.max_norm());

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    AlgebraElement f(t_phi.group.n);
    for (auto& v : f) v = rng.complex_uniform();
    CMatrix lhs(t_phi.d, t_phi.d);
    for (std::size_t g = 0; g < f.size(); ++g) lhs += f[g] * psi[g];
    CMatrix rhs = t_phi.v.adjoint() * cert.t * eval_extended_rep(t_phi, f) * t_phi.v;
    rep.max_residual = std::max(rep.max_residual, max_abs_diff(lhs, rhs));
  }
  rep.ok = rep.max_residual <= 100.0 * tol.eps_eq * scale;
  return rep;
}

}  // namespace acp
