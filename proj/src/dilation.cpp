#include "acp/dilation.hpp"

#include <algorithm>
#include <cmath>

#include "acp/error.hpp"

namespace acp {

namespace {

// L_g on F(G,H) ~ C^(n*d): sends block h to block g*h.
CMatrix left_translation(const FiniteGroup& g, std::size_t d, int elem) {
  CMatrix l(g.n * d, g.n * d);
  for (std::size_t h = 0; h < g.n; ++h) {
    const std::size_t target = static_cast<std::size_t>(g.op(elem, static_cast<int>(h)));
    for (std::size_t k = 0; k < d; ++k) l(target * d + k, h * d + k) = cx(1.0, 0.0);
  }
  return l;
}

// A_alpha: sends block h to block alpha(h); symmetric since alpha^2 = id.
CMatrix alpha_permutation(const FiniteGroup& g, const Involution& alpha, std::size_t d) {
  CMatrix a(g.n * d, g.n * d);
  for (std::size_t h = 0; h < g.n; ++h) {
    const std::size_t target = static_cast<std::size_t>(alpha(static_cast<int>(h)));
    for (std::size_t k = 0; k < d; ++k) a(target * d + k, h * d + k) = cx(1.0, 0.0);
  }
  return a;
}

}  // namespace

DilationTriple construct_minimal(const OperatorMap& phi, const AcpReport& report,
                                 const Tolerance& tol) {
  if (!report.all_ok) fail("NotAcp", "construct_minimal requires a certified alpha-CP map");

  const std::size_t n = phi.group.n;
  const std::size_t d = phi.d;
  const std::size_t big = n * d;

  const RangeFactor rf = range_factor(report.gram.flat, tol);

  DilationTriple t;
  t.group = phi.group;
  t.alpha = phi.alpha;
  t.d = d;
  t.rank = rf.rank;
  t.e = rf.e;
  t.e_pinv = rf.e_pinv;

  CMatrix kernel_proj = CMatrix::identity(big) - rf.e_pinv * rf.e;

  // N_phi-invariance guard. Condition (4) bounds ||E L_g x||^2 by
  // M(g) * x* Gamma x <= M(g) * eps_rank * lambda_max for below-cutoff x,
  // so anything much larger signals a rank mis-threshold.
  double m_bound = 1.0;
  for (const auto& m : report.m_min)
    if (!m.unbounded) m_bound = std::max(m_bound, m.k_min);
  const double guard_l =
      std::sqrt(100.0 * m_bound * tol.eps_rank * std::max(1.0, rf.lambda_max));
  const double guard_j = std::sqrt(100.0 * tol.eps_rank * std::max(1.0, rf.lambda_max));

  t.pi.reserve(n);
  double worst_quotient = 0.0;
  for (std::size_t g = 0; g < n; ++g) {
    CMatrix l = left_translation(phi.group, d, static_cast<int>(g));
    const double leak = spectral_norm(rf.e * l * kernel_proj, tol);
    worst_quotient = std::max(worst_quotient, leak);
    if (leak > guard_l)
      fail("QuotientNotInvariant",
           "translation by element " + std::to_string(g) + " leaks " + std::to_string(leak));
    t.pi.push_back(rf.e * l * rf.e_pinv);
  }

  CMatrix a = alpha_permutation(phi.group, phi.alpha, d);
  const double leak_alpha = spectral_norm(rf.e * a * kernel_proj, tol);
  worst_quotient = std::max(worst_quotient, leak_alpha);
  if (leak_alpha > guard_j)
    fail("QuotientNotInvariant", "alpha permutation leaks " + std::to_string(leak_alpha));

  t.krein.m = rf.rank;
  t.krein.j = rf.e * a * rf.e_pinv;
  t.v = rf.e.block(0, static_cast<std::size_t>(phi.group.e) * d, rf.rank, d);

  t.scale = std::max(1.0, rf.lambda_max);
  for (const auto& p : t.pi) t.scale = std::max(t.scale, spectral_norm(p, tol));
  t.scale = std::max(t.scale, phi.max_norm());

  TripleReport check = verify_triple(t, phi, tol);
  t.residuals = check.residuals;
  t.residuals["quotient_invariance"] = worst_quotient;
  return t;
}

CMatrix span_matrix(const DilationTriple& t) {
  const std::size_t n = t.group.n;
  const std::size_t d = t.d;
  CMatrix s(t.rank, n * d);
  for (std::size_t g = 0; g < n; ++g) s.set_block(0, g * d, t.pi[g] * t.v);
  return s;
}

TripleReport verify_triple(const DilationTriple& t, const OperatorMap& phi, const Tolerance& tol) {
  TripleReport rep;
  const std::size_t n = t.group.n;
  const std::size_t m = t.rank;
  const CMatrix& j = t.krein.j;

  const double threshold = 100.0 * tol.eps_eq * t.scale;
  auto record = [&](const std::string& name, double value, double limit) {
    rep.residuals[name] = value;
    if (value > limit) rep.failures.push_back(name);
  };

  record("krein_j_hermitian", m == 0 ? 0.0 : j.hermitian_deviation(), threshold);
  record("krein_j_squares_to_identity", max_abs_diff(j * j, CMatrix::identity(m)), threshold);
  record("pi_identity", max_abs_diff(t.pi[t.group.e], CMatrix::identity(m)), threshold);

  double morphism = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      morphism = std::max(
          morphism, max_abs_diff(t.pi[a] * t.pi[b],
                                 t.pi[t.group.op(static_cast<int>(a), static_cast<int>(b))]));
  record("pi_morphism", morphism, threshold);

  double junitary = 0.0;
  for (std::size_t g = 0; g < n; ++g)
    junitary = std::max(
        junitary, max_abs_diff(t.pi[t.group.inverse(static_cast<int>(g))],
                               j * t.pi[g].adjoint() * j));
  record("pi_j_unitary", junitary, threshold);

  double reconstruction = 0.0;
  for (std::size_t g = 0; g < n; ++g)
    reconstruction =
        std::max(reconstruction, max_abs_diff(t.v.adjoint() * t.pi[g] * t.v, phi.at(static_cast<int>(g))));
  record("reconstruction", reconstruction, threshold);

  double intertwine = 0.0;
  for (std::size_t g = 0; g < n; ++g)
    intertwine = std::max(intertwine,
                          max_abs_diff(j * t.pi[g] * t.v, t.pi[t.alpha(static_cast<int>(g))] * t.v));
  record("alpha_intertwining", intertwine, threshold);

  record("jv_fixes_v", max_abs_diff(j * t.v, t.v), threshold);

  // Remark-2.5 equivalent pairwise form
  double pairwise = 0.0;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      const int twisted = t.group.op(t.alpha(t.group.inverse(static_cast<int>(g))), static_cast<int>(h));
      pairwise = std::max(pairwise,
                          max_abs_diff(t.v.adjoint() * t.pi[g].adjoint() * t.pi[h] * t.v,
                                       t.v.adjoint() * t.pi[twisted] * t.v));
    }
  record("pairwise_form", pairwise, threshold);

  // minimality: spanning columns must have full rank m
  CMatrix s = span_matrix(t);
  const EigResult eig = herm_eig(hermitian_part(s * s.adjoint()), tol);
  const double lmax = m == 0 ? 0.0 : std::max(0.0, eig.values.back());
  std::size_t span_rank = 0;
  for (double lam : eig.values)
    if (lam > tol.eps_rank * lmax && lam > 0.0) ++span_rank;
  rep.span_rank = span_rank;
  rep.residuals["span_rank_deficit"] = static_cast<double>(m - span_rank);
  if (span_rank != m) rep.failures.push_back("minimality");

  rep.ok = rep.failures.empty();
  return rep;
}

CMatrix compress_at(const Quadruple& q, std::int64_t label) {
  auto it = q.pi_at.find(label);
  if (it == q.pi_at.end())
    fail("UndefinedElement", "quadruple has no representative at label " + std::to_string(label));
  return q.v.adjoint() * it->second * q.v;
}

OperatorMap compress_map(const Quadruple& q, const FiniteGroup& g, const Involution& alpha,
                         bool certify, const Tolerance& tol) {
  const std::size_t n = g.n;
  const std::size_t m = q.krein.m;
  const std::size_t d = q.v.cols();
  for (std::size_t elem = 0; elem < n; ++elem)
    if (!q.pi_at.count(static_cast<std::int64_t>(elem)))
      fail("UndefinedElement", "quadruple is not total on the group");
  auto pi = [&](int elem) -> const CMatrix& { return q.pi_at.at(elem); };

  if (certify) {
    double scale = std::max(1.0, q.krein.j.max_norm());
    for (std::size_t elem = 0; elem < n; ++elem) scale = std::max(scale, spectral_norm(pi(static_cast<int>(elem)), tol));
    const double threshold = 100.0 * tol.eps_eq * scale;
    const CMatrix& j = q.krein.j;

    if (j.hermitian_deviation() > threshold || max_abs_diff(j * j, CMatrix::identity(m)) > threshold)
      fail("PreconditionFailed", "krein: J is not a fundamental symmetry");
    if (max_abs_diff(pi(g.e), CMatrix::identity(m)) > threshold)
      fail("PreconditionFailed", "morphism: pi(e) != id");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (max_abs_diff(pi(static_cast<int>(a)) * pi(static_cast<int>(b)),
                         pi(g.op(static_cast<int>(a), static_cast<int>(b)))) > threshold)
          fail("PreconditionFailed", "morphism: pi(a)pi(b) != pi(ab)");
    for (std::size_t a = 0; a < n; ++a)
      if (max_abs_diff(pi(g.inverse(static_cast<int>(a))), j * pi(static_cast<int>(a)).adjoint() * j) >
          threshold)
        fail("PreconditionFailed", "j_unitarity: pi(g^-1) != J pi(g)* J");
    for (std::size_t a = 0; a < n; ++a)
      if (max_abs_diff(j * pi(static_cast<int>(a)) * q.v, pi(alpha(static_cast<int>(a))) * q.v) >
          threshold)
        fail("PreconditionFailed", "intertwining: J pi(g) V != pi(alpha(g)) V");

    CMatrix s(m, n * d);
    for (std::size_t elem = 0; elem < n; ++elem) s.set_block(0, elem * d, pi(static_cast<int>(elem)) * q.v);
    const EigResult eig = herm_eig(hermitian_part(s * s.adjoint()), tol);
    const double lmax = m == 0 ? 0.0 : std::max(0.0, eig.values.back());
    std::size_t rank = 0;
    for (double lam : eig.values)
      if (lam > tol.eps_rank * lmax && lam > 0.0) ++rank;
    if (rank != m) fail("PreconditionFailed", "span: pi(G) V H does not fill the Krein space");
  }

  std::vector<CMatrix> mats;
  mats.reserve(n);
  for (std::size_t elem = 0; elem < n; ++elem)
    mats.push_back(q.v.adjoint() * pi(static_cast<int>(elem)) * q.v);
  return make_operator_map(g, alpha, d, std::move(mats));
}

EquivalenceResult unitary_equivalence(const DilationTriple& t1, const DilationTriple& t2,
                                      const Tolerance& tol) {
  EquivalenceResult out;
  if (!(t1.group == t2.group) || !(t1.alpha == t2.alpha) || t1.d != t2.d)
    fail("DimensionMismatch", "unitary_equivalence: triples live on different (G, alpha, d)");
  if (t1.rank != t2.rank) {
    out.reason = "rank mismatch: " + std::to_string(t1.rank) + " vs " + std::to_string(t2.rank);
    return out;
  }
  const std::size_t m = t1.rank;
  const std::size_t n = t1.group.n;

  const CMatrix d1 = span_matrix(t1);
  const CMatrix d2 = span_matrix(t2);
  const LstsqResult ls = lstsq_map(d1, d2, tol);
  out.u = ls.x;

  const double scale = std::max(t1.scale, t2.scale);
  const double threshold = 100.0 * tol.eps_eq * scale;
  auto record = [&](const std::string& name, double value) {
    out.residuals[name] = value;
    if (value > threshold && out.reason.empty()) out.reason = name + " residual " + std::to_string(value);
  };

  record("span_map", ls.residual * std::max(1.0, d2.max_norm()));
  record("unitary_left", max_abs_diff(out.u.adjoint() * out.u, CMatrix::identity(m)));
  record("unitary_right", max_abs_diff(out.u * out.u.adjoint(), CMatrix::identity(m)));
  record("j_intertwining", max_abs_diff(out.u * t1.krein.j, t2.krein.j * out.u));
  record("v_match", max_abs_diff(out.u * t1.v, t2.v));
  double pi_resid = 0.0;
  for (std::size_t g = 0; g < n; ++g)
    pi_resid = std::max(pi_resid, max_abs_diff(out.u * t1.pi[g], t2.pi[g] * out.u));
  record("pi_intertwining", pi_resid);

  out.ok = out.reason.empty();
  if (!out.ok && out.reason.empty()) out.reason = "NotEquivalent";
  return out;
}

Quadruple integer_counterexample(int range) {
  Quadruple q;
  q.krein.m = 2;
  q.krein.j = CMatrix(2, 2);
  q.krein.j(0, 1) = cx(1.0, 0.0);
  q.krein.j(1, 0) = cx(1.0, 0.0);
  q.v = CMatrix(2, 2);
  q.v(0, 0) = cx(1.0, 0.0);
  q.v(0, 1) = cx(-1.0, 0.0);
  q.v(1, 1) = cx(1.0, 0.0);
  for (int n = -range; n <= range; ++n) {
    CMatrix pi(2, 2);
    pi(0, 0) = cx(std::exp(static_cast<double>(n)), 0.0);
    pi(1, 1) = cx(std::exp(static_cast<double>(-n)), 0.0);
    q.pi_at[n] = pi;
  }
  return q;
}

}  // namespace acp
