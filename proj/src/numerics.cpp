#include "acp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "acp/error.hpp"

namespace acp {

namespace {

double offdiag_fro(const CMatrix& h) {
  double s = 0.0;
  for (std::size_t p = 0; p < h.rows(); ++p)
    for (std::size_t q = p + 1; q < h.cols(); ++q) s += std::norm(h(p, q));
  return std::sqrt(2.0 * s);
}

// One similarity rotation annihilating h(p,q); accumulates into q_acc.
// The rotation is u = [[c, -s*phase],[s*conj(phase), c]] on the (p,q) plane
// with phase = h(p,q)/|h(p,q)|, applied as h <- u* h u.
void jacobi_rotate(CMatrix& h, CMatrix& q_acc, std::size_t p, std::size_t q) {
  const cx beta = h(p, q);
  const double r = std::abs(beta);
  if (r == 0.0) return;
  const cx phase = beta / r;
  const double alpha = h(p, p).real();
  const double gamma = h(q, q).real();
  const double tau = (alpha - gamma) / (2.0 * r);
  const double sign = tau >= 0.0 ? 1.0 : -1.0;
  const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const std::size_t m = h.rows();
  // columns p, q of h
  for (std::size_t k = 0; k < m; ++k) {
    const cx hkp = h(k, p), hkq = h(k, q);
    h(k, p) = c * hkp + s * std::conj(phase) * hkq;
    h(k, q) = -s * phase * hkp + c * hkq;
  }
  // rows p, q of h
  for (std::size_t k = 0; k < m; ++k) {
    const cx hpk = h(p, k), hqk = h(q, k);
    h(p, k) = c * hpk + s * phase * hqk;
    h(q, k) = -s * std::conj(phase) * hpk + c * hqk;
  }
  // the rotation zeroes the pivot and keeps the diagonal real by construction
  h(p, q) = cx(0.0, 0.0);
  h(q, p) = cx(0.0, 0.0);
  h(p, p) = cx(h(p, p).real(), 0.0);
  h(q, q) = cx(h(q, q).real(), 0.0);
  // eigenvector accumulation: q_acc <- q_acc * u
  for (std::size_t k = 0; k < m; ++k) {
    const cx qkp = q_acc(k, p), qkq = q_acc(k, q);
    q_acc(k, p) = c * qkp + s * std::conj(phase) * qkq;
    q_acc(k, q) = -s * phase * qkp + c * qkq;
  }
}

}  // namespace

EigResult herm_eig(const CMatrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) fail("NotSquare", "herm_eig expects a square matrix");
  const std::size_t m = a.rows();
  if (m == 0) return {{}, CMatrix(0, 0)};
  if (!a.all_finite()) fail("InvalidParameter", "herm_eig: non-finite entries");

  const double scale = std::max(1.0, a.max_norm());
  if (a.hermitian_deviation() > tol.eps_eq * scale)
    fail("NotHermitian", "herm_eig: input deviates from its adjoint");

  CMatrix h = hermitian_part(a);
  CMatrix q = CMatrix::identity(m);

  const double stop = 1e-15 * std::max(1e-300, h.fro_norm());
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_fro(h) <= stop) break;
    for (std::size_t p = 0; p + 1 < m; ++p)
      for (std::size_t qq = p + 1; qq < m; ++qq) jacobi_rotate(h, q, p, qq);
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return h(i, i).real() < h(j, j).real(); });

  EigResult out;
  out.values.resize(m);
  out.vectors = CMatrix(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t src = order[j];
    out.values[j] = h(src, src).real();
    // phase convention: first component of magnitude > eps_rank made real >= 0
    cx phase(1.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double mag = std::abs(q(i, src));
      if (mag > tol.eps_rank) {
        phase = std::conj(q(i, src)) / mag;
        break;
      }
    }
    for (std::size_t i = 0; i < m; ++i) out.vectors(i, j) = phase * q(i, src);
  }
  return out;
}

PsdReport psd_check(const CMatrix& a, const Tolerance& tol) {
  if (a.rows() == 0) return {true, 0.0};
  const EigResult eig = herm_eig(a, tol);
  const double lo = eig.values.front();
  const double hi = eig.values.back();
  const double norm2 = std::max(std::abs(lo), std::abs(hi));
  PsdReport rep;
  rep.lambda_min = lo;
  rep.is_psd = lo >= -tol.eps_psd * std::max(1.0, norm2);
  return rep;
}

RangeFactor range_factor(const CMatrix& gamma, const Tolerance& tol) {
  const std::size_t n = gamma.rows();
  const EigResult eig = herm_eig(gamma, tol);
  RangeFactor rf;
  rf.lambda_max = n == 0 ? 0.0 : std::max(0.0, eig.values.back());

  if (n > 0) {
    const double norm2 = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    if (eig.values.front() < -tol.eps_psd * std::max(1.0, norm2))
      fail("NotPsd", "range_factor: negative eigenvalue " + std::to_string(eig.values.front()));
  }

  const double cutoff = tol.eps_rank * rf.lambda_max;
  std::vector<std::size_t> kept;  // descending eigenvalue order
  for (std::size_t j = n; j-- > 0;)
    if (eig.values[j] > cutoff && eig.values[j] > 0.0) kept.push_back(j);

  rf.rank = kept.size();
  rf.e = CMatrix(rf.rank, n);
  rf.e_pinv = CMatrix(n, rf.rank);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const double root = std::sqrt(eig.values[kept[k]]);
    for (std::size_t c = 0; c < n; ++c) {
      rf.e(k, c) = root * std::conj(eig.vectors(c, kept[k]));
      rf.e_pinv(c, k) = eig.vectors(c, kept[k]) / root;
    }
  }
  return rf;
}

PencilResult pencil_max(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail("DimensionMismatch", "pencil_max");
  const PsdReport pb = psd_check(b, tol);
  if (!pb.is_psd) fail("NotPsd", "pencil_max: b is not PSD");
  const RangeFactor rf = range_factor(a, tol);  // throws NotPsd for bad a

  // unbounded unless ker(a) subset ker(b)
  const std::size_t n = a.rows();
  CMatrix proj_range = rf.e_pinv * rf.e;  // orthogonal projector onto range(a)
  CMatrix ker = CMatrix::identity(n) - proj_range;
  const double leak = spectral_norm(b * ker, tol);
  if (leak > tol.eps_psd * std::max(1.0, spectral_norm(b, tol))) return {true, 0.0};

  if (rf.rank == 0) return {false, 0.0};
  // k = lambda_max( lambda_+^(-1/2) q_+* b q_+ lambda_+^(-1/2) )
  CMatrix c = rf.e_pinv.adjoint() * b * rf.e_pinv;
  const EigResult eig = herm_eig(hermitian_part(c), tol);
  return {false, std::max(0.0, eig.values.back())};
}

bool kernel_contained(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail("DimensionMismatch", "kernel_contained");
  const PsdReport pb = psd_check(b, tol);
  if (!pb.is_psd) fail("NotPsd", "kernel_contained: b is not PSD");
  const RangeFactor rf = range_factor(a, tol);
  CMatrix ker = CMatrix::identity(a.rows()) - rf.e_pinv * rf.e;
  const double leak = spectral_norm(b * ker, tol);
  return leak <= tol.eps_psd * std::max(1.0, spectral_norm(b, tol));
}

LstsqResult lstsq_map(const CMatrix& domain, const CMatrix& image, const Tolerance& tol) {
  if (domain.cols() != image.cols()) fail("DimensionMismatch", "lstsq_map: column count");
  const std::size_t n = domain.rows();
  const std::size_t k = domain.cols();

  // pseudo-inverse through the k x k Gram of the domain vectors
  CMatrix gram = domain.adjoint() * domain;
  const EigResult eig = herm_eig(hermitian_part(gram), tol);
  const double lmax = k == 0 ? 0.0 : std::max(0.0, eig.values.back());
  const double cutoff = tol.eps_rank * lmax;

  CMatrix pinv(k, n);  // domain^+
  for (std::size_t j = k; j-- > 0;) {
    const double lam = eig.values[j];
    if (lam <= cutoff || lam <= 0.0) continue;
    // pinv += v (1/lam) v* domain*
    CMatrix v = eig.vectors.column(j);
    CMatrix row = v.adjoint() * domain.adjoint();  // 1 x n
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < n; ++c) pinv(r, c) += v(r, 0) * row(0, c) / lam;
  }

  LstsqResult out;
  out.x = image * pinv;
  const double scale = std::max(1.0, image.max_norm());
  out.residual = max_abs_diff(out.x * domain, image) / scale;
  return out;
}

double spectral_norm(const CMatrix& a, const Tolerance& tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  // sqrt(lambda_max(a* a)) on the smaller of the two Gram matrices
  CMatrix gram = a.rows() < a.cols() ? a * a.adjoint() : a.adjoint() * a;
  const EigResult eig = herm_eig(hermitian_part(gram), tol);
  return std::sqrt(std::max(0.0, eig.values.back()));
}

}  // namespace acp
