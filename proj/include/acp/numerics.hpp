#pragma once

#include <cstddef>
#include <vector>

#include "acp/cmatrix.hpp"

namespace acp {

// All thresholds are relative to a max(1, scale) of the operands.
struct Tolerance {
  double eps_psd = 1e-9;   // eigenvalue threshold for positivity verdicts
  double eps_eq = 1e-10;   // entrywise equality threshold
  double eps_rank = 1e-9;  // spectral cutoff for rank decisions
};

struct EigResult {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // columns; a = Q diag(values) Q*
};

// Deterministic Hermitian eigendecomposition (cyclic Jacobi).
//
// Contract: eigenvalues ascending; ties keep Jacobi output order; each
// eigenvector is rescaled so its first component of magnitude > eps_rank is
// real nonnegative. Two calls on identical input produce bit-identical
// output.
EigResult herm_eig(const CMatrix& a, const Tolerance& tol = {});

struct PsdReport {
  bool is_psd = false;
  double lambda_min = 0.0;
};

// is_psd <=> lambda_min >= -eps_psd * max(1, ||a||_2). Throws NotHermitian.
PsdReport psd_check(const CMatrix& a, const Tolerance& tol = {});

struct RangeFactor {
  CMatrix e;       // r x N, e = lambda_+^(1/2) q_+*
  CMatrix e_pinv;  // N x r, e_pinv = q_+ lambda_+^(-1/2)
  std::size_t rank = 0;
  double lambda_max = 0.0;  // largest eigenvalue of gamma (0 for the zero matrix)
};

// Factor a PSD gamma so that x* gamma y = (e x)*(e y). Kept eigenpairs are
// those with lambda > eps_rank * lambda_max, ordered by descending eigenvalue.
// This is the single place rank decisions are made; downstream code reuses
// the factor rather than re-thresholding.
RangeFactor range_factor(const CMatrix& gamma, const Tolerance& tol = {});

struct PencilResult {
  bool unbounded = false;
  double k_min = 0.0;
};

// Least k with b <= k*a on range(a); unbounded when ker(a) is not contained
// in ker(b). Both inputs must be Hermitian PSD of equal size.
PencilResult pencil_max(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});

// true <=> ||b P_ker(a)||_2 <= eps_psd * max(1, ||b||_2)
bool kernel_contained(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});

struct LstsqResult {
  CMatrix x;
  // ||x*domain - image||_max / max(1, ||image||_max)
  double residual = 0.0;
};

// Least-squares solve for x minimizing ||x*domain - image||_F via the
// pseudo-inverse of domain (columns are the domain vectors).
LstsqResult lstsq_map(const CMatrix& domain, const CMatrix& image, const Tolerance& tol = {});

// Largest singular value; works for any shape.
double spectral_norm(const CMatrix& a, const Tolerance& tol = {});

}  // namespace acp
