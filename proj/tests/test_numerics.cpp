#include <doctest.h>

#include <cstring>

#include "acp/error.hpp"
#include "acp/numerics.hpp"
#include "acp/rng.hpp"

using namespace acp;

namespace {

CMatrix mat2(cx a, cx b, cx c, cx d) {
  CMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

CMatrix random_unitary(Rng& rng, std::size_t n) {
  // eigenvectors of a random Hermitian matrix form a deterministic unitary
  return herm_eig(rng.hermitian_matrix(n)).vectors;
}

}  // namespace

TEST_CASE("herm_eig on small closed forms") {
  EigResult zero = herm_eig(CMatrix(2, 2));
  CHECK(zero.values[0] == 0.0);
  CHECK(zero.values[1] == 0.0);
  CHECK(max_abs_diff(zero.vectors, CMatrix::identity(2)) == 0.0);

  // [[1,1],[1,1]]: characteristic polynomial x(x-2)
  EigResult ones = herm_eig(mat2(1, 1, 1, 1));
  CHECK(ones.values[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ones.values[1] == doctest::Approx(2.0).epsilon(1e-12));

  // [[2,i],[-i,2]]: eigenvalues 2 -+ 1
  EigResult rot = herm_eig(mat2(cx(2, 0), cx(0, 1), cx(0, -1), cx(2, 0)));
  CHECK(rot.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rot.values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("herm_eig rejects bad input") {
  CHECK_THROWS_AS(herm_eig(CMatrix(2, 3)), Error);
  CHECK_THROWS_AS(herm_eig(mat2(1, 2, 3, 4)), Error);  // not Hermitian
}

TEST_CASE("herm_eig reconstruction on random Hermitian matrices up to 64x64") {
  Rng rng(11);
  for (std::size_t n : {std::size_t{3}, std::size_t{17}, std::size_t{64}}) {
    CMatrix a = rng.hermitian_matrix(n, 2.0);
    EigResult eig = herm_eig(a);
    CMatrix lam(n, n);
    for (std::size_t i = 0; i < n; ++i) lam(i, i) = cx(eig.values[i], 0.0);
    CMatrix rebuilt = eig.vectors * lam * eig.vectors.adjoint();
    CHECK(max_abs_diff(rebuilt, a) <= 10.0 * Tolerance{}.eps_eq * std::max(1.0, a.max_norm()));
    CHECK(max_abs_diff(eig.vectors.adjoint() * eig.vectors, CMatrix::identity(n)) < 1e-13);
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(eig.values[i] <= eig.values[i + 1]);
  }
}

TEST_CASE("herm_eig is bit-deterministic") {
  Rng rng(99);
  CMatrix a = rng.hermitian_matrix(20);
  EigResult first = herm_eig(a);
  EigResult second = herm_eig(a);
  REQUIRE(first.values.size() == second.values.size());
  CHECK(std::memcmp(first.values.data(), second.values.data(),
                    first.values.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(first.vectors.data().data(), second.vectors.data().data(),
                    first.vectors.data().size() * sizeof(cx)) == 0);
}

TEST_CASE("herm_eig phase convention") {
  Rng rng(4);
  CMatrix a = rng.hermitian_matrix(6);
  EigResult eig = herm_eig(a);
  for (std::size_t j = 0; j < 6; ++j) {
    for (std::size_t i = 0; i < 6; ++i) {
      const cx v = eig.vectors(i, j);
      if (std::abs(v) > Tolerance{}.eps_rank) {
        CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(v.real() > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("psd_check verdicts") {
  PsdReport id = psd_check(CMatrix::identity(3));
  CHECK(id.is_psd);
  CHECK(id.lambda_min == doctest::Approx(1.0));

  // [[1,2],[2,1]] has eigenvalues 3 and -1
  PsdReport indef = psd_check(mat2(1, 2, 2, 1));
  CHECK_FALSE(indef.is_psd);
  CHECK(indef.lambda_min == doctest::Approx(-1.0).epsilon(1e-12));

  CMatrix ones(3, 3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) ones(r, c) = cx(1, 0);
  PsdReport rank1 = psd_check(ones);
  CHECK(rank1.is_psd);
  CHECK(rank1.lambda_min == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("range_factor on closed forms") {
  RangeFactor id = range_factor(CMatrix::identity(4));
  CHECK(id.rank == 4);
  CHECK(max_abs_diff(id.e.adjoint() * id.e, CMatrix::identity(4)) < 1e-13);

  RangeFactor ones = range_factor(mat2(1, 1, 1, 1));
  CHECK(ones.rank == 1);
  // rank-1 factor is (1, 1) after the phase convention
  CHECK(ones.e(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ones.e(0, 1).real() == doctest::Approx(1.0).epsilon(1e-12));

  RangeFactor diag = range_factor(mat2(2, 0, 0, 0));
  CHECK(diag.rank == 1);
  CHECK(diag.e(0, 0).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(diag.e(0, 1)) == doctest::Approx(0.0).epsilon(1e-14));

  CHECK_THROWS_AS(range_factor(mat2(1, 2, 2, 1)), Error);
}

TEST_CASE("range_factor isometry on random PSD matrices") {
  Rng rng(21);
  const Tolerance tol;
  for (int rep = 0; rep < 4; ++rep) {
    const std::size_t n = 8;
    CMatrix base = rng.complex_matrix(n, 5);
    CMatrix gamma = base * base.adjoint();  // PSD, rank <= 5
    RangeFactor rf = range_factor(gamma);
    CHECK(rf.rank <= 5);
    CHECK(max_abs_diff(rf.e * rf.e_pinv, CMatrix::identity(rf.rank)) < 1e-10);
    // e_pinv e is the orthogonal projector onto range(gamma)
    CMatrix proj = rf.e_pinv * rf.e;
    CHECK(max_abs_diff(proj * proj, proj) < 1e-10);
    CHECK(max_abs_diff(proj * gamma, gamma) < 1e-9 * std::max(1.0, gamma.max_norm()));

    const double norm2 = rf.lambda_max;
    for (int pair = 0; pair < 250; ++pair) {
      CMatrix x = rng.complex_matrix(n, 1);
      CMatrix y = rng.complex_matrix(n, 1);
      const cx lhs = (x.adjoint() * gamma * y)(0, 0);
      const cx rhs = ((rf.e * x).adjoint() * (rf.e * y))(0, 0);
      const double bound = tol.eps_eq * std::max(1.0, norm2) * x.fro_norm() * y.fro_norm();
      CHECK(std::abs(lhs - rhs) <= bound);
    }
  }
}

TEST_CASE("pencil_max on closed forms") {
  CHECK(pencil_max(CMatrix::identity(2), CMatrix::identity(2)).k_min == doctest::Approx(1.0));

  PencilResult scalar = pencil_max(mat2(1, 0, 0, 0), mat2(3, 0, 0, 0));
  CHECK_FALSE(scalar.unbounded);
  CHECK(scalar.k_min == doctest::Approx(3.0));

  CHECK(pencil_max(mat2(1, 0, 0, 0), CMatrix::identity(2)).unbounded);

  // zero against zero: rank-0 pencil
  PencilResult zero = pencil_max(CMatrix(2, 2), CMatrix(2, 2));
  CHECK_FALSE(zero.unbounded);
  CHECK(zero.k_min == 0.0);

  CMatrix ones = mat2(1, 1, 1, 1);
  PencilResult same = pencil_max(ones, ones);
  CHECK(same.k_min == doctest::Approx(1.0));
}

TEST_CASE("pencil_max certificate property") {
  Rng rng(17);
  const Tolerance tol;
  for (int rep = 0; rep < 6; ++rep) {
    const std::size_t n = 5;
    // a = I + PSD keeps lambda_min(a) >= 1 so the margin analysis is clean
    CMatrix wa = random_unitary(rng, n);
    CMatrix wb = random_unitary(rng, n);
    CMatrix a(n, n), b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      a(i, i) = cx(1.0 + 3.0 * rng.uniform(), 0.0);
      b(i, i) = cx(10.0 * rng.uniform(), 0.0);
    }
    a = wa * a * wa.adjoint();
    b = wb * b * wb.adjoint();
    a = hermitian_part(a);
    b = hermitian_part(b);

    PencilResult pr = pencil_max(a, b);
    REQUIRE_FALSE(pr.unbounded);
    const double k = pr.k_min;
    CHECK(psd_check(hermitian_part(k * a - b)).is_psd);
    const double scale = std::max(1.0, spectral_norm(b) + k * spectral_norm(a));
    const double shrunk = k - 10.0 * tol.eps_psd * scale;
    CHECK_FALSE(psd_check(hermitian_part(shrunk * a - b)).is_psd);
  }
}

TEST_CASE("kernel_contained") {
  CHECK(kernel_contained(CMatrix::identity(2), mat2(1, 1, 1, 1)));
  CHECK_FALSE(kernel_contained(mat2(1, 0, 0, 0), CMatrix::identity(2)));
  CMatrix ones = mat2(1, 1, 1, 1);
  CHECK(kernel_contained(ones, ones));
}

TEST_CASE("lstsq_map") {
  // domain = I: x equals the image
  CMatrix image(2, 2);
  image(0, 0) = cx(1, 2);
  image(1, 1) = cx(-3, 0);
  LstsqResult exact = lstsq_map(CMatrix::identity(2), image);
  CHECK(max_abs_diff(exact.x, image) < 1e-12);
  CHECK(exact.residual < 1e-12);

  // duplicated column, consistent images: residual 0
  CMatrix dup(2, 2);
  dup(0, 0) = cx(1, 0);
  dup(0, 1) = cx(1, 0);
  CMatrix consistent(2, 2);
  consistent(0, 0) = cx(5, 0);
  consistent(0, 1) = cx(5, 0);
  CHECK(lstsq_map(dup, consistent).residual < 1e-12);

  // duplicated column, inconsistent images: positive residual reported
  CMatrix inconsistent(2, 2);
  inconsistent(0, 0) = cx(1, 0);
  inconsistent(0, 1) = cx(3, 0);
  CHECK(lstsq_map(dup, inconsistent).residual > 0.1);
}

TEST_CASE("spectral_norm matches the largest eigenvalue on Hermitian input") {
  Rng rng(3);
  CMatrix a = rng.hermitian_matrix(7);
  EigResult eig = herm_eig(a);
  const double expect = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  CHECK(spectral_norm(a) == doctest::Approx(expect).epsilon(1e-10));
}
