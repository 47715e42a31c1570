#include <doctest.h>

#include <cmath>

#include "acp/dilation.hpp"
#include "acp/error.hpp"
#include "acp/rng.hpp"
#include "fixtures.hpp"

using namespace acp;

namespace {

DilationTriple dilate(const OperatorMap& phi) {
  AcpReport rep = verify_acp(phi);
  REQUIRE(rep.all_ok);
  return construct_minimal(phi, rep);
}

CMatrix random_unitary(Rng& rng, std::size_t n) {
  return herm_eig(rng.hermitian_matrix(n)).vectors;
}

DilationTriple conjugate_triple(const DilationTriple& t, const CMatrix& w) {
  DilationTriple out = t;
  out.krein.j = w * t.krein.j * w.adjoint();
  out.v = w * t.v;
  out.e = w * t.e;
  out.e_pinv = t.e_pinv * w.adjoint();
  for (std::size_t g = 0; g < t.pi.size(); ++g) out.pi[g] = w * t.pi[g] * w.adjoint();
  return out;
}

Quadruple as_quadruple(const DilationTriple& t) {
  Quadruple q;
  q.krein = t.krein;
  q.v = t.v;
  for (std::size_t g = 0; g < t.pi.size(); ++g) q.pi_at[static_cast<std::int64_t>(g)] = t.pi[g];
  return q;
}

}  // namespace

TEST_CASE("construct_minimal on the trivial group") {
  OperatorMap phi = fixtures::trivial_d2();
  DilationTriple t = dilate(phi);
  CHECK(t.rank == 2);  // phi(e) is invertible, so m = d
  CHECK(max_abs_diff(t.v.adjoint() * t.v, phi.at(0)) < 1e-12);
  CHECK(max_abs_diff(t.krein.j, CMatrix::identity(2)) < 1e-12);
  CHECK(verify_triple(t, phi).ok);
}

TEST_CASE("construct_minimal on Z2 all-ones collapses to one dimension") {
  OperatorMap phi = fixtures::z2_allones();
  DilationTriple t = dilate(phi);
  CHECK(t.rank == 1);
  CHECK(std::abs(t.pi[1](0, 0) - cx(1, 0)) < 1e-12);
  CHECK(std::abs(t.krein.j(0, 0) - cx(1, 0)) < 1e-12);
  CHECK(std::abs(t.v(0, 0) - cx(1, 0)) < 1e-12);
}

TEST_CASE("construct_minimal refuses non-ACP input") {
  OperatorMap omega = fixtures::z3_omega();
  AcpReport rep = verify_acp(omega);
  CHECK_THROWS_AS(construct_minimal(omega, rep), Error);
}

TEST_CASE("all triple invariants hold on every fixture, and dim H = rank Gram") {
  for (const auto& fx : fixtures::acp_fixtures()) {
    CAPTURE(fx.name);
    AcpReport rep = verify_acp(fx.map);
    DilationTriple t = construct_minimal(fx.map, rep);
    TripleReport check = verify_triple(t, fx.map);
    CHECK(check.ok);
    for (const auto& [name, value] : check.residuals) {
      CAPTURE(name);
      CHECK(value <= 1e-8 * t.scale);
    }
    CHECK(t.rank == range_factor(rep.gram.flat).rank);
    CHECK(check.span_rank == t.rank);
  }
}

TEST_CASE("verify_triple catches tampered triples") {
  OperatorMap phi = fixtures::z3_family(0.5);
  DilationTriple t = dilate(phi);

  SUBCASE("V scaled by 2 breaks reconstruction") {
    DilationTriple bad = t;
    bad.v *= cx(2, 0);
    TripleReport check = verify_triple(bad, phi);
    CHECK_FALSE(check.ok);
    // residual is 3 * |phi|_max: 4 phi - phi
    CHECK(check.residuals.at("reconstruction") ==
          doctest::Approx(3.0 * phi.max_norm()).epsilon(1e-9));
  }

  SUBCASE("J flipped to -J keeps J^2 = I but breaks the intertwining") {
    DilationTriple bad = t;
    bad.krein.j *= cx(-1, 0);
    TripleReport check = verify_triple(bad, phi);
    CHECK_FALSE(check.ok);
    CHECK(check.residuals.at("krein_j_squares_to_identity") < 1e-12);
    CHECK(check.residuals.at("alpha_intertwining") > 0.1);
    CHECK(check.residuals.at("jv_fixes_v") > 0.1);
  }

  SUBCASE("dropping a dimension breaks minimality") {
    DilationTriple bad = t;
    // zero out the last row of V and last row/col of every pi: span shrinks
    for (std::size_t c = 0; c < bad.v.cols(); ++c) bad.v(t.rank - 1, c) = cx();
    TripleReport check = verify_triple(bad, phi);
    CHECK(check.span_rank < t.rank);
  }
}

TEST_CASE("compress_at reproduces the integer counterexample values") {
  Quadruple q = integer_counterexample();
  const double e1 = std::exp(1.0);

  // direct 2x2 oracle: V* pi(1) V with V = [[1,-1],[0,1]], pi(1) = diag(e, 1/e)
  CMatrix expect1(2, 2);
  expect1(0, 0) = cx(e1, 0);
  expect1(0, 1) = cx(-e1, 0);
  expect1(1, 0) = cx(-e1, 0);
  expect1(1, 1) = cx(e1 + 1.0 / e1, 0);
  CHECK(max_abs_diff(compress_at(q, 1), expect1) < 1e-14);

  CMatrix expect_neg(2, 2);
  expect_neg(0, 0) = cx(1.0 / e1, 0);
  expect_neg(0, 1) = cx(-1.0 / e1, 0);
  expect_neg(1, 0) = cx(-1.0 / e1, 0);
  expect_neg(1, 1) = cx(1.0 / e1 + e1, 0);
  CHECK(max_abs_diff(compress_at(q, -1), expect_neg) < 1e-14);

  // phi(n) != phi(-n): the compressed map is not alpha-invariant
  CHECK(max_abs_diff(compress_at(q, 1), compress_at(q, -1)) ==
        doctest::Approx(e1 - 1.0 / e1).epsilon(1e-14));

  // phi(0) = V*V
  CHECK(max_abs_diff(compress_at(q, 0), q.v.adjoint() * q.v) == 0.0);

  // V = 0 compresses to zero
  Quadruple zeroed = q;
  zeroed.v = CMatrix(2, 2);
  CHECK(compress_at(zeroed, 2).max_norm() == 0.0);

  CHECK_THROWS_AS(compress_at(q, 99), Error);
}

TEST_CASE("the counterexample satisfies the weak hypotheses but not the strong one") {
  Quadruple q = integer_counterexample();
  // pairwise identity V* pi(n)* pi(m) V = V* pi(n+m) V holds exactly
  for (int n = -3; n <= 3; ++n)
    for (int m = -3; m <= 3; ++m) {
      CMatrix lhs = q.v.adjoint() * q.pi_at.at(n).adjoint() * q.pi_at.at(m) * q.v;
      CMatrix rhs = q.v.adjoint() * q.pi_at.at(n + m) * q.v;
      CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
  // J-unitarity pi(-n) = J pi(n)* J holds
  for (int n = -3; n <= 3; ++n)
    CHECK(max_abs_diff(q.pi_at.at(-n), q.krein.j * q.pi_at.at(n).adjoint() * q.krein.j) == 0.0);
  // ... but J pi(n) V != pi(-n) V
  CHECK(max_abs_diff(q.krein.j * q.pi_at.at(1) * q.v, q.pi_at.at(-1) * q.v) > 1.0);
}

TEST_CASE("remark 2.4 flip: W = JV is another dilation of the same map") {
  Quadruple q = integer_counterexample();
  CMatrix w = q.krein.j * q.v;
  CHECK(max_abs_diff(w, q.v) > 0.5);  // the flip is nontrivial here
  for (int n = -3; n <= 3; ++n) {
    CMatrix via_w = w.adjoint() * q.pi_at.at(n) * w;
    CHECK(max_abs_diff(via_w, compress_at(q, n)) < 1e-12);
    // and W satisfies the same pairwise identity
    for (int m = -2; m <= 2; ++m) {
      CMatrix lhs = w.adjoint() * q.pi_at.at(n).adjoint() * q.pi_at.at(m) * w;
      CMatrix rhs = w.adjoint() * q.pi_at.at(n + m) * w;
      CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("compress_map round-trips construct_minimal") {
  for (const auto& fx : fixtures::acp_fixtures()) {
    CAPTURE(fx.name);
    DilationTriple t = dilate(fx.map);
    OperatorMap back = compress_map(as_quadruple(t), fx.map.group, fx.map.alpha, true);
    for (std::size_t g = 0; g < fx.map.group.n; ++g)
      CHECK(max_abs_diff(back.at(static_cast<int>(g)), fx.map.at(static_cast<int>(g))) <=
            1e-8 * std::max(1.0, fx.map.max_norm()));
  }
}

TEST_CASE("proposition 2.7 as executable theorem: unitary reps compress to ACP maps") {
  // J = I, pi = regular representation of Z3, alpha = id, V = I
  FiniteGroup z3 = cyclic_group(3);
  Quadruple q;
  q.krein.m = 3;
  q.krein.j = CMatrix::identity(3);
  q.v = CMatrix::identity(3);
  for (int g = 0; g < 3; ++g) {
    CMatrix p(3, 3);
    for (int h = 0; h < 3; ++h) p(z3.op(g, h), h) = cx(1, 0);
    q.pi_at[g] = p;
  }
  OperatorMap phi = compress_map(q, z3, identity_involution(z3), true);
  CHECK(verify_acp(phi).all_ok);
}

TEST_CASE("compress_map rejects quadruples violating the hypotheses") {
  // finite chunk of the integer counterexample laid over Z5 labels: the
  // morphism fails (pi(4) != pi(-1) in the wrapped table), and even before
  // that the intertwining is broken
  Quadruple q = integer_counterexample();
  FiniteGroup z5 = cyclic_group(5);
  Quadruple wrapped;
  wrapped.krein = q.krein;
  wrapped.v = q.v;
  for (int g = 0; g < 5; ++g) wrapped.pi_at[g] = q.pi_at.at(g);
  CHECK_THROWS_WITH_AS(static_cast<void>(compress_map(wrapped, z5, inverse_involution(z5), true)),
                       doctest::Contains("PreconditionFailed"), Error);

  // certification off: the compression itself is well-defined
  OperatorMap forced = compress_map(wrapped, z5, inverse_involution(z5), false);
  CHECK(forced.mats.size() == 5);

  // intertwining failure in isolation: valid unitary rep, wrong alpha
  FiniteGroup z3 = cyclic_group(3);
  Quadruple reg;
  reg.krein.m = 3;
  reg.krein.j = CMatrix::identity(3);
  reg.v = CMatrix::identity(3);
  for (int g = 0; g < 3; ++g) {
    CMatrix p(3, 3);
    for (int h = 0; h < 3; ++h) p(z3.op(g, h), h) = cx(1, 0);
    reg.pi_at[g] = p;
  }
  CHECK_THROWS_WITH_AS(static_cast<void>(compress_map(reg, z3, inverse_involution(z3), true)),
                       doctest::Contains("intertwining"), Error);
}

TEST_CASE("unitary_equivalence recovers conjugations") {
  Rng rng(31);
  for (const auto& fx : fixtures::acp_fixtures()) {
    CAPTURE(fx.name);
    DilationTriple t1 = dilate(fx.map);
    CMatrix w = random_unitary(rng, t1.rank);
    DilationTriple t2 = conjugate_triple(t1, w);
    REQUIRE(verify_triple(t2, fx.map).ok);

    EquivalenceResult eq = unitary_equivalence(t1, t2);
    CHECK(eq.ok);
    for (const auto& [name, value] : eq.residuals) {
      CAPTURE(name);
      CHECK(value <= 1e-8 * std::max(t1.scale, t2.scale));
    }
    // the construction pins U = W exactly (full-rank spanning columns)
    if (t1.rank > 0) CHECK(max_abs_diff(eq.u, w) < 1e-8);
  }
}

TEST_CASE("unitary_equivalence negatives") {
  OperatorMap phi = fixtures::z3_family(0.5);
  DilationTriple t = dilate(phi);

  // identical triples give U = I
  EquivalenceResult self = unitary_equivalence(t, t);
  CHECK(self.ok);
  CHECK(max_abs_diff(self.u, CMatrix::identity(t.rank)) < 1e-10);

  // V doubled: no unitary can satisfy (b)
  DilationTriple bad = t;
  bad.v *= cx(2, 0);
  EquivalenceResult scaled = unitary_equivalence(t, bad);
  CHECK_FALSE(scaled.ok);

  // rank mismatch is rejected outright
  DilationTriple other = dilate(fixtures::z3_family(1.0));
  EquivalenceResult mismatch = unitary_equivalence(t, other);
  CHECK_FALSE(mismatch.ok);
}

TEST_CASE("dilation of the zero map is the zero-dimensional triple") {
  FiniteGroup z3 = cyclic_group(3);
  OperatorMap zero = fixtures::scalar_map(z3, identity_involution(z3), {cx(), cx(), cx()});
  DilationTriple t = dilate(zero);
  CHECK(t.rank == 0);
  CHECK(verify_triple(t, zero).ok);
}
