#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "acp/acp_verify.hpp"
#include "acp/cmatrix.hpp"
#include "acp/group.hpp"
#include "acp/numerics.hpp"

namespace acp {

// (C^m, J) with J = J* = J^-1; [x,y] = <Jx, y>.
struct KreinSpace {
  std::size_t m = 0;
  CMatrix j;
};

// Minimal Stinespring triple (pi, (H, J), V) in explicit coordinates, plus
// the quotient factor realizing F(G,H)/N_phi as C^m.
struct DilationTriple {
  FiniteGroup group;
  Involution alpha;
  std::size_t d = 0;

  KreinSpace krein;
  std::vector<CMatrix> pi;  // one m x m matrix per element
  CMatrix v;                // m x d
  CMatrix e;                // m x (n*d) quotient factor
  CMatrix e_pinv;           // (n*d) x m
  std::size_t rank = 0;     // = m = rank of the Gram

  double scale = 1.0;  // residual normalization: max(1, ||gram||_2, max ||pi(g)||_2)
  std::map<std::string, double> residuals;  // filled by construct_minimal
};

// Unverified candidate data. Element labels are plain integers so the
// fixture on the additive group of integers can be evaluated pointwise.
struct Quadruple {
  KreinSpace krein;
  CMatrix v;
  std::map<std::int64_t, CMatrix> pi_at;
};

// Theorem-2.8(1) construction: coordinates via range_factor of the Gram,
// pi(g) = E L_g E+, J = E A_alpha E+, V = E iota_e. Checks that the kernel
// of the Gram is invariant (QuotientNotInvariant otherwise), then runs
// verify_triple and stores its residuals.
DilationTriple construct_minimal(const OperatorMap& phi, const AcpReport& report,
                                 const Tolerance& tol = {});

struct TripleReport {
  bool ok = false;
  std::map<std::string, double> residuals;
  std::vector<std::string> failures;
  std::size_t span_rank = 0;
};

// Checks: pi(e) = I, morphism table, J-unitarity, J = J* = J^-1, phi(g) =
// V*pi(g)V, minimality rank, J pi(g) V = pi(alpha(g)) V, JV = V, and the
// equivalent pairwise form V*pi(g)*pi(g')V = V*pi(alpha(g^-1))g')V.
TripleReport verify_triple(const DilationTriple& t, const OperatorMap& phi,
                           const Tolerance& tol = {});

// Columns pi(g) v e_k ordered lexicographically in (g, k); m x (n*d).
CMatrix span_matrix(const DilationTriple& t);

// V* pi(g) V for any label present in the quadruple.
CMatrix compress_at(const Quadruple& q, std::int64_t label);

// Interprets labels 0..n-1 as the elements of g and compresses the whole
// quadruple into an operator map. With certify=true the Proposition-2.7
// hypotheses (J-unitary morphism, full span, intertwining) are certified
// first and PreconditionFailed names the violated clause.
OperatorMap compress_map(const Quadruple& q, const FiniteGroup& g, const Involution& alpha,
                         bool certify = true, const Tolerance& tol = {});

struct EquivalenceResult {
  bool ok = false;
  CMatrix u;
  std::map<std::string, double> residuals;
  std::string reason;
};

// Theorem-2.8(2) unitary between two certified triples over the same map:
// least-squares from spanning columns, then certification of unitarity and
// the three intertwining identities.
EquivalenceResult unitary_equivalence(const DilationTriple& t1, const DilationTriple& t2,
                                      const Tolerance& tol = {});

// The quadruple on the integers with J(x,y) = (y,x), pi(n) = diag(e^n, e^-n),
// V(x,y) = (x-y, y), evaluated at labels -range..range. Satisfies the weaker
// pairwise identity but not the intertwining condition, and compresses to a
// map with phi(n) != phi(-n).
Quadruple integer_counterexample(int range = 8);

}  // namespace acp
