#include <doctest.h>

#include "acp/error.hpp"
#include "acp/group.hpp"

using namespace acp;

namespace {

bool has_violation(const std::vector<Violation>& vs, const std::string& axiom) {
  for (const auto& v : vs)
    if (v.axiom == axiom) return true;
  return false;
}

}  // namespace

TEST_CASE("validate_group accepts Z2 and Z3") {
  GroupValidation v = validate_group({{0, 1}, {1, 0}}, 0, {0, 1});
  REQUIRE(v.ok());
  CHECK(v.group->op(1, 1) == 0);

  // all 27 associativity triples checked exhaustively
  GroupValidation z3 = validate_group({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 0, {0, 2, 1});
  REQUIRE(z3.ok());
}

TEST_CASE("validate_group rejects broken tables") {
  CHECK(has_violation(validate_group({{0, 1}, {1, 1}}, 0, {0, 1}).violations, "NotLatinSquare"));
  // valid Latin square whose claimed identity is wrong
  CHECK(has_violation(validate_group({{1, 0}, {0, 1}}, 0, {0, 1}).violations, "NoIdentity"));
  CHECK(has_violation(validate_group({{0, 1}, {1, 0}}, 0, {1, 0}).violations, "BadInverse"));
  // Latin square with identity that fails associativity somewhere
  std::vector<std::vector<int>> t = {{0, 1, 2, 3, 4},
                                     {1, 2, 3, 4, 0},
                                     {2, 3, 4, 0, 1},
                                     {3, 4, 0, 1, 2},
                                     {4, 0, 1, 2, 3}};
  std::swap(t[1][1], t[1][2]);
  std::swap(t[2][1], t[2][2]);
  const GroupValidation v = validate_group(t, 0, {0, 4, 3, 2, 1});
  CHECK_FALSE(v.ok());
  CHECK((has_violation(v.violations, "NotAssociative") ||
         has_violation(v.violations, "BadInverse") ||
         has_violation(v.violations, "NotLatinSquare")));
  CHECK(has_violation(validate_group({{0}}, 1, {0}).violations, "BadShape"));
}

TEST_CASE("validate_involution enforces exactly the three axioms") {
  FiniteGroup z3 = cyclic_group(3);

  InvolutionValidation good = validate_involution(z3, {0, 2, 1});
  REQUIRE(good.ok());
  CHECK(good.involution->homomorphism);  // negation is an automorphism of an abelian group

  CHECK(has_violation(validate_involution(z3, {1, 0, 2}).violations, "MovesIdentity"));
  CHECK(has_violation(validate_involution(z3, {0, 1, 0}).violations, "NotInvolutive"));

  // identity is always valid
  CHECK(validate_involution(z3, {0, 1, 2}).ok());

  // Klein four-group: swapping the two middle generators is a valid involution
  FiniteGroup k4 = direct_product(cyclic_group(2), cyclic_group(2));
  CHECK(validate_involution(k4, {0, 2, 1, 3}).ok());
}

TEST_CASE("inverse-compatibility axiom can fail on its own") {
  // Z4 with perm = swap(1,2): involutive, fixes e, but perm(inv(1)) = perm(3) = 3
  // while inv(perm(1)) = inv(2) = 2.
  FiniteGroup z4 = cyclic_group(4);
  InvolutionValidation v = validate_involution(z4, {0, 2, 1, 3});
  CHECK(has_violation(v.violations, "InverseIncompatible"));
}

TEST_CASE("builders produce validated objects") {
  CHECK(cyclic_group(1).n == 1);
  CHECK(dihedral_group(3).n == 6);
  CHECK(direct_product(cyclic_group(2), cyclic_group(3)).n == 6);

  // inverse involution on Z4 is k -> (4 - k) mod 4
  Involution alpha = inverse_involution(cyclic_group(4));
  CHECK(alpha.perm == std::vector<int>{0, 3, 2, 1});

  CHECK_THROWS_AS(cyclic_group(0), Error);
}

TEST_CASE("inverse involution is an antihomomorphism on dihedral groups") {
  FiniteGroup d3 = dihedral_group(3);
  Involution alpha = inverse_involution(d3);
  CHECK(alpha.antihomomorphism);
  CHECK_FALSE(alpha.homomorphism);
}

TEST_CASE("every built group passes validation and left translation permutes") {
  for (const FiniteGroup& g : {cyclic_group(5), dihedral_group(4),
                               direct_product(cyclic_group(2), dihedral_group(3))}) {
    std::vector<std::vector<int>> mul(g.n, std::vector<int>(g.n));
    for (std::size_t a = 0; a < g.n; ++a)
      for (std::size_t b = 0; b < g.n; ++b)
        mul[a][b] = g.op(static_cast<int>(a), static_cast<int>(b));
    CHECK(validate_group(mul, g.e, g.inv).ok());

    for (std::size_t a = 0; a < g.n; ++a) {
      std::vector<bool> seen(g.n, false);
      for (std::size_t b = 0; b < g.n; ++b)
        seen[g.op(static_cast<int>(a), static_cast<int>(b))] = true;
      for (bool s : seen) CHECK(s);
    }
  }
}

TEST_CASE("cyclic inverse involution formula") {
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{5}, std::size_t{8}}) {
    Involution alpha = inverse_involution(cyclic_group(n));
    for (std::size_t k = 0; k < n; ++k) CHECK(alpha.perm[k] == static_cast<int>((n - k) % n));
  }
}
