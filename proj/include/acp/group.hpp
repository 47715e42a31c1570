#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace acp {

// Finite group presented by its Cayley table. Immutable after validation.
struct FiniteGroup {
  std::size_t n = 0;
  std::vector<int> mul;  // row-major n*n table of element indices
  int e = 0;
  std::vector<int> inv;

  int op(int a, int b) const { return mul[static_cast<std::size_t>(a) * n + b]; }
  int inverse(int a) const { return inv[a]; }

  bool operator==(const FiniteGroup&) const = default;
};

// Involutive map alpha on element indices: alpha^2 = id, alpha(e) = e,
// alpha(g^-1) = alpha(g)^-1. Not required to be a homomorphism; the two
// flags are diagnostics only.
struct Involution {
  std::vector<int> perm;
  bool homomorphism = false;
  bool antihomomorphism = false;

  int operator()(int g) const { return perm[g]; }

  bool operator==(const Involution& o) const { return perm == o.perm; }
};

struct Violation {
  std::string axiom;       // NotAssociative, NoIdentity, BadInverse, NotLatinSquare,
                           // BadShape, NotInvolutive, MovesIdentity, InverseIncompatible
  std::vector<int> where;  // first failing triple/element indices
};

struct GroupValidation {
  std::vector<Violation> violations;
  std::optional<FiniteGroup> group;
  bool ok() const { return group.has_value(); }
};

struct InvolutionValidation {
  std::vector<Violation> violations;
  std::optional<Involution> involution;
  bool ok() const { return involution.has_value(); }
};

GroupValidation validate_group(const std::vector<std::vector<int>>& mul, int identity,
                               const std::vector<int>& inverse);
InvolutionValidation validate_involution(const FiniteGroup& g, const std::vector<int>& perm);

// Throwing counterparts for code that treats failure as a bug.
FiniteGroup make_group(const std::vector<std::vector<int>>& mul, int identity,
                       const std::vector<int>& inverse);
Involution make_involution(const FiniteGroup& g, const std::vector<int>& perm);

FiniteGroup cyclic_group(std::size_t n);
FiniteGroup dihedral_group(std::size_t n);  // order 2n; indices 0..n-1 rotations, n..2n-1 reflections
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

Involution identity_involution(const FiniteGroup& g);
Involution inverse_involution(const FiniteGroup& g);  // alpha(g) = g^-1

}  // namespace acp
