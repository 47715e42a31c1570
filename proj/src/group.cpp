#include "acp/group.hpp"

#include "acp/error.hpp"

namespace acp {

namespace {

std::string describe(const Violation& v) {
  std::string s = v.axiom + " at (";
  for (std::size_t i = 0; i < v.where.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.where[i]);
  }
  return s + ")";
}

}  // namespace

GroupValidation validate_group(const std::vector<std::vector<int>>& mul, int identity,
                               const std::vector<int>& inverse) {
  GroupValidation out;
  const std::size_t n = mul.size();
  auto bad_shape = [&](std::vector<int> where) {
    out.violations.push_back({"BadShape", std::move(where)});
  };

  if (n == 0 || inverse.size() != n || identity < 0 || static_cast<std::size_t>(identity) >= n) {
    bad_shape({});
    return out;
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (mul[r].size() != n) {
      bad_shape({static_cast<int>(r)});
      return out;
    }
    for (std::size_t c = 0; c < n; ++c)
      if (mul[r][c] < 0 || static_cast<std::size_t>(mul[r][c]) >= n) {
        bad_shape({static_cast<int>(r), static_cast<int>(c)});
        return out;
      }
  }
  for (std::size_t g = 0; g < n; ++g)
    if (inverse[g] < 0 || static_cast<std::size_t>(inverse[g]) >= n) {
      bad_shape({static_cast<int>(g)});
      return out;
    }

  // Latin square: each row and column is a permutation.
  for (std::size_t r = 0; r < n && out.violations.empty(); ++r) {
    std::vector<bool> seen(n, false);
    for (std::size_t c = 0; c < n; ++c) {
      if (seen[mul[r][c]]) {
        out.violations.push_back({"NotLatinSquare", {static_cast<int>(r), static_cast<int>(c)}});
        break;
      }
      seen[mul[r][c]] = true;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<bool> seen(n, false);
    bool hit = false;
    for (std::size_t r = 0; r < n; ++r) {
      if (seen[mul[r][c]]) {
        out.violations.push_back({"NotLatinSquare", {static_cast<int>(r), static_cast<int>(c)}});
        hit = true;
        break;
      }
      seen[mul[r][c]] = true;
    }
    if (hit) break;
  }

  for (std::size_t g = 0; g < n; ++g) {
    if (mul[identity][g] != static_cast<int>(g) || mul[g][identity] != static_cast<int>(g)) {
      out.violations.push_back({"NoIdentity", {static_cast<int>(g)}});
      break;
    }
  }
  for (std::size_t g = 0; g < n; ++g) {
    if (mul[g][inverse[g]] != identity || mul[inverse[g]][g] != identity) {
      out.violations.push_back({"BadInverse", {static_cast<int>(g)}});
      break;
    }
  }

  // exhaustive associativity; n is small by design
  bool assoc_done = false;
  for (std::size_t a = 0; a < n && !assoc_done; ++a)
    for (std::size_t b = 0; b < n && !assoc_done; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) {
          out.violations.push_back(
              {"NotAssociative", {static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)}});
          assoc_done = true;
          break;
        }

  if (!out.violations.empty()) return out;

  FiniteGroup g;
  g.n = n;
  g.e = identity;
  g.inv = inverse;
  g.mul.resize(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) g.mul[r * n + c] = mul[r][c];
  out.group = std::move(g);
  return out;
}

InvolutionValidation validate_involution(const FiniteGroup& g, const std::vector<int>& perm) {
  InvolutionValidation out;
  const std::size_t n = g.n;
  if (perm.size() != n) {
    out.violations.push_back({"BadShape", {}});
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (perm[i] < 0 || static_cast<std::size_t>(perm[i]) >= n) {
      out.violations.push_back({"BadShape", {static_cast<int>(i)}});
      return out;
    }

  for (std::size_t i = 0; i < n; ++i)
    if (perm[perm[i]] != static_cast<int>(i)) {
      out.violations.push_back({"NotInvolutive", {static_cast<int>(i)}});
      break;
    }
  if (perm[g.e] != g.e) out.violations.push_back({"MovesIdentity", {g.e}});
  for (std::size_t i = 0; i < n; ++i)
    if (perm[g.inv[i]] != g.inv[perm[i]]) {
      out.violations.push_back({"InverseIncompatible", {static_cast<int>(i)}});
      break;
    }

  if (!out.violations.empty()) return out;

  Involution alpha;
  alpha.perm = perm;
  alpha.homomorphism = true;
  alpha.antihomomorphism = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const int lhs = perm[g.op(static_cast<int>(a), static_cast<int>(b))];
      if (lhs != g.op(perm[a], perm[b])) alpha.homomorphism = false;
      if (lhs != g.op(perm[b], perm[a])) alpha.antihomomorphism = false;
    }
  out.involution = std::move(alpha);
  return out;
}

FiniteGroup make_group(const std::vector<std::vector<int>>& mul, int identity,
                       const std::vector<int>& inverse) {
  GroupValidation v = validate_group(mul, identity, inverse);
  if (!v.ok()) fail(v.violations.front().axiom, describe(v.violations.front()));
  return *v.group;
}

Involution make_involution(const FiniteGroup& g, const std::vector<int>& perm) {
  InvolutionValidation v = validate_involution(g, perm);
  if (!v.ok()) fail(v.violations.front().axiom, describe(v.violations.front()));
  return *v.involution;
}

FiniteGroup cyclic_group(std::size_t n) {
  if (n < 1) fail("InvalidParameter", "cyclic_group: n must be >= 1");
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  std::vector<int> inverse(n);
  for (std::size_t a = 0; a < n; ++a) {
    inverse[a] = static_cast<int>((n - a) % n);
    for (std::size_t b = 0; b < n; ++b) mul[a][b] = static_cast<int>((a + b) % n);
  }
  return make_group(mul, 0, inverse);
}

FiniteGroup dihedral_group(std::size_t n) {
  if (n < 1) fail("InvalidParameter", "dihedral_group: n must be >= 1");
  const std::size_t order = 2 * n;
  auto idx = [n](int flip, std::size_t rot) {
    return static_cast<int>(static_cast<std::size_t>(flip) * n + rot);
  };
  std::vector<std::vector<int>> mul(order, std::vector<int>(order));
  std::vector<int> inverse(order);
  // r^a r^b = r^(a+b); r^a s r^b = s r^(b-a); s r^a r^b = s r^(a+b); s r^a s r^b = r^(b-a)
  for (std::size_t a = 0; a < n; ++a) {
    inverse[idx(0, a)] = idx(0, (n - a) % n);
    inverse[idx(1, a)] = idx(1, a);
    for (std::size_t b = 0; b < n; ++b) {
      mul[idx(0, a)][idx(0, b)] = idx(0, (a + b) % n);
      mul[idx(0, a)][idx(1, b)] = idx(1, (b + n - a) % n);
      mul[idx(1, a)][idx(0, b)] = idx(1, (a + b) % n);
      mul[idx(1, a)][idx(1, b)] = idx(0, (b + n - a) % n);
    }
  }
  return make_group(mul, 0, inverse);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t n = a.n * b.n;
  auto idx = [&](int x, int y) { return static_cast<int>(static_cast<std::size_t>(x) * b.n + y); };
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  std::vector<int> inverse(n);
  for (std::size_t x1 = 0; x1 < a.n; ++x1)
    for (std::size_t y1 = 0; y1 < b.n; ++y1) {
      const int g1 = idx(static_cast<int>(x1), static_cast<int>(y1));
      inverse[g1] = idx(a.inv[x1], b.inv[y1]);
      for (std::size_t x2 = 0; x2 < a.n; ++x2)
        for (std::size_t y2 = 0; y2 < b.n; ++y2)
          mul[g1][idx(static_cast<int>(x2), static_cast<int>(y2))] =
              idx(a.op(static_cast<int>(x1), static_cast<int>(x2)),
                  b.op(static_cast<int>(y1), static_cast<int>(y2)));
    }
  return make_group(mul, idx(a.e, b.e), inverse);
}

Involution identity_involution(const FiniteGroup& g) {
  std::vector<int> perm(g.n);
  for (std::size_t i = 0; i < g.n; ++i) perm[i] = static_cast<int>(i);
  return make_involution(g, perm);
}

Involution inverse_involution(const FiniteGroup& g) {
  InvolutionValidation v = validate_involution(g, g.inv);
  if (!v.ok()) fail("InverseIncompatible", describe(v.violations.front()));
  return *v.involution;
}

}  // namespace acp
