#pragma once

#include <cstdint>

#include "acp/cmatrix.hpp"

namespace acp {

// SplitMix64-based generator. std::mt19937 plus the standard distributions
// would be deterministic per libstdc++ version only; this one produces the
// same stream on any conforming compiler, which the byte-identical-report
// requirement leans on.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  cx complex_uniform(double radius = 1.0) {
    return cx(uniform(-radius, radius), uniform(-radius, radius));
  }

  CMatrix complex_matrix(std::size_t rows, std::size_t cols, double radius = 1.0) {
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_uniform(radius);
    return m;
  }

  CMatrix hermitian_matrix(std::size_t n, double radius = 1.0) {
    CMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      m(r, r) = cx(uniform(-radius, radius), 0.0);
      for (std::size_t c = r + 1; c < n; ++c) {
        m(r, c) = complex_uniform(radius);
        m(c, r) = std::conj(m(r, c));
      }
    }
    return m;
  }

private:
  std::uint64_t state_;
};

}  // namespace acp
