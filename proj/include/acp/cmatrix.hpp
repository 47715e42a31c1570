#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace acp {

using cx = std::complex<double>;

// Dense row-major complex matrix. Everything in this project is at most a few
// hundred rows, so there is no attempt at blocking or sparsity; determinism
// and clarity win over speed.
class CMatrix {
public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cx(0.0, 0.0)) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  cx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<cx>& data() const { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conjugate() const;

  // Submatrix of size (nr, nc) with top-left corner (r0, c0).
  CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const CMatrix& m);
  CMatrix column(std::size_t c) const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cx s);

  double max_norm() const;  // max |entry|
  double fro_norm() const;
  bool all_finite() const;

  // max |A - A*| over entries; requires square.
  double hermitian_deviation() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cx s, CMatrix a);
CMatrix operator*(double s, CMatrix a);

// (a + a*)/2
CMatrix hermitian_part(const CMatrix& a);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace acp
