#include "phsim/stencil_table.hpp"

#include <cstring>
#include <stdexcept>

namespace phsim {

StencilTable StencilTable::from_sparse(const Eigen::SparseMatrix<double>& A,
                                       int n1, int n2) {
  const int N = n1 * n2;
  if (A.rows() != N || A.cols() != N) {
    throw std::invalid_argument("StencilTable: matrix size does not match grid");
  }

  StencilTable t;
  t.n1_ = n1;
  t.n2_ = n2;

  auto pass_for = [&t, N](int di, int dj) -> Pass& {
    for (Pass& p : t.passes_) {
      if (p.di == di && p.dj == dj) return p;
    }
    t.passes_.push_back(Pass{di, dj, std::vector<double>(N, 0.0)});
    return t.passes_.back();
  };

  for (int outer = 0; outer < A.outerSize(); ++outer) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, outer); it; ++it) {
      if (it.value() == 0.0) continue;
      const int r = static_cast<int>(it.row());
      const int c = static_cast<int>(it.col());
      const int ri = r % n1, rj = r / n1;
      const int ci = c % n1, cj = c / n1;
      const int di = ci - ri, dj = cj - rj;
      if (di < -2 || di > 2 || dj < -2 || dj > 2) {
        throw std::invalid_argument(
            "StencilTable: entry couples nodes farther than two spacings "
            "apart");
      }
      pass_for(di, dj).coef[r] += it.value();
    }
  }
  return t;
}

void StencilTable::apply(const double* x, double* y) const {
  const int N = n1_ * n2_;
  std::memset(y, 0, sizeof(double) * static_cast<size_t>(N));
  for (const Pass& p : passes_) {
    const int i_lo = p.di < 0 ? -p.di : 0;
    const int i_hi = p.di > 0 ? n1_ - p.di : n1_;  // exclusive
    const int j_lo = p.dj < 0 ? -p.dj : 0;
    const int j_hi = p.dj > 0 ? n2_ - p.dj : n2_;
    const int shift = p.dj * n1_ + p.di;
    const double* coef = p.coef.data();
    for (int j = j_lo; j < j_hi; ++j) {
      const int row = j * n1_;
      const double* xs = x + row + shift;
      const double* cs = coef + row;
      double* ys = y + row;
      for (int i = i_lo; i < i_hi; ++i) {
        ys[i] += cs[i] * xs[i];
      }
    }
  }
}

}  // namespace phsim
