#pragma once

#include <Eigen/SparseCore>
#include <vector>

namespace phsim {

/// Fixed-offset form of a sparse nodewise linear operator on a structured
/// n1 x n2 grid (n2 = 1 for 1D). Every nonzero A(r, c) must connect nodes
/// whose (i, j) index offset lies within +/- 2 per axis; the operator is then
/// stored as one dense coefficient array per occurring offset and applied as
/// fused shift-multiply-accumulate passes over the valid index rectangle.
/// This is the fast path for the time stepping loops.
class StencilTable {
 public:
  StencilTable() = default;

  static StencilTable from_sparse(const Eigen::SparseMatrix<double>& A, int n1,
                                  int n2);

  /// y = A x; x and y hold n1 * n2 values in flat j * n1 + i order and must
  /// not alias.
  void apply(const double* x, double* y) const;

  int offset_count() const { return static_cast<int>(passes_.size()); }
  int size() const { return n1_ * n2_; }

 private:
  struct Pass {
    int di = 0, dj = 0;
    std::vector<double> coef;  // per-row coefficient, zero where out of range
  };

  int n1_ = 0, n2_ = 0;
  std::vector<Pass> passes_;
};

}  // namespace phsim
