#pragma once

#include <Eigen/Core>

#include "phsim/grid.hpp"

namespace phsim {

/// Nodal scalar field on a 1D grid.
class Field1D {
 public:
  Field1D() = default;
  explicit Field1D(const Grid1D& g)
      : grid_(g), v_(Eigen::VectorXd::Zero(g.node_count())) {}
  Field1D(const Grid1D& g, Eigen::VectorXd v);

  const Grid1D& grid() const { return grid_; }
  int size() const { return static_cast<int>(v_.size()); }

  double operator[](int i) const { return v_[i]; }
  double& operator[](int i) { return v_[i]; }

  const Eigen::VectorXd& values() const { return v_; }
  Eigen::VectorXd& values() { return v_; }

  /// Throws std::invalid_argument if any entry is NaN or Inf.
  void require_finite(const char* context) const;

 private:
  Grid1D grid_;
  Eigen::VectorXd v_;
};

/// Nodal scalar field on a 2D grid, stored row-per-z2-line (flat index
/// j * n1 + i).
class Field2D {
 public:
  Field2D() = default;
  explicit Field2D(const Grid2D& g)
      : grid_(g), v_(Eigen::VectorXd::Zero(g.node_count())) {}
  Field2D(const Grid2D& g, Eigen::VectorXd v);

  const Grid2D& grid() const { return grid_; }
  int size() const { return static_cast<int>(v_.size()); }

  double operator()(int i, int j) const { return v_[grid_.index(i, j)]; }
  double& operator()(int i, int j) { return v_[grid_.index(i, j)]; }

  const Eigen::VectorXd& values() const { return v_; }
  Eigen::VectorXd& values() { return v_; }

  void require_finite(const char* context) const;

 private:
  Grid2D grid_;
  Eigen::VectorXd v_;
};

void require_same_grid(const Field1D& a, const Field1D& b, const char* context);
void require_same_grid(const Field2D& a, const Field2D& b, const char* context);

/// Restriction of a field to one boundary edge, ordered by the tangential
/// coordinate. The 1D overload accepts B1 (z = 0) and B2 (z = L).
Eigen::VectorXd boundary_trace(const Field2D& f, Edge e);
double boundary_trace(const Field1D& f, Edge e);

}  // namespace phsim
