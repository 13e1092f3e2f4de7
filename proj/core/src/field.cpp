#include "phsim/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace phsim {

namespace {

void check_finite(const Eigen::VectorXd& v, const char* context) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(context) +
                                ": field contains NaN or Inf");
  }
}

}  // namespace

Field1D::Field1D(const Grid1D& g, Eigen::VectorXd v)
    : grid_(g), v_(std::move(v)) {
  if (v_.size() != g.node_count()) {
    throw std::invalid_argument("Field1D: value count does not match grid");
  }
}

void Field1D::require_finite(const char* context) const {
  check_finite(v_, context);
}

Field2D::Field2D(const Grid2D& g, Eigen::VectorXd v)
    : grid_(g), v_(std::move(v)) {
  if (v_.size() != g.node_count()) {
    throw std::invalid_argument("Field2D: value count does not match grid");
  }
}

void Field2D::require_finite(const char* context) const {
  check_finite(v_, context);
}

void require_same_grid(const Field1D& a, const Field1D& b,
                       const char* context) {
  if (!same_grid(a.grid(), b.grid())) {
    throw std::invalid_argument(std::string(context) + ": grid mismatch");
  }
}

void require_same_grid(const Field2D& a, const Field2D& b,
                       const char* context) {
  if (!same_grid(a.grid(), b.grid())) {
    throw std::invalid_argument(std::string(context) + ": grid mismatch");
  }
}

Eigen::VectorXd boundary_trace(const Field2D& f, Edge e) {
  const Grid2D& g = f.grid();
  Eigen::VectorXd out;
  switch (e) {
    case Edge::B1:  // z1 = 0, tangential coordinate z2
      out.resize(g.n2);
      for (int j = 0; j < g.n2; ++j) out[j] = f(0, j);
      break;
    case Edge::B3:  // z1 = L1
      out.resize(g.n2);
      for (int j = 0; j < g.n2; ++j) out[j] = f(g.n1 - 1, j);
      break;
    case Edge::B2:  // z2 = 0, tangential coordinate z1
      out.resize(g.n1);
      for (int i = 0; i < g.n1; ++i) out[i] = f(i, 0);
      break;
    case Edge::B4:  // z2 = L2
      out.resize(g.n1);
      for (int i = 0; i < g.n1; ++i) out[i] = f(i, g.n2 - 1);
      break;
  }
  return out;
}

double boundary_trace(const Field1D& f, Edge e) {
  switch (e) {
    case Edge::B1:
      return f[0];
    case Edge::B2:
      return f[f.size() - 1];
    default:
      throw std::invalid_argument(
          "boundary_trace: 1D fields only have edges B1 and B2");
  }
}

}  // namespace phsim
