#include "phsim/grid.hpp"

#include <stdexcept>
#include <string>

namespace phsim {

Grid1D::Grid1D(int n_, double length_) : n(n_), length(length_) {
  if (n < kMinNodesPerSide) {
    throw std::invalid_argument("Grid1D: need at least " +
                                std::to_string(kMinNodesPerSide) +
                                " nodes, got " + std::to_string(n));
  }
  if (!(length > 0.0)) {
    throw std::invalid_argument("Grid1D: length must be positive");
  }
  spacing = length / (n - 1);
}

Grid2D::Grid2D(int n1_, int n2_, double L1_, double L2_)
    : n1(n1_), n2(n2_), L1(L1_), L2(L2_) {
  if (n1 < kMinNodesPerSide || n2 < kMinNodesPerSide) {
    throw std::invalid_argument("Grid2D: need at least " +
                                std::to_string(kMinNodesPerSide) +
                                " nodes per side");
  }
  if (!(L1 > 0.0) || !(L2 > 0.0)) {
    throw std::invalid_argument("Grid2D: side lengths must be positive");
  }
  h1 = L1 / (n1 - 1);
  h2 = L2 / (n2 - 1);
}

bool same_grid(const Grid1D& a, const Grid1D& b) {
  return a.n == b.n && a.length == b.length;
}

bool same_grid(const Grid2D& a, const Grid2D& b) {
  return a.n1 == b.n1 && a.n2 == b.n2 && a.L1 == b.L1 && a.L2 == b.L2;
}

}  // namespace phsim
