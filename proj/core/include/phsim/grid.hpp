#pragma once

namespace phsim {

/// Minimum node count per direction. The interior 4th-derivative stencils and
/// their one-sided closures need six nodes; nine keeps at least one genuinely
/// interior node between the two closure bands.
inline constexpr int kMinNodesPerSide = 9;

/// Highest jet order handled by the difference operators.
inline constexpr int kMaxDerivOrder = 4;

/// Uniform grid on [0, length] with n nodes, node i at i * spacing.
struct Grid1D {
  int n = 0;
  double length = 0.0;
  double spacing = 0.0;

  Grid1D() = default;
  Grid1D(int n_, double length_);

  double node(int i) const { return spacing * i; }
  int node_count() const { return n; }
};

/// Uniform tensor grid on [0, L1] x [0, L2]. Node (i, j) sits at
/// (i * h1, j * h2) and is stored at flat index j * n1 + i, so a stored row
/// holds one z2 = const grid line ordered by z1.
struct Grid2D {
  int n1 = 0, n2 = 0;
  double L1 = 0.0, L2 = 0.0;
  double h1 = 0.0, h2 = 0.0;

  Grid2D() = default;
  Grid2D(int n1_, int n2_, double L1_, double L2_);

  double z1(int i) const { return h1 * i; }
  double z2(int j) const { return h2 * j; }
  int index(int i, int j) const { return j * n1 + i; }
  int node_count() const { return n1 * n2; }
};

bool same_grid(const Grid1D& a, const Grid1D& b);
bool same_grid(const Grid2D& a, const Grid2D& b);

/// Boundary naming. 2D: B1 is z1 = 0 (the clamped side of the plate model),
/// B2 is z2 = 0, B3 is z1 = L1, B4 is z2 = L2. 1D: B1 is z = 0, B2 is z = L.
enum class Edge { B1, B2, B3, B4 };

/// Derivative multi-index; j2 stays 0 for 1D fields. Total order is capped at
/// kMaxDerivOrder.
struct MultiIndex {
  int j1 = 0;
  int j2 = 0;

  int total() const { return j1 + j2; }
};

}  // namespace phsim
