#include "phsim/diff.hpp"

#include <stdexcept>
#include <vector>

namespace phsim {

namespace {

// One second-order pass along a contiguous line of n values. The closures
// are the standard one-sided second-order rows; they are assembled from the
// same repeated differences as the interior stencils.
void deriv_line(const double* a, double* out, int n, double h, int order) {
  switch (order) {
    case 1: {
      const double inv = 1.0 / (2.0 * h);
      {
        const double d0 = a[1] - a[0];
        const double d1 = a[2] - a[1];
        out[0] = (3.0 * d0 - d1) * inv;
      }
      for (int i = 1; i < n - 1; ++i) out[i] = (a[i + 1] - a[i - 1]) * inv;
      {
        const double d0 = a[n - 1] - a[n - 2];
        const double d1 = a[n - 2] - a[n - 3];
        out[n - 1] = (3.0 * d0 - d1) * inv;
      }
      break;
    }
    case 2: {
      const double inv = 1.0 / (h * h);
      auto S = [&](int k) {
        return (a[k + 2] - a[k + 1]) - (a[k + 1] - a[k]);
      };
      out[0] = (2.0 * S(0) - S(1)) * inv;
      for (int i = 1; i < n - 1; ++i) out[i] = S(i - 1) * inv;
      out[n - 1] = (2.0 * S(n - 3) - S(n - 4)) * inv;
      break;
    }
    case 3: {
      const double inv = 1.0 / (2.0 * h * h * h);
      auto T = [&](int k) {
        const double s0 = (a[k + 2] - a[k + 1]) - (a[k + 1] - a[k]);
        const double s1 = (a[k + 3] - a[k + 2]) - (a[k + 2] - a[k + 1]);
        return s1 - s0;
      };
      out[0] = (5.0 * T(0) - 3.0 * T(1)) * inv;
      out[1] = (3.0 * T(0) - T(1)) * inv;
      for (int i = 2; i < n - 2; ++i) out[i] = (T(i - 2) + T(i - 1)) * inv;
      out[n - 2] = (3.0 * T(n - 4) - T(n - 5)) * inv;
      out[n - 1] = (5.0 * T(n - 4) - 3.0 * T(n - 5)) * inv;
      break;
    }
    case 4: {
      const double h2 = h * h;
      const double inv = 1.0 / (h2 * h2);
      auto T = [&](int k) {
        const double s0 = (a[k + 2] - a[k + 1]) - (a[k + 1] - a[k]);
        const double s1 = (a[k + 3] - a[k + 2]) - (a[k + 2] - a[k + 1]);
        return s1 - s0;
      };
      auto Q = [&](int k) { return T(k + 1) - T(k); };
      out[0] = (3.0 * Q(0) - 2.0 * Q(1)) * inv;
      out[1] = (2.0 * Q(0) - Q(1)) * inv;
      for (int i = 2; i < n - 2; ++i) out[i] = Q(i - 2) * inv;
      out[n - 2] = (2.0 * Q(n - 5) - Q(n - 6)) * inv;
      out[n - 1] = (3.0 * Q(n - 5) - 2.0 * Q(n - 6)) * inv;
      break;
    }
    default:
      throw std::invalid_argument("diff: unsupported derivative order");
  }
}

void validate_order(const MultiIndex& J) {
  if (J.j1 < 0 || J.j2 < 0) {
    throw std::invalid_argument("diff: negative derivative order");
  }
  if (J.total() > kMaxDerivOrder) {
    throw std::invalid_argument("diff: total derivative order exceeds 4");
  }
}

}  // namespace

Field1D diff(const Field1D& f, const MultiIndex& J) {
  validate_order(J);
  if (J.j2 != 0) {
    throw std::invalid_argument("diff: 1D field has no second direction");
  }
  f.require_finite("diff");
  if (J.j1 == 0) return f;
  Field1D out(f.grid());
  deriv_line(f.values().data(), out.values().data(), f.grid().n,
             f.grid().spacing, J.j1);
  return out;
}

Field2D diff(const Field2D& f, const MultiIndex& J) {
  validate_order(J);
  f.require_finite("diff");
  Field2D out = f;
  const Grid2D& g = f.grid();
  if (J.j1 > 0) {
    std::vector<double> line(g.n1), dline(g.n1);
    for (int j = 0; j < g.n2; ++j) {
      for (int i = 0; i < g.n1; ++i) line[i] = out(i, j);
      deriv_line(line.data(), dline.data(), g.n1, g.h1, J.j1);
      for (int i = 0; i < g.n1; ++i) out(i, j) = dline[i];
    }
  }
  if (J.j2 > 0) {
    std::vector<double> line(g.n2), dline(g.n2);
    for (int i = 0; i < g.n1; ++i) {
      for (int j = 0; j < g.n2; ++j) line[j] = out(i, j);
      deriv_line(line.data(), dline.data(), g.n2, g.h2, J.j2);
      for (int j = 0; j < g.n2; ++j) out(i, j) = dline[j];
    }
  }
  return out;
}

}  // namespace phsim
