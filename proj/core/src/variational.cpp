#include "phsim/variational.hpp"

#include <cmath>

#include "phsim/diff.hpp"
#include "phsim/quadrature.hpp"

namespace phsim {

namespace {

struct PlateMoments {
  Field2D m1;   // Xi (w20 + nu w02)
  Field2D m2;   // Xi (nu w20 + w02)
  Field2D m12;  // 2 Xi (1 - nu) w11
};

PlateMoments plate_moments(const QuadraticDensity2D& d, const Field2D& w) {
  const Field2D w20 = diff(w, {2, 0});
  const Field2D w02 = diff(w, {0, 2});
  const Field2D w11 = diff(w, {1, 1});
  const Eigen::ArrayXd xi = d.Xi.values().array();
  PlateMoments m{Field2D(d.grid()), Field2D(d.grid()), Field2D(d.grid())};
  m.m1.values() =
      (xi * (w20.values().array() + d.nu * w02.values().array())).matrix();
  m.m2.values() =
      (xi * (d.nu * w20.values().array() + w02.values().array())).matrix();
  m.m12.values() =
      (2.0 * (1.0 - d.nu) * xi * w11.values().array()).matrix();
  return m;
}

Eigen::VectorXd edge_weights(int n, double h) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, h);
  w[0] *= 0.5;
  w[n - 1] *= 0.5;
  return w;
}

bool edge_normal_is_z1(Edge e) { return e == Edge::B1 || e == Edge::B3; }

}  // namespace

Field1D var_deriv_w_1d(const QuadraticDensity1D& d, const Field1D& w) {
  require_same_grid(d.rhoA, w, "var_deriv_w_1d");
  Field1D m = diff(w, {2, 0});
  m.values() = (d.EI.values().array() * m.values().array()).matrix();
  return diff(m, {2, 0});
}

Field2D var_deriv_w_2d(const QuadraticDensity2D& d, const Field2D& w) {
  require_same_grid(d.mu, w, "var_deriv_w_2d");
  const PlateMoments m = plate_moments(d, w);
  Field2D out(d.grid());
  out.values() = diff(m.m1, {2, 0}).values() + diff(m.m2, {0, 2}).values() +
                 diff(m.m12, {1, 1}).values();
  return out;
}

Field1D var_deriv_p(const QuadraticDensity1D& d, const Field1D& p) {
  require_same_grid(d.rhoA, p, "var_deriv_p");
  p.require_finite("var_deriv_p");
  Field1D out(d.grid());
  out.values() = (p.values().array() / d.rhoA.values().array()).matrix();
  return out;
}

Field2D var_deriv_p(const QuadraticDensity2D& d, const Field2D& p) {
  require_same_grid(d.mu, p, "var_deriv_p");
  p.require_finite("var_deriv_p");
  Field2D out(d.grid());
  out.values() = (p.values().array() / d.mu.values().array()).matrix();
  return out;
}

BoundaryData1D boundary_ops_1d(const QuadraticDensity1D& d, const Field1D& w) {
  require_same_grid(d.rhoA, w, "boundary_ops_1d");
  Field1D m = diff(w, {2, 0});
  m.values() = (d.EI.values().array() * m.values().array()).matrix();
  Field1D dm = diff(m, {1, 0});

  BoundaryData1D out;
  out.start.shear = -dm[0];
  out.start.moment = m[0];
  out.end.shear = -dm[dm.size() - 1];
  out.end.moment = m[m.size() - 1];
  return out;
}

BoundaryData2D boundary_ops_2d(const QuadraticDensity2D& d, const Field2D& w,
                               Edge edge) {
  require_same_grid(d.mu, w, "boundary_ops_2d");
  const PlateMoments m = plate_moments(d, w);

  Field2D shear(d.grid());
  const Field2D* moment = nullptr;
  if (edge_normal_is_z1(edge)) {
    shear.values() =
        -(diff(m.m1, {1, 0}).values() + diff(m.m12, {0, 1}).values());
    moment = &m.m1;
  } else {
    shear.values() =
        -(diff(m.m2, {0, 1}).values() + diff(m.m12, {1, 0}).values());
    moment = &m.m2;
  }

  BoundaryData2D out;
  out.shear = boundary_trace(shear, edge);
  out.moment = boundary_trace(*moment, edge);
  return out;
}

BoundaryData1D boundary_ops_1d(const LinearDensity1D& c) {
  Field1D shear(c.grid());
  shear.values() = c.a1.values() - diff(c.a2, {1, 0}).values();

  BoundaryData1D out;
  out.start.shear = shear[0];
  out.start.moment = c.a2[0];
  out.end.shear = shear[shear.size() - 1];
  out.end.moment = c.a2[c.a2.size() - 1];
  return out;
}

BoundaryData2D boundary_ops_2d(const LinearDensity2D& c, Edge edge) {
  Field2D shear(c.grid());
  const Field2D* moment = nullptr;
  if (edge_normal_is_z1(edge)) {
    shear.values() = c.a10.values() - diff(c.a20, {1, 0}).values() -
                     diff(c.a11, {0, 1}).values();
    moment = &c.a20;
  } else {
    shear.values() = c.a01.values() - diff(c.a02, {0, 1}).values() -
                     diff(c.a11, {1, 0}).values();
    moment = &c.a02;
  }

  BoundaryData2D out;
  out.shear = boundary_trace(shear, edge);
  out.moment = boundary_trace(*moment, edge);
  return out;
}

double quadrature_energy(const QuadraticDensity1D& d, const Field1D& w,
                         const Field1D& p) {
  require_same_grid(d.rhoA, w, "quadrature_energy");
  require_same_grid(d.rhoA, p, "quadrature_energy");
  p.require_finite("quadrature_energy");
  const Eigen::ArrayXd w2 = diff(w, {2, 0}).values().array();
  const Eigen::ArrayXd density =
      p.values().array().square() / (2.0 * d.rhoA.values().array()) +
      0.5 * d.EI.values().array() * w2.square();
  return trapezoid_weights(d.grid()).dot(density.matrix());
}

double quadrature_energy(const QuadraticDensity2D& d, const Field2D& w,
                         const Field2D& p) {
  require_same_grid(d.mu, w, "quadrature_energy");
  require_same_grid(d.mu, p, "quadrature_energy");
  p.require_finite("quadrature_energy");
  const Eigen::ArrayXd w20 = diff(w, {2, 0}).values().array();
  const Eigen::ArrayXd w02 = diff(w, {0, 2}).values().array();
  const Eigen::ArrayXd w11 = diff(w, {1, 1}).values().array();
  const Eigen::ArrayXd xi = d.Xi.values().array();
  const Eigen::ArrayXd density =
      p.values().array().square() / (2.0 * d.mu.values().array()) +
      0.5 * xi *
          (w20.square() + w02.square() + 2.0 * d.nu * w20 * w02 +
           2.0 * (1.0 - d.nu) * w11.square());
  return trapezoid_weights(d.grid()).dot(density.matrix());
}

double energy_rate(const QuadraticDensity1D& d, const Field1D& w,
                   const Field1D& p, const Field1D& vw, const Field1D& vp) {
  require_same_grid(d.rhoA, vw, "energy_rate");
  require_same_grid(d.rhoA, vp, "energy_rate");
  const Eigen::ArrayXd w2 = diff(w, {2, 0}).values().array();
  const Eigen::ArrayXd v2 = diff(vw, {2, 0}).values().array();
  const Eigen::ArrayXd rate =
      d.EI.values().array() * w2 * v2 +
      p.values().array() * vp.values().array() / d.rhoA.values().array();
  return trapezoid_weights(d.grid()).dot(rate.matrix());
}

double energy_rate(const QuadraticDensity2D& d, const Field2D& w,
                   const Field2D& p, const Field2D& vw, const Field2D& vp) {
  require_same_grid(d.mu, vw, "energy_rate");
  require_same_grid(d.mu, vp, "energy_rate");
  const PlateMoments m = plate_moments(d, w);
  const Eigen::ArrayXd v20 = diff(vw, {2, 0}).values().array();
  const Eigen::ArrayXd v02 = diff(vw, {0, 2}).values().array();
  const Eigen::ArrayXd v11 = diff(vw, {1, 1}).values().array();
  const Eigen::ArrayXd rate =
      m.m1.values().array() * v20 + m.m2.values().array() * v02 +
      m.m12.values().array() * v11 +
      p.values().array() * vp.values().array() / d.mu.values().array();
  return trapezoid_weights(d.grid()).dot(rate.matrix());
}

DecompositionResult decomposition_check(const QuadraticDensity1D& d,
                                        const Field1D& w, const Field1D& p,
                                        const Field1D& vw, const Field1D& vp) {
  DecompositionResult r;
  r.rate_chain = energy_rate(d, w, p, vw, vp);

  const Eigen::ArrayXd dom =
      vw.values().array() * var_deriv_w_1d(d, w).values().array() +
      vp.values().array() * var_deriv_p(d, p).values().array();
  r.domain_term = trapezoid_weights(d.grid()).dot(dom.matrix());

  const BoundaryData1D bd = boundary_ops_1d(d, w);
  const Field1D vw1 = diff(vw, {1, 0});
  const int n = vw.size();
  const double upper = vw[n - 1] * bd.end.shear + vw1[n - 1] * bd.end.moment;
  const double lower = vw[0] * bd.start.shear + vw1[0] * bd.start.moment;
  r.boundary_term = upper - lower;

  r.residual = std::abs(r.rate_chain - r.domain_term - r.boundary_term);
  return r;
}

DecompositionResult decomposition_check(const QuadraticDensity2D& d,
                                        const Field2D& w, const Field2D& p,
                                        const Field2D& vw, const Field2D& vp) {
  DecompositionResult r;
  r.rate_chain = energy_rate(d, w, p, vw, vp);

  const Eigen::ArrayXd dom =
      vw.values().array() * var_deriv_w_2d(d, w).values().array() +
      vp.values().array() * var_deriv_p(d, p).values().array();
  r.domain_term = trapezoid_weights(d.grid()).dot(dom.matrix());

  const Grid2D& g = d.grid();
  const Field2D vn1 = diff(vw, {1, 0});
  const Field2D vn2 = diff(vw, {0, 1});
  double boundary = 0.0;
  for (Edge e : {Edge::B1, Edge::B2, Edge::B3, Edge::B4}) {
    const bool normal_z1 = edge_normal_is_z1(e);
    const BoundaryData2D bd = boundary_ops_2d(d, w, e);
    const Eigen::VectorXd v = boundary_trace(vw, e);
    const Eigen::VectorXd vn = boundary_trace(normal_z1 ? vn1 : vn2, e);
    const Eigen::VectorXd wt = normal_z1 ? edge_weights(g.n2, g.h2)
                                         : edge_weights(g.n1, g.h1);
    const double term =
        wt.dot((v.array() * bd.shear.array() + vn.array() * bd.moment.array())
                   .matrix());
    const double sign = (e == Edge::B3 || e == Edge::B4) ? 1.0 : -1.0;
    boundary += sign * term;
  }
  r.boundary_term = boundary;

  r.residual = std::abs(r.rate_chain - r.domain_term - r.boundary_term);
  return r;
}

}  // namespace phsim
