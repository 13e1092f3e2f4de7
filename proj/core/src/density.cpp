#include "phsim/density.hpp"

#include <stdexcept>

namespace phsim {

namespace {

void require_positive(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite() || (v.array() <= 0.0).any()) {
    throw std::invalid_argument(std::string(what) +
                                " must be positive and finite everywhere");
  }
}

}  // namespace

QuadraticDensity1D::QuadraticDensity1D(Field1D rhoA_, Field1D EI_)
    : rhoA(std::move(rhoA_)), EI(std::move(EI_)) {
  require_same_grid(rhoA, EI, "QuadraticDensity1D");
  require_positive(rhoA.values(), "QuadraticDensity1D: rhoA");
  require_positive(EI.values(), "QuadraticDensity1D: EI");
}

QuadraticDensity2D::QuadraticDensity2D(Field2D mu_, Field2D Xi_, double nu_)
    : mu(std::move(mu_)), Xi(std::move(Xi_)), nu(nu_) {
  require_same_grid(mu, Xi, "QuadraticDensity2D");
  require_positive(mu.values(), "QuadraticDensity2D: mu");
  require_positive(Xi.values(), "QuadraticDensity2D: Xi");
  if (!(nu >= 0.0 && nu < 0.5)) {
    throw std::invalid_argument("QuadraticDensity2D: nu must lie in [0, 0.5)");
  }
}

LinearDensity1D::LinearDensity1D(const Grid1D& g) : a0(g), a1(g), a2(g) {}

LinearDensity1D::LinearDensity1D(Field1D a0_, Field1D a1_, Field1D a2_)
    : a0(std::move(a0_)), a1(std::move(a1_)), a2(std::move(a2_)) {
  require_same_grid(a0, a1, "LinearDensity1D");
  require_same_grid(a0, a2, "LinearDensity1D");
}

LinearDensity2D::LinearDensity2D(const Grid2D& g)
    : a0(g), a10(g), a01(g), a20(g), a11(g), a02(g) {}

LinearDensity2D::LinearDensity2D(Field2D a0_, Field2D a10_, Field2D a01_,
                                 Field2D a20_, Field2D a11_, Field2D a02_)
    : a0(std::move(a0_)),
      a10(std::move(a10_)),
      a01(std::move(a01_)),
      a20(std::move(a20_)),
      a11(std::move(a11_)),
      a02(std::move(a02_)) {
  require_same_grid(a0, a10, "LinearDensity2D");
  require_same_grid(a0, a01, "LinearDensity2D");
  require_same_grid(a0, a20, "LinearDensity2D");
  require_same_grid(a0, a11, "LinearDensity2D");
  require_same_grid(a0, a02, "LinearDensity2D");
}

}  // namespace phsim
