#include "phsim/closed_loop.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include "phsim/errors.hpp"

namespace phsim {

namespace {

// RK4 stability bounds: the interval [-2.7853, 0] on the real axis and
// [-2 sqrt(2), 2 sqrt(2)] on the imaginary axis.
constexpr double kRk4RealAxis = 2.7853;
constexpr double kRk4ImagAxis = 2.8284271247461903;

double rk4_gain(std::complex<double> z) {
  return std::abs(1.0 + z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0))));
}

void require_margin(double value, const char* name) {
  if (!(value > 0.0) || value > 1.0) {
    throw std::invalid_argument(std::string(name) + " must lie in (0, 1]");
  }
}

double plant_only_dt(const PlantCore& core, double safety, const char* who) {
  require_margin(safety, "safety");
  if (!(core.omega_max > 0.0)) {
    throw std::invalid_argument(std::string(who) +
                                ": plant has no frequency bound");
  }
  return safety * kRk4ImagAxis / core.omega_max;
}

std::array<Eigen::VectorXd, 2> weighted_pair(const PlantCore& core,
                                             const Eigen::VectorXd& a,
                                             const Eigen::VectorXd& b) {
  return {(core.weights.array() * a.array()).matrix().eval(),
          (core.weights.array() * b.array()).matrix().eval()};
}

std::array<Eigen::VectorXd, 2> zero_pair(int n) {
  return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
}

}  // namespace

PortCoupling pcis_couple(const Eigen::Vector2d& y, const Eigen::Vector2d& yc,
                         const Eigen::Matrix2d& K) {
  PortCoupling ports;
  ports.uc = K * y;
  ports.u = -K.transpose() * yc;
  return ports;
}

double stability_dt(const PlatePlant& plant, double safety) {
  return plant_only_dt(plant.core(), safety, "stability_dt");
}

double stability_dt(const BeamPlant& plant, double safety) {
  return plant_only_dt(plant.core(), safety, "stability_dt");
}

CoupledSystem::CoupledSystem(PlantCore core,
                             std::optional<Controller> controller,
                             const Eigen::Matrix2d& K,
                             std::array<Eigen::VectorXd, 2> casimir_vectors,
                             Eigen::VectorXd w_desired, Eigen::VectorXd w0,
                             Eigen::VectorXd p0)
    : core_(std::move(core)),
      controller_(std::move(controller)),
      K_(K),
      cas_vec_(std::move(casimir_vectors)),
      w_desired_(std::move(w_desired)),
      w_(std::move(w0)),
      p_(std::move(p0)) {
  const int N = core_.N;
  if (w_.size() != N || p_.size() != N || w_desired_.size() != N ||
      cas_vec_[0].size() != N || cas_vec_[1].size() != N) {
    throw std::invalid_argument("CoupledSystem: state size mismatch");
  }
  if (controller_) {
    controller_->validate();
    xc_ = controller_->xc;
  }
  for (int i : core_.pinned) {
    w_[i] = 0.0;
    p_[i] = 0.0;
  }
  wd_norm_ = std::max(
      std::sqrt((core_.weights.array() * w_desired_.array().square()).sum()),
      1e-12);
  for (int lam = 0; lam < 2; ++lam) {
    casimir_ref_[lam] = xc_[lam] + cas_vec_[lam].dot(w_);
  }
  for (auto& k : kw_) k.resize(N);
  for (auto& k : kp_) k.resize(N);
  wt_.resize(N);
  pt_.resize(N);
}

Eigen::Vector4d CoupledSystem::controller_state() const { return xc_; }

void CoupledSystem::rhs(const Eigen::VectorXd& w, const Eigen::VectorXd& p,
                        const Eigen::Vector4d& xc, Eigen::VectorXd& dw,
                        Eigen::VectorXd& dp, Eigen::Vector4d& dxc) const {
  std::array<double, 2> u{0.0, 0.0};
  dxc.setZero();
  if (controller_) {
    const Eigen::Vector4d grad = grad_Hc(controller_->ham, xc);
    const Eigen::Vector2d yc = controller_->Gc.transpose() * grad;
    const std::array<double, 2> youts = plant_core_outputs(core_, p);
    const PortCoupling ports =
        pcis_couple(Eigen::Vector2d(youts[0], youts[1]), yc, K_);
    u = {ports.u[0], ports.u[1]};
    dxc = (controller_->Jc - controller_->Rc) * grad +
          controller_->Gc * ports.uc;
  }
  plant_core_rhs(core_, w.data(), p.data(), u, dw.data(), dp.data());
}

void CoupledSystem::step(double dt) {
  std::array<Eigen::Vector4d, 4> kx;
  Eigen::Vector4d xt;

  rhs(w_, p_, xc_, kw_[0], kp_[0], kx[0]);
  wt_ = w_ + (0.5 * dt) * kw_[0];
  pt_ = p_ + (0.5 * dt) * kp_[0];
  xt = xc_ + (0.5 * dt) * kx[0];

  rhs(wt_, pt_, xt, kw_[1], kp_[1], kx[1]);
  wt_ = w_ + (0.5 * dt) * kw_[1];
  pt_ = p_ + (0.5 * dt) * kp_[1];
  xt = xc_ + (0.5 * dt) * kx[1];

  rhs(wt_, pt_, xt, kw_[2], kp_[2], kx[2]);
  wt_ = w_ + dt * kw_[2];
  pt_ = p_ + dt * kp_[2];
  xt = xc_ + dt * kx[2];

  rhs(wt_, pt_, xt, kw_[3], kp_[3], kx[3]);

  const double c = dt / 6.0;
  w_ += c * (kw_[0] + 2.0 * kw_[1] + 2.0 * kw_[2] + kw_[3]);
  p_ += c * (kp_[0] + 2.0 * kp_[1] + 2.0 * kp_[2] + kp_[3]);
  xc_ += c * (kx[0] + 2.0 * kx[1] + 2.0 * kx[2] + kx[3]);
  for (int i : core_.pinned) {
    w_[i] = 0.0;
    p_[i] = 0.0;
  }
  t_ += dt;
}

DiagnosticsRecord CoupledSystem::diagnostics() const {
  DiagnosticsRecord rec;
  rec.t = t_;
  rec.H = plant_hamiltonian(core_, w_, p_);

  Eigen::Vector4d dxc;
  rhs(w_, p_, xc_, kw_[0], kp_[0], dxc);
  double rate = (core_.Kel * w_).dot(kw_[0]);
  rate += (core_.weights.array() * kp_[0].array() * p_.array() *
           core_.inv_mass.array())
              .sum();

  if (controller_) {
    const Eigen::Vector4d grad = grad_Hc(controller_->ham, xc_);
    rec.Hc = controller_hamiltonian(controller_->ham, xc_);
    rate += grad.dot(dxc);
    const Eigen::Vector2d yc = controller_->Gc.transpose() * grad;
    const std::array<double, 2> youts = plant_core_outputs(core_, p_);
    const PortCoupling ports =
        pcis_couple(Eigen::Vector2d(youts[0], youts[1]), yc, K_);
    rec.u = {ports.u[0], ports.u[1]};
    rec.yc = {yc[0], yc[1]};
    for (int lam = 0; lam < 2; ++lam) {
      rec.casimir_drift[lam] =
          xc_[lam] + cas_vec_[lam].dot(w_) - casimir_ref_[lam];
    }
  }
  rec.Hcl = rec.H + rec.Hc;
  rec.dHcl = rate;
  rec.eq_error =
      std::sqrt(
          (core_.weights.array() * (w_ - w_desired_).array().square()).sum()) /
      wd_norm_;
  return rec;
}

double CoupledSystem::auto_dt(const SimOptions& opts) const {
  require_margin(opts.controller_safety, "controller_safety");
  double dt = plant_only_dt(core_, opts.safety, "auto_dt");

  std::array<std::complex<double>, 4> ctrl_eigs{};
  int n_eigs = 0;
  if (controller_) {
    Eigen::Matrix4d hess = Eigen::Matrix4d::Zero();
    hess(0, 0) = controller_->ham.c1;
    hess(1, 1) = controller_->ham.c2;
    hess.block<2, 2>(2, 2) = controller_->ham.Mc;
    const Eigen::Matrix4d A = (controller_->Jc - controller_->Rc) * hess;
    Eigen::EigenSolver<Eigen::Matrix4d> es(A);
    double rho = 0.0;
    for (int i = 0; i < 4; ++i) {
      ctrl_eigs[n_eigs++] = es.eigenvalues()[i];
      rho = std::max(rho, std::abs(es.eigenvalues()[i]));
    }
    if (rho > 0.0) {
      dt = std::min(dt, opts.controller_safety * kRk4RealAxis / rho);
    }
  }

  for (int halvings = 0; halvings < 200; ++halvings) {
    bool stable =
        rk4_gain(std::complex<double>(0.0, dt * core_.omega_max)) <=
        1.0 + 1e-12;
    for (int i = 0; i < n_eigs; ++i) {
      stable = stable && rk4_gain(dt * ctrl_eigs[i]) <= 1.0 + 1e-12;
    }
    if (stable) return dt;
    dt *= 0.5;
  }
  throw std::runtime_error("auto_dt: no stable step found");
}

std::vector<DiagnosticsRecord> simulate(
    CoupledSystem& system, const SimOptions& opts,
    const std::function<void(const DiagnosticsRecord&)>& on_log) {
  if (!(opts.t_final >= 0.0)) {
    throw std::invalid_argument("simulate: t_final must be nonnegative");
  }
  if (opts.log_every < 1) {
    throw std::invalid_argument("simulate: log_every must be at least 1");
  }
  if (!(opts.blowup_factor > 0.0)) {
    throw std::invalid_argument("simulate: blowup_factor must be positive");
  }
  double dt = 0.0;
  if (opts.dt_auto) {
    dt = system.auto_dt(opts);
  } else {
    if (!(opts.dt > 0.0)) {
      throw std::invalid_argument("simulate: dt must be positive");
    }
    dt = opts.dt;
  }

  const long long steps =
      opts.t_final <= 0.0
          ? 0
          : static_cast<long long>(std::ceil(opts.t_final / dt - 1e-9));

  std::vector<DiagnosticsRecord> records;
  records.reserve(
      static_cast<std::size_t>(steps / opts.log_every + 2));

  DiagnosticsRecord rec = system.diagnostics();
  if (!std::isfinite(rec.Hcl)) {
    throw BlowupError("simulate: initial energy is not finite");
  }
  const double ref = std::max(std::abs(rec.Hcl), 1e-12);
  records.push_back(rec);
  if (on_log) on_log(rec);

  for (long long s = 1; s <= steps; ++s) {
    system.step(dt);
    if (s % opts.log_every == 0 || s == steps) {
      rec = system.diagnostics();
      if (!std::isfinite(rec.Hcl) ||
          std::abs(rec.Hcl) > opts.blowup_factor * ref) {
        throw BlowupError("simulate: energy left the stable range at t = " +
                          std::to_string(rec.t));
      }
      records.push_back(rec);
      if (on_log) on_log(rec);
    }
  }
  return records;
}

CoupledSystem make_closed_loop(const PlatePlant& plant,
                               const PlateSynthesis& syn) {
  return CoupledSystem(
      plant.core(), syn.controller, syn.spec.K,
      weighted_pair(plant.core(), syn.spec.gamma[0].values(),
                    syn.spec.gamma[1].values()),
      syn.w_desired.values(), plant.w().values(), plant.p().values());
}

CoupledSystem make_closed_loop(const BeamPlant& plant,
                               const BeamSynthesis& syn) {
  return CoupledSystem(
      plant.core(), syn.controller, syn.spec.K,
      weighted_pair(plant.core(), syn.spec.gamma[0].values(),
                    syn.spec.gamma[1].values()),
      syn.w_desired.values(), plant.w().values(), plant.p().values());
}

CoupledSystem make_open_loop(const PlatePlant& plant,
                             const Field2D& w_desired) {
  require_same_grid(w_desired, plant.g2(1), "make_open_loop");
  return CoupledSystem(plant.core(), std::nullopt,
                       Eigen::Matrix2d::Identity(),
                       zero_pair(plant.core().N), w_desired.values(),
                       plant.w().values(), plant.p().values());
}

CoupledSystem make_open_loop(const BeamPlant& plant,
                             const Field1D& w_desired) {
  require_same_grid(w_desired, plant.density().rhoA, "make_open_loop");
  return CoupledSystem(plant.core(), std::nullopt,
                       Eigen::Matrix2d::Identity(),
                       zero_pair(plant.core().N), w_desired.values(),
                       plant.w().values(), plant.p().values());
}

}  // namespace phsim
