#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "phsim/beam.hpp"
#include "phsim/controller.hpp"
#include "phsim/plant_core.hpp"
#include "phsim/plate.hpp"
#include "phsim/synthesis.hpp"

namespace phsim {

/// Power-conserving coupling of the plant and controller ports:
///   uc = K y,   u = -K' yc,
/// so u . y + uc . yc = 0 holds exactly for every K.
struct PortCoupling {
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  Eigen::Vector2d uc = Eigen::Vector2d::Zero();
};

PortCoupling pcis_couple(const Eigen::Vector2d& y, const Eigen::Vector2d& yc,
                         const Eigen::Matrix2d& K);

/// Largest RK4-stable step for the plant alone,
///   dt = safety * 2 sqrt(2) / omega_max,
/// with safety in (0, 1].
double stability_dt(const PlatePlant& plant, double safety = 0.8);
double stability_dt(const BeamPlant& plant, double safety = 0.8);

/// One logged sample of the coupled trajectory.
struct DiagnosticsRecord {
  double t = 0.0;
  double H = 0.0;     // plant energy
  double Hc = 0.0;    // controller energy
  double Hcl = 0.0;   // H + Hc
  double dHcl = 0.0;  // chain-rule energy rate at this instant
  std::array<double, 2> casimir_drift{0.0, 0.0};
  double eq_error = 0.0;  // weighted relative distance from the target shape
  std::array<double, 2> u{0.0, 0.0};
  std::array<double, 2> yc{0.0, 0.0};
};

struct SimOptions {
  double t_final = 50.0;
  double dt = 0.0;  // explicit step size, used only when dt_auto is false
  bool dt_auto = true;
  int log_every = 1000;  // steps between logged samples
  double safety = 0.8;             // plant stability margin, in (0, 1]
  double controller_safety = 0.9;  // controller stability margin, in (0, 1]
  double blowup_factor = 1e6;      // |Hcl| growth bound before aborting
};

/// Semi-discrete plant coupled with an optional finite-dimensional
/// controller through pcis_couple.  Without a controller the inputs are held
/// at zero and the controller diagnostics read as zero.  The conserved
/// quantities C^lambda = xc_lambda + casimir_vector[lambda] . w are tracked
/// relative to their initial values.
class CoupledSystem {
 public:
  CoupledSystem(PlantCore core, std::optional<Controller> controller,
                const Eigen::Matrix2d& K,
                std::array<Eigen::VectorXd, 2> casimir_vectors,
                Eigen::VectorXd w_desired, Eigen::VectorXd w0,
                Eigen::VectorXd p0);

  const PlantCore& core() const { return core_; }
  const std::optional<Controller>& controller() const { return controller_; }
  double time() const { return t_; }
  const Eigen::VectorXd& w() const { return w_; }
  const Eigen::VectorXd& p() const { return p_; }
  Eigen::Vector4d controller_state() const;
  const Eigen::VectorXd& w_desired() const { return w_desired_; }

  /// Stable step honoring the plant spectrum and, when a controller is
  /// present, its eigenvalues; the candidate is checked against the RK4
  /// stability region and halved until inside it.
  double auto_dt(const SimOptions& opts) const;

  /// Advances one classical RK4 step of size dt.
  void step(double dt);

  /// Energies, energy rate, invariant drift, distance from the target shape
  /// and port values at the current state.
  DiagnosticsRecord diagnostics() const;

  /// Time derivative of the full coupled state; dw, dp must be preallocated
  /// to the plant size.
  void rhs(const Eigen::VectorXd& w, const Eigen::VectorXd& p,
           const Eigen::Vector4d& xc, Eigen::VectorXd& dw, Eigen::VectorXd& dp,
           Eigen::Vector4d& dxc) const;

 private:
  PlantCore core_;
  std::optional<Controller> controller_;
  Eigen::Matrix2d K_;
  std::array<Eigen::VectorXd, 2> cas_vec_;
  Eigen::VectorXd w_desired_;
  double wd_norm_ = 0.0;
  std::array<double, 2> casimir_ref_{0.0, 0.0};

  double t_ = 0.0;
  Eigen::VectorXd w_, p_;
  Eigen::Vector4d xc_ = Eigen::Vector4d::Zero();

  // preallocated RK4 stages
  mutable std::array<Eigen::VectorXd, 4> kw_, kp_;
  mutable Eigen::VectorXd wt_, pt_;
};

/// Integrates for ceil(t_final / dt) constant steps, logging the initial
/// state, every log_every-th step and the final step.  Throws BlowupError
/// when a logged |Hcl| is not finite or exceeds blowup_factor times its
/// initial magnitude.
std::vector<DiagnosticsRecord> simulate(
    CoupledSystem& system, const SimOptions& opts,
    const std::function<void(const DiagnosticsRecord&)>& on_log = {});

CoupledSystem make_closed_loop(const PlatePlant& plant,
                               const PlateSynthesis& syn);
CoupledSystem make_closed_loop(const BeamPlant& plant,
                               const BeamSynthesis& syn);
CoupledSystem make_open_loop(const PlatePlant& plant,
                             const Field2D& w_desired);
CoupledSystem make_open_loop(const BeamPlant& plant,
                             const Field1D& w_desired);

}  // namespace phsim
