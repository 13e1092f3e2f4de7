#pragma once

#include <array>
#include <string>
#include <vector>

#include "phsim/beam.hpp"
#include "phsim/controller.hpp"
#include "phsim/plate.hpp"

namespace phsim {

/// Closed-loop invariant candidates C^lambda = xc^lambda + integral of
/// gamma^lambda w, together with the interconnection gain K of the coupling
/// uc = K (integrated y), u = -K' yc. The synthesized specs use
/// gamma^lambda = -g_2lambda (plate) and the negative discrete unit impulse
/// at A_lambda (beam) with K = I.
struct CasimirSpec2D {
  std::array<Field2D, 2> gamma;
  Eigen::Matrix2d K = Eigen::Matrix2d::Identity();
};

struct CasimirSpec1D {
  std::array<Field1D, 2> gamma;
  Eigen::Matrix2d K = Eigen::Matrix2d::Identity();
};

struct ResidualRow {
  std::string condition;
  double norm = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ResidualReport {
  std::vector<ResidualRow> rows;
  bool all_pass() const;
};

/// One CSV line per row: condition,norm,tolerance,pass with pass as 1 or 0.
void write_residual_report_csv(const ResidualReport& report,
                               const std::string& path);

/// Checks the invariance conditions of a distributed-input plant:
///   controller_rows        rows lambda of (Jc - Rc) vanish
///   gamma_input_match      gamma^lambda + sum_eta (Gc K)^{lambda eta} g_2eta
///                          vanishes nodewise
///   momentum_coefficient   the candidate density has no momentum slot
///   input_channel_pairing  contraction of the momentum coefficient with the
///                          input columns and Gc K vanishes
///   boundary_shear_trace,  boundary operator traces of the jet-free density
///   boundary_moment_trace  vanish on every edge
///   gamma_free_edge_trace  relative size of gamma on the free edges
///                          (supports the premise that patches stay interior)
///   gram_rank              the weighted Gram matrix of the gamma fields has
///                          full rank, otherwise the relation is degenerate
ResidualReport casimir_residuals_prop1(const PlatePlant& plant,
                                       const Controller& ctrl,
                                       const CasimirSpec2D& spec);

/// Checks the invariance conditions of a pointwise-input plant:
///   controller_rows        rows lambda of (Jc - Rc) vanish
///   offsupport_gamma       gamma^lambda vanishes away from the actuation
///                          nodes
///   actuation_pairing      (Gc K)^{lambda eta} + omega_{A_eta}
///                          gamma^lambda(A_eta) vanishes
///   gamma_end_values       gamma^lambda vanishes at both ends of the beam
///   momentum_coefficient, input_channel_pairing, boundary traces and
///   gram_rank as above.
ResidualReport casimir_residuals_prop2(const BeamPlant& plant,
                                       const Controller& ctrl,
                                       const CasimirSpec1D& spec);

}  // namespace phsim
