#pragma once

#include <functional>
#include <string>
#include <vector>

#include "srf/lattice.hpp"

namespace srf {

// full: velocities from the banded linear system coupling every dual edge.
// zeroth_order: the leading-order closed-form rates, resolved pointwise.
// continuum_limit: the reduced difference-quotient right-hand sides.
enum class FlowMode { full, zeroth_order, continuum_limit };

enum class Integrator { euler, rk45 };

enum class StopReason {
  none,
  max_time,
  min_rho,
  realizability,
  singular_system,
  non_finite,
  dt_underflow,
};

const char* to_string(StopReason r);

struct FlowConfig {
  FlowMode mode = FlowMode::full;
  Integrator integrator = Integrator::rk45;
  double dt_init = 1e-6;
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  double max_time = 1.0;
  double min_rho_factor = 1e-3;  // stop when min rho falls below factor * initial waist
  int sample_every = 1;          // record every k-th accepted step
  double monitor_delta = 0.1;    // tolerance delta of the waist-bound window
  int dump_states_every = 0;     // 0 = keep only the final state
  Closure closure = Closure::reflective;

  void validate() const;
};

struct TrajectorySample {
  double t;
  double rho_min;    // waist radius if one exists, else the global minimum
  double T_est;      // running singularity-time estimate (NaN early on)
  double ratio;      // rho_min^2 / (T_est - t), NaN if no estimate
  double max_K;
  double min_a;
  int min_rho_index;  // 1-based level of rho_min
};

struct FlowTrajectory {
  std::vector<TrajectorySample> samples;
  std::vector<LatticeState> dumps;
  LatticeState final_state;
  StopReason stop = StopReason::none;
  std::string stop_message;
  double T_est = 0.0;            // estimate at the final sample
  bool waist_applicable = false; // every sample had an interior waist
};

struct MonitorResult {
  bool applicable = false;
  bool pass = false;
  double T_est = 0.0;
  std::vector<double> ratios;  // over the final decade of T - t
};

// Flow rate of the axial dual edge at interior level i (1-based): the
// prescribed value of d(ln alpha_i)/dt.
double ricci_alpha(const LatticeState& st, int i);

// Flow rate of the cross-sectional dual edge on the band at level i; needs
// level i+1 interior as well (1 < i < n_levels - 1).
double ricci_sigma(const LatticeState& st, int i);

struct ReducedRhs {
  std::vector<double> rho_dot;  // n_levels
  std::vector<double> a_dot;    // n_levels - 1
  std::vector<double> q;        // per-level d(ln a)/dt field before averaging
};

// Velocities in zeroth_order or continuum_limit mode (throws for full).
ReducedRhs reduced_rhs(const LatticeState& st, FlowMode mode, Closure closure);

struct VelocityField {
  std::vector<double> rho_dot;
  std::vector<double> a_dot;
  double pivot_ratio = 0.0;  // max/min pivot magnitude of the banded LU
};

// Recover velocities from prescribed dual-edge rates by solving the banded
// chain-rule system J (rho_dot, a_dot) = (rate*alpha, rate*sigma).
// rate_alpha has one entry per level, rate_sigma one per band.
VelocityField assemble_velocity_system(const LatticeState& st,
                                       const std::vector<double>& rate_alpha,
                                       const std::vector<double>& rate_sigma, Closure closure);

// Velocities in the configured mode, including rate evaluation.
VelocityField flow_velocities(const LatticeState& st, FlowMode mode, Closure closure);

FlowTrajectory integrate(const LatticeState& st0, const FlowConfig& cfg);

MonitorResult monitor_waist_bound(const FlowTrajectory& traj, double delta = 0.1);

namespace detail {

// Ghost-extended copies of the level/band arrays for the chosen closure.
void extend_ghosts(const std::vector<double>& rho, const std::vector<double>& a,
                   Closure closure, std::vector<double>& rho_ext, std::vector<double>& a_ext);

// Shared explicit integrator driving a flat state vector. rhs may throw
// SrfError(realizability) for states leaving the valid set; the driver then
// shrinks the step. diagnostics(y) is called on accepted samples.
struct FlatDiagnostics {
  double rho_min;     // waist radius if one exists, else rho_global; drives the stop rule
  double rho_global;  // plain minimum over all levels
  double min_a;
  double max_K;
  int min_rho_index;  // 1-based
  bool has_waist;
};

struct FlatTrajectory {
  std::vector<TrajectorySample> samples;
  std::vector<std::pair<double, std::vector<double>>> dumps;
  std::vector<double> y_final;
  double t_final = 0.0;
  StopReason stop = StopReason::none;
  std::string stop_message;
  double T_est = 0.0;
  bool waist_applicable = false;
};

FlatTrajectory integrate_flat(const std::vector<double>& y0, const FlowConfig& cfg,
                              const std::function<void(double, const std::vector<double>&,
                                                       std::vector<double>&)>& rhs,
                              const std::function<FlatDiagnostics(const std::vector<double>&)>&
                                  diagnostics);

}  // namespace detail
}  // namespace srf
