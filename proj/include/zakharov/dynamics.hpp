#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "zakharov/alpha.hpp"
#include "zakharov/fourier_field.hpp"
#include "zakharov/state.hpp"

namespace zakharov {

struct ModelParams {
  Alpha alpha{1.0};
  /// Multiplies both coupling terms; 0 gives the decoupled linear flows.
  double nonlinearity = 1.0;
};

/// Everything the integrator needs: diagonal linear rates plus the coupling.
/// The conservative system is gamma = 0 with no forcing.
///
///   du_k/dt   = (-i alpha k^2 - gamma) u_k - i c (n u)_k - i f_k
///   dn+_j/dt  = (-i |j| - gamma) n+_j - i c |j| (|u|^2)_j,   j != 0
///
/// with n = (n_+ + n_-)/2 and c the nonlinearity switch.
struct EvolutionModel {
  double alpha = 1.0;
  double gamma = 0.0;
  double nonlinearity = 1.0;
  FourierField forcing;  // empty: unforced

  static EvolutionModel conservative(const ModelParams& params);
};

struct StateDerivative {
  FourierField du;
  FourierField dn_plus;
};

/// Alias-free evaluator for the quadratic coupling (n u) and |u|^2 on a padded
/// grid. Not thread-safe; one per thread.
class CouplingEvaluator {
 public:
  explicit CouplingEvaluator(int radius);
  ~CouplingEvaluator();
  CouplingEvaluator(const CouplingEvaluator&) = delete;
  CouplingEvaluator& operator=(const CouplingEvaluator&) = delete;

  int radius() const { return radius_; }
  int grid_size() const { return grid_; }

  /// n_u = (Re(n_+) u)_k and power = (|u|^2)_j for |k|, |j| <= radius.
  void evaluate(std::span<const Complex> u, std::span<const Complex> n_plus,
                std::span<Complex> n_u, std::span<Complex> power);

 private:
  int radius_;
  int grid_;
  struct Buffers;
  std::unique_ptr<Buffers> buf_;
};

StateDerivative rhs(const ZakharovState& state, const EvolutionModel& model);
StateDerivative rhs(const ZakharovState& state, const ModelParams& params);

/// (e^{i alpha t d_xx} u0)_k = e^{-i alpha k^2 t} u0_k
FourierField linear_flow_schrodinger(const FourierField& u0, double t, double alpha);
/// (e^{-itd} n0)_j = e^{-i|j|t} n0_j
FourierField linear_flow_wave_plus(const FourierField& n0, double t);

struct IntegrationOptions {
  double dt = 0.0;              // <= 0 selects 0.5 / N^2
  double t_end = 0.0;
  double sample_stride = 0.0;   // <= 0: only the initial and final states
  double blowup_threshold = 1e8;
};

double default_time_step(int radius);

using Trajectory = std::vector<ZakharovState>;
using SampleObserver = std::function<void(const ZakharovState&)>;

/// Fourth-order integrating-factor Runge-Kutta (Lawson) in the interaction
/// picture: the linear phases and damping are applied exactly, only the
/// coupling is discretized. Emits the initial state and every state at a
/// multiple of sample_stride. Throws BlowUpError when any l^2 norm exceeds
/// blowup_threshold or a coefficient becomes non-finite.
void integrate(const ZakharovState& initial, const EvolutionModel& model,
               const IntegrationOptions& options, const SampleObserver& observer);
Trajectory integrate(const ZakharovState& initial, const EvolutionModel& model,
                     const IntegrationOptions& options);
Trajectory integrate(const ZakharovState& initial, const ModelParams& params,
                     const IntegrationOptions& options);

double mass(const ZakharovState& state);

struct EnergyParts {
  double kinetic = 0.0;        // alpha sum k^2 |u_k|^2
  double wave = 0.0;           // (|n_+|^2 + |n_-|^2)/4
  double coupling = 0.0;       // sum_j n_j (|u|^2)_{-j}
  double imaginary_residue = 0.0;
  double total() const { return kinetic + wave + coupling; }
};

EnergyParts energy_parts(const ZakharovState& state, double alpha);
double energy(const ZakharovState& state, const ModelParams& params);

/// d(mass)/dt and dE/dt along a derivative, by the chain rule.
double mass_rate(const ZakharovState& state, const StateDerivative& d);
double energy_rate(const ZakharovState& state, const StateDerivative& d, double alpha);

/// CSV rows "t,k,re_u,im_u,re_np,im_np".
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
/// CSV "t,mass,energy,u_H^s...,np_H^s..." for each s in s_list.
void write_diagnostics_csv(std::ostream& out, const Trajectory& trajectory, double alpha,
                           std::span<const double> s_list);

}  // namespace zakharov
