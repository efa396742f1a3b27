#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "zakharov/alpha.hpp"
#include "zakharov/dynamics.hpp"

namespace zakharov {

/// Damped, forced system: the conservative equations with -gamma u, -gamma n_+
/// and a time-independent forcing -i f on the u equation. The wave forcing is zero.
struct DampedParams {
  Alpha alpha{3, 4};
  double gamma = 0.1;
  FourierField forcing;  // empty: unforced
};

/// f = c cos(K x): equal real amplitudes on k = +-K, scaled to the requested H^1 norm.
FourierField low_mode_forcing(int radius, int K = 3, double h1_norm = 1.0);

EvolutionModel damped_model(const DampedParams& params);
StateDerivative rhs_damped(const ZakharovState& state, const DampedParams& params);

/// Q = |u|_{H^1} + |n_+|_{L^2} + |n_-|_{L^2} = |u|_{H^1} + 2 |n_+|_{L^2}
double absorbing_norm(const ZakharovState& state);

struct DecayFit {
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  double max_residual = 0.0;       // max_t |Q - fit|
  double rms_residual = 0.0;
  double relative_residual = 0.0;  // rms_residual / Q(0)
  bool converged = false;
};

/// Relative least-squares fit (weights 1/Q^2) of C1 + C2 e^{-C3 t} by variable
/// projection: C1, C2 are solved linearly for each C3, and C3 is found by
/// Brent's method on log C3. The reported residuals are absolute.
DecayFit fit_exponential_decay(std::span<const double> t, std::span<const double> q);

struct DissipativeEnsembleConfig {
  DampedParams params;
  int N = 64;
  double dt = 0.0;  // <= 0: default_damped_step
  double t_end = 100.0;
  double sample_stride = 0.5;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8};
  double amplitude = 1.0;  // initial data are scaled random H^s0 x H^s1 fields
  double s0 = 1.0;
  double s1 = 0.0;
};

/// Step for the damped runs: the conservative smoothing step divided by the
/// data amplitude, capped at 0.01.
double default_damped_step(int N, double amplitude);

ZakharovState dissipative_initial_state(const DissipativeEnsembleConfig& config, std::uint64_t seed);

struct TrajectoryDecay {
  std::uint64_t seed = 0;
  std::vector<double> t;
  std::vector<double> q;
  DecayFit fit;
  bool flagged = false;  // fit did not converge
};

struct AbsorbingReport {
  std::vector<TrajectoryDecay> runs;
  double C1_mean = 0.0;
  double C1_spread = 0.0;  // (max - min) / mean over unflagged runs
  double C3_mean = 0.0;
  bool C3_within_factor_two = false;  // every C3 in [gamma/2, 2 gamma]
  double max_relative_residual = 0.0;
};

AbsorbingReport absorbing_fit(const DissipativeEnsembleConfig& config);

/// CSV "seed,t,Q,fit" for every run.
void write_absorbing_csv(std::ostream& out, const AbsorbingReport& report);

struct SmoothPartSample {
  double t = 0.0;
  FourierField u;                   // N_t, Schroedinger part
  FourierField n_plus;              // N_t, wave part
  FourierField resonant_integral;   // int_0^t e^{L(t-t')} rho1 dt'; empty when nonresonant
  double reassembly_error = 0.0;    // |linear + N_t - i integral - state| (max over modes)
};

/// N_t = state(t) - damped linear flow of state(t0), plus i times the resonant
/// Duhamel integral when 1/alpha is a positive integer. The integral is a
/// composite trapezoid over the trajectory samples in the interaction picture,
/// which must be equally spaced with spacing <= 0.01 / gamma
/// (std::invalid_argument otherwise).
std::vector<SmoothPartSample> smooth_part(const Trajectory& trajectory, const DampedParams& params);

struct AttractorConfig {
  DissipativeEnsembleConfig ensemble;  // t_end 50 and sample_stride 0.01/gamma by default here
  std::vector<std::uint64_t> second_seeds{101, 102, 103, 104, 105, 106, 107, 108};
  std::vector<double> a_list{0.25, 0.5, 0.75};
  double window_start = 5.0;
  AttractorConfig() {
    ensemble.t_end = 50.0;
    ensemble.sample_stride = 0.1;
  }
};

struct AttractorMember {
  std::uint64_t seed = 0;
  std::vector<double> sup_norm;  // per a: sup over the window of |N_t^u|_{H^{1+a}} + |N_t^n|_{H^a}
  std::vector<double> sup_norm_u;  // per a: the Schroedinger part alone
  double max_reassembly_error = 0.0;
  ZakharovState final_state;
};

struct AttractorEnsemble {
  std::vector<AttractorMember> members;
  std::vector<double> R_hat;   // per a: max over members
  std::vector<double> spread;  // per a: max / min over members
  double diameter = 0.0;       // max pairwise H^1 x L^2 distance at t_end
  double max_reassembly_error = 0.0;
};

struct AttractorReport {
  std::vector<double> a_list;
  AttractorEnsemble first;
  AttractorEnsemble second;
  std::vector<double> agreement;  // per a: |R_first - R_second| / max(R_first, R_second)
  double linear_decay_error = 0.0;  // relative, worst mode band
};

AttractorReport attractor_probe(const AttractorConfig& config);

/// Damped linear flow without coupling: each band 2^i <= |k| < 2^{i+1}
/// decays like e^{-gamma t}. Returns the worst relative deviation over bands.
double linear_decay_check(int N, const DampedParams& params, double t_end);

}  // namespace zakharov
