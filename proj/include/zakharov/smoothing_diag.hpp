#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "zakharov/alpha.hpp"
#include "zakharov/dynamics.hpp"
#include "zakharov/spectral.hpp"

namespace zakharov {

/// Difference between the nonlinear and the free evolution of the same data.
struct ResidueSample {
  double t = 0.0;
  FourierField residue_u;  // u(t) - e^{i alpha t d_xx} u(t0)
  FourierField residue_n;  // n_+(t) - e^{-itd} n_+(t0)
};

/// One residue per trajectory sample, measured from the first sample.
std::vector<ResidueSample> nonlinear_residue(const Trajectory& trajectory, double alpha);

/// Smoothing exponents that the theorems guarantee for admissible (s0, s1).
struct TheoryGains {
  double a0 = 0.0;
  double a1 = 0.0;
};

/// Nonresonant: a0 = min(1, 2 s0, 1 + 2 s1), a1 = min(1, 2 s0, 2 s0 - s1).
/// Resonant:    a0 = min(1, s1),             a1 = min(1, 2 s0 - s1 - 1).
TheoryGains theory_gains(double s0, double s1, bool resonant);

struct SmoothingConfig {
  Alpha alpha{3, 4};
  double s0 = 1.0;
  double s1 = 0.0;
  int N = 256;
  double dt = 0.0;  // <= 0: default_smoothing_step(N)
  double epsilon = 0.05;
  double nonlinearity = 1.0;
  std::vector<double> times{1.0, 5.0, 20.0};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8};
  FitRange fit{0, 0};  // lo <= 0: N/16 .. N/2
  double noise_floor = 1e-13;
};

/// min(N^{-3/2}, 3/N^2). The coupling oscillates like alpha (k^2 - (k-j)^2) in
/// the interaction picture; coarser steps leave an error floor in the top
/// modes of the residue that biases the regularity fit.
double default_smoothing_step(int N);

struct SmoothingSample {
  std::uint64_t seed = 0;
  double t = 0.0;
  double reg_u = 0.0;  // fitted regularities
  double reg_residue_u = 0.0;
  double reg_n = 0.0;
  double reg_residue_n = 0.0;
  double norm_u = 0.0;  // |u|_{H^s0}, |n_+|_{H^s1}
  double norm_n = 0.0;
  double residue_norm_u = 0.0;  // |residue_u|_{H^{s0 + a0 - 0.1}}
  double residue_norm_n = 0.0;  // |residue_n|_{H^{s1 + a1 - 0.1}}
  double gain_u() const { return reg_residue_u - reg_u; }
  double gain_n() const { return reg_residue_n - reg_n; }
};

struct SmoothingTimeSummary {
  double t = 0.0;
  double gain_u_mean = 0.0;
  double gain_u_min = 0.0;
  double gain_u_max = 0.0;
  double gain_n_mean = 0.0;
  double gain_n_min = 0.0;
  double gain_n_max = 0.0;
  double residue_norm_u_mean = 0.0;
  double residue_norm_n_mean = 0.0;
};

struct SmoothingReport {
  SmoothingConfig config;
  FitRange fit;
  double dt = 0.0;
  bool resonant = false;
  bool admissible = false;
  TheoryGains theory;
  std::vector<SmoothingSample> samples;  // seed-major, times ascending
  std::vector<SmoothingTimeSummary> per_time;
  double a0_hat = 0.0;  // mean gains over every seed and time
  double a1_hat = 0.0;
  double beta_u = 0.0;  // slope of log mean residue_norm_u against log(1+t)
  double beta_n = 0.0;
  double growth_ratio_u = 0.0;  // mean residue_norm_u at the last time over the first
};

/// Integrates every seed to each requested time and fits the regularity of
/// the solution and of its nonlinear residue. Seeds run in parallel; the
/// report does not depend on the thread count.
SmoothingReport smoothing_report(const SmoothingConfig& config);

/// CSV "seed,t,norm_s,residue_norm,fitted_reg_u,fitted_reg_res,norm_n,residue_norm_n,fitted_reg_n,fitted_reg_res_n".
void write_smoothing_csv(std::ostream& out, const SmoothingReport& report);

struct GrowthSeries {
  double s = 0.0;
  std::vector<double> norm;  // one value per trajectory sample
  double c2_hat = 0.0;       // slope of log norm against log(1 + t - t0)
  double exp_slope = 0.0;    // slope of log norm against t
  bool sub_exponential = true;
};

struct GrowthReport {
  std::vector<double> t;
  std::vector<GrowthSeries> u;  // |u|_{H^s} for each s
  std::vector<GrowthSeries> n;  // |n_+|_{H^s} for each s
};

/// Sobolev norms along a trajectory with polynomial and exponential fits.
/// A series is sub-exponential when exp_slope <= exp_threshold.
GrowthReport growth_track(const Trajectory& trajectory, std::span<const double> s_list,
                          double exp_threshold = 0.05);

}  // namespace zakharov
