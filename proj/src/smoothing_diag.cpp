#include "zakharov/smoothing_diag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "zakharov/multiplier_bounds.hpp"
#include "zakharov/normal_form.hpp"
#include "zakharov/parallel.hpp"
#include "zakharov/reduction.hpp"

namespace zakharov {

std::vector<ResidueSample> nonlinear_residue(const Trajectory& trajectory, double alpha) {
  std::vector<ResidueSample> out;
  if (trajectory.empty()) return out;
  const ZakharovState& first = trajectory.front();
  out.reserve(trajectory.size());
  for (const ZakharovState& s : trajectory) {
    const double t = s.t - first.t;
    out.push_back({s.t, s.u - linear_flow_schrodinger(first.u, t, alpha),
                   s.n_plus - linear_flow_wave_plus(first.n_plus, t)});
  }
  return out;
}

TheoryGains theory_gains(double s0, double s1, bool resonant) {
  if (resonant) return {std::min(1.0, s1), std::min(1.0, 2.0 * s0 - s1 - 1.0)};
  return {std::min({1.0, 2.0 * s0, 1.0 + 2.0 * s1}), std::min({1.0, 2.0 * s0, 2.0 * s0 - s1})};
}

double default_smoothing_step(int N) {
  const double n = static_cast<double>(N);
  return std::min(std::pow(n, -1.5), 3.0 / (n * n));
}

namespace {

std::vector<SmoothingSample> run_seed(const SmoothingConfig& c, std::uint64_t seed, FitRange fit,
                                      double dt, TheoryGains gains) {
  const EvolutionModel model{c.alpha.value(), 0.0, c.nonlinearity, {}};
  const ZakharovState initial = random_initial_state(c.N, c.s0, c.s1, seed, c.epsilon);
  std::vector<SmoothingSample> out;
  ZakharovState state = initial;
  for (double t : c.times) {
    IntegrationOptions opt;
    opt.dt = dt;
    opt.t_end = t;
    state = integrate(state, model, opt).back();
    const ResidueSample r = nonlinear_residue({initial, state}, c.alpha.value()).back();
    SmoothingSample s;
    s.seed = seed;
    s.t = t;
    s.reg_u = fit_regularity(state.u, fit, c.noise_floor);
    s.reg_residue_u = fit_regularity(r.residue_u, fit, c.noise_floor);
    s.reg_n = fit_regularity(state.n_plus, fit, c.noise_floor);
    s.reg_residue_n = fit_regularity(r.residue_n, fit, c.noise_floor);
    s.norm_u = sobolev_norm(state.u, c.s0);
    s.norm_n = sobolev_norm(state.n_plus, c.s1);
    s.residue_norm_u = sobolev_norm(r.residue_u, c.s0 + gains.a0 - 0.1);
    s.residue_norm_n = sobolev_norm(r.residue_n, c.s1 + gains.a1 - 0.1);
    out.push_back(s);
  }
  return out;
}

double log_slope_vs_log1pt(std::span<const double> t, std::span<const double> v) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (v[i] > 0.0) {
      x.push_back(std::log1p(t[i]));
      y.push_back(std::log(v[i]));
    }
  }
  return x.size() >= 2 ? least_squares_slope(x, y) : 0.0;
}

}  // namespace

SmoothingReport smoothing_report(const SmoothingConfig& config) {
  if (config.N < 16) throw std::invalid_argument("smoothing: N must be at least 16");
  if (config.times.empty() || config.seeds.empty())
    throw std::invalid_argument("smoothing: times and seeds must be nonempty");
  if (!std::is_sorted(config.times.begin(), config.times.end()) || !(config.times.front() > 0.0))
    throw std::invalid_argument("smoothing: times must be positive and ascending");

  SmoothingReport rep;
  rep.config = config;
  rep.fit = config.fit.lo > 0 ? config.fit : FitRange{config.N / 16, config.N / 2};
  rep.dt = config.dt > 0.0 ? config.dt : default_smoothing_step(config.N);
  rep.resonant = ResonanceClassifier(config.alpha).mode() == ResonanceMode::Resonant;
  rep.admissible = is_admissible_pair(config.s0, config.s1, rep.resonant);
  rep.theory = theory_gains(config.s0, config.s1, rep.resonant);

  std::vector<std::vector<SmoothingSample>> per_seed(config.seeds.size());
  parallel_for(config.seeds.size(), [&](std::size_t i) {
    per_seed[i] = run_seed(config, config.seeds[i], rep.fit, rep.dt, rep.theory);
  });
  for (const auto& v : per_seed) rep.samples.insert(rep.samples.end(), v.begin(), v.end());

  const std::size_t nt = config.times.size();
  const double seeds = static_cast<double>(config.seeds.size());
  std::vector<double> mean_res_u(nt), mean_res_n(nt);
  for (std::size_t it = 0; it < nt; ++it) {
    SmoothingTimeSummary s;
    s.t = config.times[it];
    s.gain_u_min = s.gain_n_min = INFINITY;
    s.gain_u_max = s.gain_n_max = -INFINITY;
    for (std::size_t is = 0; is < config.seeds.size(); ++is) {
      const SmoothingSample& x = per_seed[is][it];
      s.gain_u_mean += x.gain_u() / seeds;
      s.gain_n_mean += x.gain_n() / seeds;
      s.gain_u_min = std::min(s.gain_u_min, x.gain_u());
      s.gain_u_max = std::max(s.gain_u_max, x.gain_u());
      s.gain_n_min = std::min(s.gain_n_min, x.gain_n());
      s.gain_n_max = std::max(s.gain_n_max, x.gain_n());
      s.residue_norm_u_mean += x.residue_norm_u / seeds;
      s.residue_norm_n_mean += x.residue_norm_n / seeds;
    }
    rep.a0_hat += s.gain_u_mean / static_cast<double>(nt);
    rep.a1_hat += s.gain_n_mean / static_cast<double>(nt);
    mean_res_u[it] = s.residue_norm_u_mean;
    mean_res_n[it] = s.residue_norm_n_mean;
    rep.per_time.push_back(s);
  }
  rep.beta_u = log_slope_vs_log1pt(config.times, mean_res_u);
  rep.beta_n = log_slope_vs_log1pt(config.times, mean_res_n);
  rep.growth_ratio_u = mean_res_u.back() / mean_res_u.front();
  return rep;
}

void write_smoothing_csv(std::ostream& out, const SmoothingReport& report) {
  out << "seed,t,norm_s,residue_norm,fitted_reg_u,fitted_reg_res,norm_n,residue_norm_n,"
         "fitted_reg_n,fitted_reg_res_n\n";
  char line[512];
  for (const SmoothingSample& s : report.samples) {
    std::snprintf(line, sizeof line, "%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<unsigned long long>(s.seed), s.t, s.norm_u, s.residue_norm_u, s.reg_u,
                  s.reg_residue_u, s.norm_n, s.residue_norm_n, s.reg_n, s.reg_residue_n);
    out << line;
  }
}

GrowthReport growth_track(const Trajectory& trajectory, std::span<const double> s_list,
                          double exp_threshold) {
  GrowthReport rep;
  if (trajectory.empty()) return rep;
  const double t0 = trajectory.front().t;
  for (const ZakharovState& s : trajectory) rep.t.push_back(s.t - t0);
  auto series = [&](double s, bool wave) {
    GrowthSeries g;
    g.s = s;
    for (const ZakharovState& st : trajectory) g.norm.push_back(sobolev_norm(wave ? st.n_plus : st.u, s));
    if (g.norm.size() >= 2 && g.norm.front() > 0.0) {
      std::vector<double> logn;
      for (double v : g.norm) logn.push_back(std::log(std::max(v, 1e-300)));
      std::vector<double> logt;
      for (double t : rep.t) logt.push_back(std::log1p(t));
      g.c2_hat = least_squares_slope(logt, logn);
      g.exp_slope = least_squares_slope(rep.t, logn);
    }
    g.sub_exponential = g.exp_slope <= exp_threshold;
    return g;
  };
  for (double s : s_list) {
    rep.u.push_back(series(s, false));
    rep.n.push_back(series(s, true));
  }
  return rep;
}

}  // namespace zakharov
