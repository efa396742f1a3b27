#include "zakharov/dissipative.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "zakharov/normal_form.hpp"
#include "zakharov/parallel.hpp"
#include "zakharov/reduction.hpp"
#include "zakharov/smoothing_diag.hpp"
#include "zakharov/spectral.hpp"

namespace zakharov {

namespace {

constexpr Complex kI{0.0, 1.0};

// e^{(-i alpha k^2 - gamma) t} f
FourierField damped_schrodinger(const FourierField& f, double t, double alpha, double gamma) {
  return std::exp(-gamma * t) * linear_flow_schrodinger(f, t, alpha);
}

FourierField damped_wave(const FourierField& f, double t, double gamma) {
  return std::exp(-gamma * t) * linear_flow_wave_plus(f, t);
}

double l2_distance(const ZakharovState& a, const ZakharovState& b) {
  return std::hypot(sobolev_norm(a.u - b.u, 1.0), sobolev_norm(a.n_plus - b.n_plus, 0.0));
}

}  // namespace

FourierField low_mode_forcing(int radius, int K, double h1_norm) {
  if (K < 1 || K > radius) throw std::invalid_argument("low_mode_forcing: need 1 <= K <= radius");
  FourierField f(radius);
  f[K] = f[-K] = 1.0;
  return (h1_norm / sobolev_norm(f, 1.0)) * f;
}

EvolutionModel damped_model(const DampedParams& params) {
  if (!(params.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  return {params.alpha.value(), params.gamma, 1.0, params.forcing};
}

StateDerivative rhs_damped(const ZakharovState& state, const DampedParams& params) {
  return rhs(state, damped_model(params));
}

double absorbing_norm(const ZakharovState& state) {
  return sobolev_norm(state.u, 1.0) + 2.0 * sobolev_norm(state.n_plus, 0.0);
}

DecayFit fit_exponential_decay(std::span<const double> t, std::span<const double> q) {
  if (t.size() != q.size() || t.size() < 3) throw std::invalid_argument("decay fit: need >= 3 samples");
  const std::size_t m = t.size();

  // Residuals are relative, weight 1/q^2, so the long tail near C1 counts as
  // much as the transient. The floor keeps exact zeros finite.
  double q_max = 0.0;
  for (double v : q) q_max = std::max(q_max, std::abs(v));
  const double floor = std::max(1e-12 * q_max, std::numeric_limits<double>::min());
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double d = std::max(std::abs(q[i]), floor);
    w[i] = 1.0 / (d * d);
  }

  // Weighted linear least squares for (C1, C2) at fixed C3; returns the weighted residual sum of squares.
  auto solve = [&](double c3, double& c1, double& c2) {
    double s1 = 0, se = 0, see = 0, sq = 0, sqe = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double e = std::exp(-c3 * (t[i] - t[0]));
      s1 += w[i];
      se += w[i] * e;
      see += w[i] * e * e;
      sq += w[i] * q[i];
      sqe += w[i] * q[i] * e;
    }
    const double det = s1 * see - se * se;
    if (std::abs(det) < 1e-300) {
      c1 = sq / s1;
      c2 = 0.0;
    } else {
      c1 = (see * sq - se * sqe) / det;
      c2 = (s1 * sqe - se * sq) / det;
    }
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = q[i] - c1 - c2 * std::exp(-c3 * (t[i] - t[0]));
      rss += w[i] * r * r;
    }
    return rss;
  };

  const double span = t[m - 1] - t[0];
  const double lo = std::log(1e-2 / span), hi = std::log(1e3 / span);
  auto objective = [&](double logc3) {
    double c1, c2;
    return solve(std::exp(logc3), c1, c2);
  };
  // coarse scan, then Brent inside the best cell
  const int cells = 80;
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= cells; ++i) {
    const double v = objective(lo + (hi - lo) * i / cells);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double a = lo + (hi - lo) * std::max(0, best - 1) / cells;
  const double b = lo + (hi - lo) * std::min(cells, best + 1) / cells;
  const auto [logc3, rss] = boost::math::tools::brent_find_minima(objective, a, b, 40);
  (void)rss;

  DecayFit fit;
  fit.C3 = std::exp(logc3);
  solve(fit.C3, fit.C1, fit.C2);
  // report C2 against the absolute time origin
  fit.C2 *= std::exp(fit.C3 * t[0]);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = std::abs(q[i] - fit.C1 - fit.C2 * std::exp(-fit.C3 * t[i]));
    fit.max_residual = std::max(fit.max_residual, r);
    fit.rms_residual += r * r;
  }
  fit.rms_residual = std::sqrt(fit.rms_residual / static_cast<double>(m));
  fit.relative_residual = q[0] != 0.0 ? fit.rms_residual / std::abs(q[0]) : fit.rms_residual;
  const bool interior = best > 0 && best < cells;
  fit.converged = interior && std::isfinite(fit.C1) && std::isfinite(fit.C2);
  return fit;
}

double default_damped_step(int N, double amplitude) {
  return std::min(0.01, default_smoothing_step(N) / std::max(1.0, amplitude));
}

ZakharovState dissipative_initial_state(const DissipativeEnsembleConfig& config, std::uint64_t seed) {
  ZakharovState s = random_initial_state(config.N, config.s0, config.s1, seed);
  s.u = config.amplitude * s.u;
  s.n_plus = config.amplitude * s.n_plus;
  return s;
}

namespace {

FourierField fitted_forcing(const DissipativeEnsembleConfig& c) {
  if (c.params.forcing.empty() || c.params.forcing.radius() == c.N) return c.params.forcing;
  return c.params.forcing.resized(c.N);
}

IntegrationOptions options_for(const DissipativeEnsembleConfig& c) {
  IntegrationOptions opt;
  opt.dt = c.dt > 0.0 ? c.dt : default_damped_step(c.N, c.amplitude);
  opt.t_end = c.t_end;
  opt.sample_stride = c.sample_stride;
  return opt;
}

}  // namespace

AbsorbingReport absorbing_fit(const DissipativeEnsembleConfig& config) {
  if (config.seeds.empty()) throw std::invalid_argument("absorbing_fit: seeds must be nonempty");
  DampedParams params = config.params;
  params.forcing = fitted_forcing(config);
  const EvolutionModel model = damped_model(params);
  const IntegrationOptions opt = options_for(config);

  AbsorbingReport rep;
  rep.runs.resize(config.seeds.size());
  parallel_for(config.seeds.size(), [&](std::size_t i) {
    TrajectoryDecay& run = rep.runs[i];
    run.seed = config.seeds[i];
    integrate(dissipative_initial_state(config, run.seed), model, opt, [&](const ZakharovState& s) {
      run.t.push_back(s.t);
      run.q.push_back(absorbing_norm(s));
    });
    run.fit = fit_exponential_decay(run.t, run.q);
    run.flagged = !run.fit.converged;
  });

  double c1_min = INFINITY, c1_max = -INFINITY;
  int good = 0;
  rep.C3_within_factor_two = true;
  for (const TrajectoryDecay& r : rep.runs) {
    rep.max_relative_residual = std::max(rep.max_relative_residual, r.fit.relative_residual);
    if (r.flagged) continue;
    ++good;
    rep.C1_mean += r.fit.C1;
    rep.C3_mean += r.fit.C3;
    c1_min = std::min(c1_min, r.fit.C1);
    c1_max = std::max(c1_max, r.fit.C1);
    if (r.fit.C3 < 0.5 * params.gamma || r.fit.C3 > 2.0 * params.gamma) rep.C3_within_factor_two = false;
  }
  if (good == 0) {
    rep.C3_within_factor_two = false;
    return rep;
  }
  rep.C1_mean /= good;
  rep.C3_mean /= good;
  rep.C1_spread = rep.C1_mean != 0.0 ? (c1_max - c1_min) / std::abs(rep.C1_mean) : c1_max - c1_min;
  return rep;
}

void write_absorbing_csv(std::ostream& out, const AbsorbingReport& report) {
  out << "seed,t,Q,fit\n";
  char line[256];
  for (const TrajectoryDecay& r : report.runs) {
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      const double fit = r.fit.C1 + r.fit.C2 * std::exp(-r.fit.C3 * r.t[i]);
      std::snprintf(line, sizeof line, "%llu,%.17g,%.17g,%.17g\n", static_cast<unsigned long long>(r.seed),
                    r.t[i], r.q[i], fit);
      out << line;
    }
  }
}

std::vector<SmoothPartSample> smooth_part(const Trajectory& trajectory, const DampedParams& params) {
  std::vector<SmoothPartSample> out;
  if (trajectory.empty()) return out;
  const double alpha = params.alpha.value();
  const double gamma = params.gamma;
  const ResonanceClassifier classifier(params.alpha);
  const bool resonant = classifier.mode() == ResonanceMode::Resonant;
  const ZakharovState& first = trajectory.front();
  const double t0 = first.t;
  const int r = first.radius();

  double h = 0.0;
  if (resonant && trajectory.size() > 1) {
    h = trajectory[1].t - trajectory[0].t;
    for (std::size_t i = 1; i < trajectory.size(); ++i) {
      if (std::abs(trajectory[i].t - trajectory[i - 1].t - h) > 1e-9 * std::max(1.0, h)) {
        throw std::invalid_argument("smooth_part: resonant integral needs equally spaced samples");
      }
    }
    if (h > 0.01 / gamma * (1.0 + 1e-12)) {
      throw std::invalid_argument(
          "smooth_part: resonant integral needs sample_stride <= 0.01/gamma; sample more densely");
    }
  }

  FourierField integral(r);
  FourierField rho_prev;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const ZakharovState& s = trajectory[i];
    const double t = s.t - t0;
    SmoothPartSample p;
    p.t = s.t;
    const FourierField lin_u = damped_schrodinger(first.u, t, alpha, gamma);
    const FourierField lin_n = damped_wave(first.n_plus, t, gamma);
    p.u = s.u - lin_u;
    p.n_plus = s.n_plus - lin_n;
    if (resonant) {
      const FourierField rho = rho1(s, classifier);
      if (i > 0) {
        // trapezoid in the interaction picture:
        // I(t + h) = e^{Lh} I(t) + h/2 (e^{Lh} rho(t) + rho(t + h))
        integral = damped_schrodinger(integral + 0.5 * h * rho_prev, h, alpha, gamma) + (0.5 * h) * rho;
      }
      rho_prev = rho;
      p.resonant_integral = integral;
      p.u = p.u + kI * integral;
    }
    FourierField rebuilt = lin_u + p.u;
    if (resonant) rebuilt = rebuilt - kI * p.resonant_integral;
    p.reassembly_error = std::max(max_abs_difference(rebuilt, s.u), max_abs_difference(lin_n + p.n_plus, s.n_plus));
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

AttractorEnsemble run_ensemble(const AttractorConfig& config, const std::vector<std::uint64_t>& seeds) {
  const DissipativeEnsembleConfig& ec = config.ensemble;
  DampedParams params = ec.params;
  params.forcing = fitted_forcing(ec);
  const EvolutionModel model = damped_model(params);
  const IntegrationOptions opt = options_for(ec);
  const std::size_t na = config.a_list.size();

  AttractorEnsemble e;
  e.members.resize(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    AttractorMember& m = e.members[i];
    m.seed = seeds[i];
    m.sup_norm.assign(na, 0.0);
    m.sup_norm_u.assign(na, 0.0);
    const Trajectory traj = integrate(dissipative_initial_state(ec, m.seed), model, opt);
    for (const SmoothPartSample& p : smooth_part(traj, params)) {
      m.max_reassembly_error = std::max(m.max_reassembly_error, p.reassembly_error);
      if (p.t < config.window_start - 1e-12) continue;
      for (std::size_t ia = 0; ia < na; ++ia) {
        const double a = config.a_list[ia];
        const double nu = sobolev_norm(p.u, 1.0 + a);
        m.sup_norm_u[ia] = std::max(m.sup_norm_u[ia], nu);
        m.sup_norm[ia] = std::max(m.sup_norm[ia], nu + sobolev_norm(p.n_plus, a));
      }
    }
    m.final_state = traj.back();
  });

  e.R_hat.assign(na, 0.0);
  e.spread.assign(na, 0.0);
  for (std::size_t ia = 0; ia < na; ++ia) {
    double lo = INFINITY, hi = 0.0;
    for (const AttractorMember& m : e.members) {
      lo = std::min(lo, m.sup_norm[ia]);
      hi = std::max(hi, m.sup_norm[ia]);
    }
    e.R_hat[ia] = hi;
    e.spread[ia] = lo > 0.0 ? hi / lo : INFINITY;
  }
  for (std::size_t i = 0; i < e.members.size(); ++i) {
    e.max_reassembly_error = std::max(e.max_reassembly_error, e.members[i].max_reassembly_error);
    for (std::size_t j = i + 1; j < e.members.size(); ++j) {
      e.diameter = std::max(e.diameter, l2_distance(e.members[i].final_state, e.members[j].final_state));
    }
  }
  return e;
}

}  // namespace

AttractorReport attractor_probe(const AttractorConfig& config) {
  if (config.ensemble.seeds.empty() || config.second_seeds.empty())
    throw std::invalid_argument("attractor: both ensembles need seeds");
  AttractorReport rep;
  rep.a_list = config.a_list;
  rep.first = run_ensemble(config, config.ensemble.seeds);
  rep.second = run_ensemble(config, config.second_seeds);
  for (std::size_t ia = 0; ia < config.a_list.size(); ++ia) {
    const double a = rep.first.R_hat[ia], b = rep.second.R_hat[ia];
    rep.agreement.push_back(std::max(a, b) > 0.0 ? std::abs(a - b) / std::max(a, b) : 0.0);
  }
  rep.linear_decay_error = linear_decay_check(config.ensemble.N, config.ensemble.params,
                                              std::min(config.ensemble.t_end, 10.0));
  return rep;
}

double linear_decay_check(int N, const DampedParams& params, double t_end) {
  const EvolutionModel model{params.alpha.value(), params.gamma, 0.0, {}};
  const ZakharovState initial = random_initial_state(N, 1.0, 0.0, 7);
  IntegrationOptions opt;
  opt.t_end = t_end;
  opt.dt = default_damped_step(N, 1.0);
  opt.sample_stride = t_end / 4.0;
  const Trajectory traj = integrate(initial, model, opt);

  auto band_norm = [](const FourierField& f, int lo, int hi) {
    double s = 0.0;
    for (int k = lo; k < hi && k <= f.radius(); ++k) {
      s += std::norm(f[k]);
      if (k != 0) s += std::norm(f[-k]);
    }
    return std::sqrt(s);
  };
  double worst = 0.0;
  for (const ZakharovState& s : traj) {
    const double expected = std::exp(-params.gamma * (s.t - initial.t));
    for (int lo = 0, hi = 1; lo <= N; lo = hi, hi *= 2) {
      for (bool wave : {false, true}) {
        const FourierField& f0 = wave ? initial.n_plus : initial.u;
        const FourierField& f = wave ? s.n_plus : s.u;
        const double b0 = band_norm(f0, lo, hi);
        if (b0 == 0.0) continue;
        worst = std::max(worst, std::abs(band_norm(f, lo, hi) / b0 - expected) / expected);
      }
    }
  }
  return worst;
}

}  // namespace zakharov
