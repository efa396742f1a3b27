#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "zakharov/dissipative.hpp"
#include "zakharov/dynamics.hpp"
#include "zakharov/multiplier_bounds.hpp"
#include "zakharov/normal_form.hpp"
#include "zakharov/reduction.hpp"
#include "zakharov/smoothing_diag.hpp"
#include "zakharov/spectral.hpp"

namespace zakharov::cli {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

int checked_N(const Json& cfg) {
  const int N = get_int(cfg, "N");
  require(N >= 8, "key 'N': must be at least 8");
  return N;
}

std::string csv_line(std::initializer_list<double> values) {
  std::string line;
  char buf[32];
  for (double v : values) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!line.empty()) line += ',';
    line += buf;
  }
  return line + "\n";
}

std::vector<std::uint64_t> ensemble_seeds(const Json& cfg, const char* key, std::uint64_t offset) {
  const int n = get_int(cfg, "ensemble_size");
  if (n <= 0) return get_seeds(cfg, key);
  std::vector<std::uint64_t> s;
  for (int i = 1; i <= n; ++i) s.push_back(offset + static_cast<std::uint64_t>(i));
  return s;
}

ZakharovState scaled(ZakharovState s, double amplitude) {
  s.u = amplitude * s.u;
  s.n_plus = amplitude * s.n_plus;
  return s;
}

}  // namespace

void run_simulate(const Json& cfg, RunDirectory& dir, std::ostream& out) {
  const int N = checked_N(cfg);
  const Alpha alpha = get_alpha(cfg, "alpha");
  const double gamma = get_real(cfg, "gamma");
  require(gamma >= 0.0, "key 'gamma': must be nonnegative");
  const std::string initial = get_string(cfg, "initial");
  require(initial == "random" || initial == "zero", "key 'initial': expected random or zero");

  ZakharovState state{FourierField(N), FourierField(N), 0.0};
  if (initial == "random") {
    state = scaled(random_initial_state(N, get_real(cfg, "s0"), get_real(cfg, "s1"),
                                        static_cast<std::uint64_t>(get_int(cfg, "seed"))),
                   get_real(cfg, "amplitude"));
  }
  EvolutionModel model{alpha.value(), gamma, get_real(cfg, "nonlinearity"), get_forcing(cfg, "forcing", N)};
  IntegrationOptions opt;
  opt.dt = get_real(cfg, "dt");
  opt.t_end = get_real(cfg, "t_end");
  opt.sample_stride = get_real(cfg, "sample_stride");
  require(opt.t_end > 0.0, "key 't_end': must be positive");
  require(opt.dt >= 0.0, "key 'dt': must be nonnegative");
  const Trajectory traj = integrate(state, model, opt);

  const std::vector<double> s_list = get_reals(cfg, "s_list");
  if (get_bool(cfg, "write_trajectory")) {
    std::ofstream f(dir.file("trajectory.csv"), std::ios::binary);
    write_trajectory_csv(f, traj);
  }
  {
    std::ofstream f(dir.file("diagnostics.csv"), std::ios::binary);
    write_diagnostics_csv(f, traj, alpha.value(), s_list);
  }

  const double m0 = mass(traj.front());
  const double e0 = energy_parts(traj.front(), alpha.value()).total();
  double mass_drift = 0.0, energy_drift = 0.0;
  for (const ZakharovState& s : traj) {
    const double dm = std::abs(mass(s) - m0);
    const double de = std::abs(energy_parts(s, alpha.value()).total() - e0);
    mass_drift = std::max(mass_drift, m0 > 0.0 ? dm / m0 : dm);
    energy_drift = std::max(energy_drift, e0 != 0.0 ? de / std::abs(e0) : de);
  }
  const GrowthReport growth = growth_track(traj, s_list, get_real(cfg, "growth_threshold"));
  Json g = Json::array();
  for (std::size_t i = 0; i < s_list.size(); ++i) {
    g.push_back({{"s", s_list[i]},
                 {"c2_hat_u", growth.u[i].c2_hat},
                 {"exp_slope_u", growth.u[i].exp_slope},
                 {"sub_exponential_u", growth.u[i].sub_exponential},
                 {"c2_hat_n", growth.n[i].c2_hat},
                 {"exp_slope_n", growth.n[i].exp_slope},
                 {"sub_exponential_n", growth.n[i].sub_exponential}});
  }
  const bool conservative = gamma == 0.0 && model.forcing.empty();
  Json summary = {{"N", N},
                  {"alpha", alpha.to_string()},
                  {"samples", traj.size()},
                  {"t_final", traj.back().t},
                  {"mass_initial", m0},
                  {"energy_initial", e0},
                  {"conservative", conservative},
                  {"mass_relative_drift", mass_drift},
                  {"energy_relative_drift", energy_drift},
                  {"growth", g}};
  dir.write_json("summary.json", summary);
  out << "samples " << traj.size() << ", mass drift " << mass_drift << ", energy drift " << energy_drift << "\n";
}

void run_normalform_check(const Json& cfg, RunDirectory& dir, std::ostream& out) {
  const int N = checked_N(cfg);
  const Alpha alpha = get_alpha(cfg, "alpha");
  const ResonanceClassifier c(alpha);
  const std::string variant = get_string(cfg, "rho2_variant");
  require(variant == "substitution" || variant == "as_printed",
          "key 'rho2_variant': expected substitution or as_printed");
  IdentityOptions opt;
  opt.include_rho = get_bool(cfg, "with_rho");
  opt.rho2_variant = variant == "substitution" ? Rho2Variant::Substitution : Rho2Variant::AsPrinted;
  opt.interior_fraction = get_real(cfg, "interior_fraction");
  const ZakharovState s = random_initial_state(N, get_real(cfg, "s0"), get_real(cfg, "s1"),
                                               static_cast<std::uint64_t>(get_int(cfg, "seed")));
  const IdentityResidual r = dbp_identity_residual(s, c, opt);
  const double tol = get_real(cfg, "tolerance");
  Json report = {{"alpha", alpha.to_string()},
                 {"N", N},
                 {"resonant", c.mode() == ResonanceMode::Resonant},
                 {"with_rho", opt.include_rho},
                 {"rho2_variant", variant},
                 {"residual_u", r.residual_u},
                 {"residual_n", r.residual_n},
                 {"absolute_u", r.absolute_u},
                 {"absolute_n", r.absolute_n},
                 {"scale_u", r.scale_u},
                 {"scale_n", r.scale_n},
                 {"excluded_tuples_count", excluded_tuples_count(c, N)},
                 {"tolerance", tol},
                 {"pass", r.residual_u <= tol && r.residual_n <= tol}};
  dir.write_json("report.json", report);
  out << report.dump(2) << "\n";
}

void run_smoothing(const Json& cfg, RunDirectory& dir, std::ostream& out) {
  SmoothingConfig c;
  c.N = checked_N(cfg);
  c.alpha = get_alpha(cfg, "alpha");
  c.s0 = get_real(cfg, "s0");
  c.s1 = get_real(cfg, "s1");
  c.dt = get_real(cfg, "dt");
  c.times = get_reals(cfg, "times");
  c.seeds = ensemble_seeds(cfg, "seeds", 0);
  c.epsilon = get_real(cfg, "epsilon");
  c.fit = {get_int(cfg, "fit_lo"), get_int(cfg, "fit_hi")};
  c.noise_floor = get_real(cfg, "noise_floor");
  require(c.fit.lo <= 0 || (c.fit.lo < c.fit.hi && c.fit.hi <= c.N), "keys 'fit_lo', 'fit_hi': need fit_lo < fit_hi <= N");
  const SmoothingReport r = smoothing_report(c);
  {
    std::ofstream f(dir.file("smoothing.csv"), std::ios::binary);
    write_smoothing_csv(f, r);
  }
  const double min_gain = get_real(cfg, "min_gain");
  Json per_time = Json::array();
  bool pass = true;
  for (const SmoothingTimeSummary& s : r.per_time) {
    per_time.push_back({{"t", s.t},
                        {"gain_u_mean", s.gain_u_mean},
                        {"gain_u_min", s.gain_u_min},
                        {"gain_u_max", s.gain_u_max},
                        {"gain_n_mean", s.gain_n_mean},
                        {"gain_n_min", s.gain_n_min},
                        {"gain_n_max", s.gain_n_max},
                        {"residue_norm_u_mean", s.residue_norm_u_mean},
                        {"residue_norm_n_mean", s.residue_norm_n_mean}});
    pass = pass && s.gain_u_mean >= min_gain;
  }
  Json report = {{"alpha", c.alpha.to_string()},
                 {"N", c.N},
                 {"s0", c.s0},
                 {"s1", c.s1},
                 {"dt", r.dt},
                 {"fit", {r.fit.lo, r.fit.hi}},
                 {"resonant", r.resonant},
                 {"admissible", r.admissible},
                 {"theory_a0", r.theory.a0},
                 {"theory_a1", r.theory.a1},
                 {"a0_hat", r.a0_hat},
                 {"a1_hat", r.a1_hat},
                 {"beta_u", r.beta_u},
                 {"beta_n", r.beta_n},
                 {"growth_ratio_u", r.growth_ratio_u},
                 {"per_time", per_time},
                 {"min_gain", min_gain},
                 {"pass", pass}};
  dir.write_json("report.json", report);
  out << "a0_hat " << r.a0_hat << " (theory " << r.theory.a0 << "), a1_hat " << r.a1_hat << " (theory "
      << r.theory.a1 << ")\n";
}

void run_attractor(const Json& cfg, RunDirectory& dir, std::ostream& out) {
  AttractorConfig c;
  DissipativeEnsembleConfig& e = c.ensemble;
  e.N = checked_N(cfg);
  e.params.alpha = get_alpha(cfg, "alpha");
  e.params.gamma = get_real(cfg, "gamma");
  require(e.params.gamma > 0.0, "key 'gamma': must be positive");
  e.params.forcing = get_forcing(cfg, "forcing", e.N);
  const int K = get_int(cfg, "forcing_K");
  if (e.params.forcing.empty() && K > 0) {
    require(K <= e.N, "key 'forcing_K': must not exceed N");
    e.params.forcing = low_mode_forcing(e.N, K, get_real(cfg, "forcing_h1"));
  }
  e.dt = get_real(cfg, "dt");
  e.t_end = get_real(cfg, "t_end");
  e.sample_stride = get_real(cfg, "sample_stride");
  e.seeds = ensemble_seeds(cfg, "seeds", 0);
  e.amplitude = get_real(cfg, "amplitude");
  e.s0 = get_real(cfg, "s0");
  e.s1 = get_real(cfg, "s1");
  c.second_seeds = ensemble_seeds(cfg, "second_seeds", 100);
  c.a_list = get_reals(cfg, "a_list");
  c.window_start = get_real(cfg, "window_start");
  require(e.t_end > c.window_start, "key 't_end': must exceed window_start");

  Json summary = Json::object();
  const double abs_t_end = get_real(cfg, "absorbing_t_end");
  if (abs_t_end > 0.0) {
    DissipativeEnsembleConfig a = e;
    a.t_end = abs_t_end;
    a.sample_stride = get_real(cfg, "absorbing_stride");
    const AbsorbingReport ar = absorbing_fit(a);
    std::ofstream f(dir.file("absorbing.csv"), std::ios::binary);
    write_absorbing_csv(f, ar);
    Json fits = Json::array();
    double c2 = 0.0;
    for (const TrajectoryDecay& t : ar.runs) {
      fits.push_back({{"seed", t.seed},
                      {"C1", t.fit.C1},
                      {"C2", t.fit.C2},
                      {"C3", t.fit.C3},
                      {"relative_residual", t.fit.relative_residual},
                      {"max_residual", t.fit.max_residual},
                      {"Q0", t.q.front()},
                      {"flagged", t.flagged}});
      c2 += t.fit.C2 / static_cast<double>(ar.runs.size());
    }
    summary["C1"] = ar.C1_mean;
    summary["C2"] = c2;
    summary["C3"] = ar.C3_mean;
    summary["C1_spread"] = ar.C1_spread;
    summary["C3_within_factor_two"] = ar.C3_within_factor_two;
    summary["max_relative_residual"] = ar.max_relative_residual;
    summary["fits"] = fits;
  }

  const AttractorReport r = attractor_probe(c);
  std::ostringstream members;
  members << "ensemble,seed,a,sup_norm,sup_norm_u\n";
  auto dump_members = [&](const AttractorEnsemble& ens, int id) {
    for (const AttractorMember& m : ens.members) {
      for (std::size_t i = 0; i < r.a_list.size(); ++i) {
        members << id << "," << m.seed << "," << csv_line({r.a_list[i], m.sup_norm[i], m.sup_norm_u[i]});
      }
    }
  };
  dump_members(r.first, 1);
  dump_members(r.second, 2);
  dir.write_text("attractor_members.csv", members.str());

  Json R_hat = Json::object(), R_hat_2 = Json::object(), spread = Json::object(), agree = Json::object();
  for (std::size_t i = 0; i < r.a_list.size(); ++i) {
    char key[32];
    std::snprintf(key, sizeof key, "%g", r.a_list[i]);
    R_hat[key] = r.first.R_hat[i];
    R_hat_2[key] = r.second.R_hat[i];
    spread[key] = std::max(r.first.spread[i], r.second.spread[i]);
    agree[key] = r.agreement[i];
  }
  summary["R_hat"] = R_hat;
  summary["R_hat_second"] = R_hat_2;
  summary["spread"] = spread;
  summary["agreement"] = agree;
  summary["diameters"] = {r.first.diameter, r.second.diameter};
  summary["reassembly_error"] = std::max(r.first.max_reassembly_error, r.second.max_reassembly_error);
  summary["linear_decay_error"] = r.linear_decay_error;
  dir.write_json("summary.json", summary);
  out << summary.dump(2) << "\n";
}

void run_bounds(const Json& cfg, RunDirectory& dir, std::ostream& out) {
  SupSumParams p;
  p.K = get_int(cfg, "K");
  require(p.K >= 1, "key 'K': must be at least 1");
  p.alpha = get_alpha(cfg, "alpha").value();
  p.s0 = get_real(cfg, "s0");
  p.s1 = get_real(cfg, "s1");
  p.b = get_real(cfg, "b");
  p.delta = get_real(cfg, "delta");
  p.inner_factor = get_int(cfg, "inner_factor");
  const double slope_max = get_real(cfg, "slope_max");
  const double lemma_slope_max = get_real(cfg, "lemma_slope_max");
  const double sharpness_min = get_real(cfg, "sharpness_min");

  Json verdicts = Json::object();
  Json sweeps = Json::array();
  auto write_sweep = [&](const std::string& name, const std::vector<int>& k, const std::vector<double>& sum) {
    std::ostringstream csv;
    csv << "k,sum,slope_so_far\n";
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < k.size(); ++i) {
      lx.push_back(std::log(bracket(k[i])));
      ly.push_back(std::log(sum[i]));
      const double slope = lx.size() >= 2 ? least_squares_slope(lx, ly) : 0.0;
      csv << k[i] << "," << csv_line({sum[i], slope});
    }
    dir.write_text(name + ".csv", csv.str());
  };
  bool all_pass = true;
  for (const std::string& name : get_strings(cfg, "kinds")) {
    SupSumKind kind;
    if (name == "R1") kind = SupSumKind::R1;
    else if (name == "R2") kind = SupSumKind::R2;
    else if (name == "R3") kind = SupSumKind::R3;
    else if (name == "R4") kind = SupSumKind::R4;
    else throw ConfigError("key 'kinds': unknown sup-sum '" + name + "'");
    p.s = admissible_s(kind, p.s0, p.s1, p.b);
    const SupSumResult r = supsum(kind, p);
    write_sweep("supsum_" + name, r.k, r.sum);
    Json v = {{"kind", name}, {"s", p.s}, {"slope", r.slope}, {"sup", r.sup}, {"admissible", r.admissible},
              {"k0_value", r.k0_value}, {"bounded", r.slope <= slope_max}};
    all_pass = all_pass && r.slope <= slope_max;
    if (get_bool(cfg, "sharpness")) {
      const SupSumResult probe = rescale_supsum(r, kind, p, p.s + 1.0);
      write_sweep("supsum_" + name + "_sharpness", probe.k, probe.sum);
      v["sharpness_s"] = p.s + 1.0;
      v["sharpness_slope"] = probe.slope;
      v["sharpness_detected"] = probe.slope >= sharpness_min;
      all_pass = all_pass && probe.slope >= sharpness_min;
    }
    sweeps.push_back(v);
  }
  verdicts["supsums"] = sweeps;

  if (get_bool(cfg, "lemmas")) {
    Json lemmas = Json::array();
    auto record = [&](const std::string& name, const LemmaSweep& s, Json params) {
      std::ostringstream csv;
      csv << "abscissa,ratio\n";
      for (std::size_t i = 0; i < s.abscissa.size(); ++i) csv << csv_line({s.abscissa[i], s.ratio[i]});
      dir.write_text(name + ".csv", csv.str());
      params["sweep"] = name;
      params["slope"] = s.slope;
      params["sup"] = s.sup;
      params["bounded"] = s.slope <= lemma_slope_max;
      all_pass = all_pass && s.slope <= lemma_slope_max;
      lemmas.push_back(params);
    };
    for (const auto& [beta, gamma] : std::vector<std::pair<double, double>>{{0.6, 0.6}, {2.0, 0.0}, {1.0, 1.0}, {1.5, 0.5}}) {
      char name[64];
      std::snprintf(name, sizeof name, "lemma_a_beta%g_gamma%g", beta, gamma);
      record(name, sweep_lemma_a(beta, gamma), {{"beta", beta}, {"gamma", gamma}});
    }
    for (double beta : {0.5, 0.75, 1.0}) {
      char name[64];
      std::snprintf(name, sizeof name, "lemma_b_beta%g", beta);
      record(name, sweep_lemma_b(beta, 20, p.delta), {{"beta", beta}, {"delta", p.delta}});
    }
    for (double beta : {0.6, 1.0, 2.0}) {
      char name[64];
      std::snprintf(name, sizeof name, "lemma_c_beta%g", beta);
      record(name, sweep_lemma_c(beta), {{"beta", beta}});
    }
    verdicts["lemmas"] = lemmas;
  }
  verdicts["pass"] = all_pass;
  dir.write_json("verdicts.json", verdicts);
  out << verdicts.dump(2) << "\n";
}

void run_gauge(const Json& cfg, RunDirectory& dir, std::ostream& out) {
  const int N = checked_N(cfg);
  const auto seed = static_cast<std::uint64_t>(get_int(cfg, "seed"));
  auto load = [&](const std::string& key) -> FourierField {
    const std::string path = get_string(cfg, key);
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw ConfigError("key '" + key + "': cannot open '" + path + "'");
    try {
      FourierField f = read_field_csv(in);
      require(f.radius() == N, "key '" + key + "': field radius differs from N");
      return f;
    } catch (const std::invalid_argument& e) {
      throw ConfigError("key '" + key + "': " + e.what());
    }
  };
  RandomFieldOptions real_opt;
  real_opt.mean_zero = true;
  real_opt.real_valued = true;
  PhysicalTriple p{load("u0_file"), load("n0_file"), load("n1_file")};
  if (p.u0.empty()) p.u0 = random_sobolev_field(get_real(cfg, "s0"), N, 4 * seed + 1);
  if (p.n0.empty()) {
    p.n0 = random_sobolev_field(get_real(cfg, "s1"), N, 4 * seed + 2, real_opt);
    p.n0[0] += get_real(cfg, "mean_n0");
  }
  if (p.n1.empty()) {
    p.n1 = random_sobolev_field(get_real(cfg, "s1") - 1.0, N, 4 * seed + 3, real_opt);
    p.n1[0] += get_real(cfg, "mean_n1");
  }
  const GaugedData g = gauge_normalize(p);
  auto write_field = [&](const std::string& name, const FourierField& f) {
    std::ofstream o(dir.file(name), std::ios::binary);
    write_field_csv(o, f);
  };
  write_field("u0_gauged.csv", g.triple.u0);
  write_field("n0_gauged.csv", g.triple.n0);
  write_field("n1_gauged.csv", g.triple.n1);
  Json report = {{"A", g.record.A}, {"B", g.record.B}};

  const double t_end = get_real(cfg, "t_end");
  if (t_end > 0.0) {
    ModelParams params;
    params.alpha = get_alpha(cfg, "alpha");
    IntegrationOptions opt;
    opt.t_end = t_end;
    opt.dt = get_real(cfg, "dt");
    const ZakharovState end = integrate(to_plus_minus(g.triple), params, opt).back();
    const PhysicalTriple phys = from_plus_minus(end);
    FourierField u = end.u, n = phys.n0;
    ungauge(u, n, t_end, g.record);
    write_field("u_t.csv", u);
    write_field("n_t.csv", n);
    report["t_end"] = t_end;
  }
  dir.write_json("gauge.json", report);
  out << report.dump(2) << "\n";
}

}  // namespace zakharov::cli
