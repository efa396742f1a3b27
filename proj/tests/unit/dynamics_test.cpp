#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "zakharov/dynamics.hpp"
#include "zakharov/errors.hpp"
#include "zakharov/reduction.hpp"
#include "zakharov/spectral.hpp"

using namespace zakharov;

namespace {

double state_difference(const ZakharovState& a, const ZakharovState& b) {
  return std::max(max_abs_difference(a.u, b.u), max_abs_difference(a.n_plus, b.n_plus));
}

}  // namespace

TEST_CASE("rhs of the zero state is zero") {
  const ZakharovState zero{FourierField(8), FourierField(8), 0.0};
  const StateDerivative d = rhs(zero, ModelParams{Alpha(1.0), 1.0});
  CHECK(max_abs(d.du) == 0.0);
  CHECK(max_abs(d.dn_plus) == 0.0);
}

TEST_CASE("rhs agrees with the direct double-loop oracle") {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int N = gen.integer(1, 16);
    const ZakharovState s = gen.state(N, gen.uniform(0.0, 1.5), 0.1);
    const double alpha = gen.uniform(0.2, 2.0);
    const double c = gen.uniform(-1.0, 1.0);
    const StateDerivative d = rhs(s, EvolutionModel{alpha, 0.0, c, {}});
    const oracle::Derivative o = oracle::rhs(s, alpha, c);
    CHECK(oracle::relative_error(d.du, o.du) < 1e-13);
    CHECK(oracle::relative_error(d.dn_plus, o.dn) < 1e-13);
  }
}

TEST_CASE("instantaneous conservation: mass and energy rates vanish") {
  oracle::Gen gen(32);
  for (int trial = 0; trial < 30; ++trial) {
    const int N = gen.integer(2, 48);
    const ZakharovState s = gen.state(N, gen.uniform(0.5, 1.5));
    const double alpha = gen.uniform(0.2, 2.0);
    const ModelParams params{Alpha(alpha), 1.0};
    const StateDerivative d = rhs(s, params);
    CHECK(d.dn_plus[0] == Complex{});
    CHECK(std::abs(mass_rate(s, d)) <= 1e-13 * (1.0 + mass(s)));
    const EnergyParts e = energy_parts(s, alpha);
    const double scale = e.kinetic + e.wave + std::abs(e.coupling);
    CHECK(std::abs(energy_rate(s, d, alpha)) <= 1e-10 * scale * (1.0 + alpha * N * N));
  }
}

TEST_CASE("mass and energy of simple states") {
  const ZakharovState zero{FourierField(4), FourierField(4), 0.0};
  CHECK(mass(zero) == 0.0);
  CHECK(energy(zero, ModelParams{Alpha(1.0), 1.0}) == 0.0);
  const ZakharovState one{FourierField::delta(4, 1, 1.0), FourierField(4), 0.0};
  CHECK(energy(one, ModelParams{Alpha(1.0), 1.0}) == doctest::Approx(1.0));
  const ZakharovState a{FourierField::delta(4, 2, Complex(0.0, 3.0)), FourierField(4), 0.0};
  CHECK(mass(a) == doctest::Approx(9.0));
}

TEST_CASE("linear flows") {
  oracle::Gen gen(33);
  const FourierField u = gen.field(12);
  CHECK(linear_flow_schrodinger(u, 0.0, 0.75) == u);
  CHECK(linear_flow_wave_plus(u, 0.0) == u);
  const FourierField v = linear_flow_schrodinger(u, 0.3, 0.75);
  CHECK(std::abs(v[5] - std::polar(1.0, -0.75 * 25 * 0.3) * u[5]) < 1e-15);
  CHECK(max_abs_difference(linear_flow_wave_plus(linear_flow_wave_plus(u, 0.4), -0.4), u) < 1e-15);
}

TEST_CASE("integrate: zero data stay zero") {
  const ZakharovState zero{FourierField(16), FourierField(16), 0.0};
  const Trajectory traj = integrate(zero, ModelParams{Alpha(3, 4), 1.0}, {.t_end = 0.5, .sample_stride = 0.1});
  CHECK(traj.size() == 6);
  for (const ZakharovState& s : traj) {
    CHECK(max_abs(s.u) == 0.0);
    CHECK(max_abs(s.n_plus) == 0.0);
  }
  CHECK(traj.back().t == doctest::Approx(0.5));
}

TEST_CASE("integrate without coupling reproduces the linear flow") {
  const ZakharovState s = random_initial_state(32, 1.0, 0.0, 4);
  const Trajectory traj = integrate(s, ModelParams{Alpha(3, 4), 0.0}, {.t_end = 1.0});
  CHECK(max_abs_difference(traj.back().u, linear_flow_schrodinger(s.u, 1.0, 0.75)) <= 1e-12);
  CHECK(max_abs_difference(traj.back().n_plus, linear_flow_wave_plus(s.n_plus, 1.0)) <= 1e-12);
}

TEST_CASE("integrate is fourth order under step halving") {
  const ZakharovState s = random_initial_state(64, 1.0, 0.0, 3);
  auto run = [&](double dt) { return integrate(s, ModelParams{Alpha(3, 4), 1.0}, {.dt = dt, .t_end = 1.0}).back(); };
  const ZakharovState a = run(2.5e-4);
  const ZakharovState b = run(1.25e-4);
  const ZakharovState c = run(6.25e-5);
  const double ratio = state_difference(a, b) / state_difference(b, c);
  CHECK(ratio >= 16.0 * 0.8);
  CHECK(ratio <= 16.0 * 1.2);
}

TEST_CASE("integrate keeps n mean-zero and real, and conserves mass over a short run") {
  const ZakharovState s = random_initial_state(32, 1.0, 0.0, 5);
  // the default step 0.5/N^2 drifts by ~3e-9 here; the drift scales like dt^5
  const Trajectory traj =
      integrate(s, ModelParams{Alpha(3, 4), 1.0}, {.dt = 0.125 / (32 * 32), .t_end = 1.0, .sample_stride = 0.25});
  const double m0 = mass(s);
  const double e0 = energy(s, ModelParams{Alpha(3, 4), 1.0});
  for (const ZakharovState& x : traj) {
    CHECK(std::abs(x.n_plus[0]) <= 1e-14);
    CHECK(density(x.n_plus).conjugate_asymmetry() <= 1e-12);
    CHECK(std::abs(mass(x) - m0) <= 1e-10 * m0);
    CHECK(std::abs(energy(x, ModelParams{Alpha(3, 4), 1.0}) - e0) <= 1e-6 * std::abs(e0));
  }
}

TEST_CASE("integrate reports blow-up with the last good time") {
  const ZakharovState s = random_initial_state(16, 1.0, 0.0, 6);
  try {
    integrate(s, ModelParams{Alpha(3, 4), 1.0}, {.dt = 1e-3, .t_end = 1.0, .blowup_threshold = 1e-3});
    FAIL("expected BlowUpError");
  } catch (const BlowUpError& e) {
    CHECK(e.last_good_time() >= 0.0);
    CHECK(std::string(e.what()).find("blow-up") != std::string::npos);
  }
}

TEST_CASE("trajectory and diagnostics CSV") {
  const ZakharovState s = random_initial_state(4, 1.0, 0.0, 7);
  const Trajectory traj = integrate(s, ModelParams{Alpha(3, 4), 1.0}, {.t_end = 0.1, .sample_stride = 0.05});
  std::ostringstream a;
  write_trajectory_csv(a, traj);
  CHECK(a.str().rfind("t,k,re_u,im_u,re_np,im_np\n", 0) == 0);
  std::ostringstream b;
  const std::vector<double> s_list{0.0, 1.0};
  write_diagnostics_csv(b, traj, 0.75, s_list);
  CHECK(b.str().rfind("t,mass,energy,", 0) == 0);
}
