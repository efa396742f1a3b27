#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "doctest.h"
#include "oracles.hpp"
#include "zakharov/dynamics.hpp"
#include "zakharov/normal_form.hpp"
#include "zakharov/reduction.hpp"
#include "zakharov/spectral.hpp"

using namespace zakharov;

namespace {

int sgn(int x) { return (x > 0) - (x < 0); }

using PairSet = std::set<std::pair<int, int>>;

PairSet as_set(const std::vector<IndexPair>& v) {
  PairSet s;
  for (const IndexPair& p : v) s.insert({p.first, p.second});
  return s;
}

struct Case {
  Alpha alpha;
  oracle::Phases phases;
};

std::vector<Case> exact_cases() {
  return {{Alpha(3, 4), {3, 4}}, {Alpha(1, 1), {1, 1}}, {Alpha(1, 2), {1, 2}}, {Alpha(5, 7), {5, 7}}};
}

}  // namespace

TEST_CASE("resonance examples at alpha = 1") {
  const ResonanceClassifier c(Alpha(1, 1));
  CHECK(c.mode() == ResonanceMode::Resonant);
  CHECK(c.schro_resonant(3, 5));
  CHECK(c.schro_denominator_exact(3, 5) == Rational(0));
  CHECK(c.wave_resonant(5, 3));
  CHECK(c.wave_denominator_exact(5, 3) == Rational(0));
  CHECK_FALSE(c.schro_resonant(3, 4));
}

TEST_CASE("resonance families at alpha = 1 are exactly the closed forms") {
  const ResonanceClassifier c(Alpha(1, 1));
  const int K = 100;
  PairSet plus, minus, wave;
  for (int k = -K; k <= K; ++k) {
    if (k != 0 && std::abs(2 * k - sgn(k)) <= K) plus.insert({k, 2 * k - sgn(k)});
    if (k != 0 && std::abs(2 * k + sgn(k)) <= K) minus.insert({k, 2 * k + sgn(k)});
  }
  minus.insert({0, 1});
  minus.insert({0, -1});
  for (int j = -K; j <= K; ++j) {
    if (j % 2 != 0 && std::abs(j - (j + sgn(j)) / 2) <= K) wave.insert({j, (j + sgn(j)) / 2});
  }
  CHECK(as_set(scan_schro_resonances(c, K, Branch::Plus)) == plus);
  CHECK(as_set(scan_schro_resonances(c, K, Branch::Minus)) == minus);
  CHECK(as_set(scan_wave_resonances(c, K)) == wave);
}

TEST_CASE("no resonances when 1/alpha is not an integer") {
  for (const Alpha& a : {Alpha(3, 4), Alpha(2, 3), Alpha(5, 7)}) {
    const ResonanceClassifier c(a);
    CHECK(c.mode() == ResonanceMode::NonResonant);
    CHECK(scan_schro_resonances(c, 200, Branch::Plus).empty());
    CHECK(scan_schro_resonances(c, 200, Branch::Minus).empty());
    CHECK(scan_wave_resonances(c, 200).empty());
    CHECK(excluded_tuples_count(c, 64) == 0);
  }
}

TEST_CASE("excluded_tuples_count matches an integer scan") {
  for (const Case& cs : exact_cases()) {
    const ResonanceClassifier c(cs.alpha);
    const int N = 40;
    std::int64_t count = 0;
    for (int k = -N; k <= N; ++k) {
      for (int k1 = -N; k1 <= N; ++k1) {
        if (k1 == 0 || std::abs(k - k1) > N) continue;
        count += (cs.phases.schro(k, k1, 1) == 0) + (cs.phases.schro(k, k1, -1) == 0);
        if (k != 0 && cs.phases.wave(k, k1) == 0) ++count;
      }
    }
    CHECK(excluded_tuples_count(c, N) == count);
  }
}

TEST_CASE("denominator factorization identity") {
  oracle::Gen gen(41);
  for (const Case& cs : exact_cases()) {
    const ResonanceClassifier c(cs.alpha);
    const ComparabilityReport r = denominator_comparability_check(c, 50);
    CHECK(r.identity_exact);
    CHECK(r.pairs > 0);
    // direct check on random tuples: q*(alpha k^2 - alpha (k-k1)^2 - |k1|) = p k1 (2k - k1) - q |k1|
    for (int i = 0; i < 2500; ++i) {
      const std::int64_t k = gen.integer(-100000, 100000);
      std::int64_t k1 = gen.integer(-100000, 100000);
      if (k1 == 0) k1 = 1;
      const Rational lhs = c.schro_denominator_exact(k, k1);
      const Rational rhs = *cs.alpha.exact() * Rational(k1 * (2 * k - k1)) - Rational(oracle::iabs(k1));
      CHECK(lhs == rhs);
    }
  }
  const ComparabilityReport one = denominator_comparability_check(ResonanceClassifier(Alpha(1, 1)), 100);
  CHECK(one.min_ratio > 0.0);
  CHECK(one.resonant_pairs > 0);
  const ComparabilityReport tq = denominator_comparability_check(ResonanceClassifier(Alpha(3, 4)), 100);
  CHECK(tq.min_ratio > 0.0);
  CHECK(tq.max_ratio >= tq.min_ratio);
}

TEST_CASE("floating alpha uses a tolerance") {
  const ResonanceClassifier c(Alpha(1.0));
  CHECK_FALSE(c.exact());
  CHECK(c.schro_resonant(3, 5));
  CHECK(c.wave_resonant(5, 3));
  CHECK(scan_schro_resonances(c, 60).size() ==
        scan_schro_resonances(ResonanceClassifier(Alpha(1, 1)), 60).size());
}

TEST_CASE("B1, B2 and R1-R4 of zero inputs vanish") {
  const ResonanceClassifier c(Alpha(3, 4));
  const ZakharovState zero{FourierField(6), FourierField(6), 0.0};
  CHECK(max_abs(B1(zero, c)) == 0.0);
  CHECK(max_abs(B2(zero.u, c)) == 0.0);
  CHECK(max_abs(R1(zero.u, c)) == 0.0);
  CHECK(max_abs(R2(zero, c)) == 0.0);
  CHECK(max_abs(R3(zero, c)) == 0.0);
  CHECK(max_abs(R4(zero, c)) == 0.0);
}

TEST_CASE("B1, B2 and R1-R4 agree with the brute-force oracles") {
  oracle::Gen gen(42);
  for (const Case& cs : exact_cases()) {
    const ResonanceClassifier c(cs.alpha);
    for (int trial = 0; trial < 20; ++trial) {
      const int N = gen.integer(2, 16);
      const ZakharovState s = gen.state(N, gen.uniform(0.0, 1.5));
      CHECK(oracle::relative_error(B1(s, c), oracle::B1(s, cs.phases)) < 1e-12);
      CHECK(oracle::relative_error(B2(s.u, c), oracle::B2(s.u, s.u, cs.phases)) < 1e-12);
      CHECK(oracle::relative_error(R1(s.u, c), oracle::R1(s.u, cs.phases)) < 1e-12);
      CHECK(oracle::relative_error(R2(s, c), oracle::R2(s, cs.phases)) < 1e-12);
      CHECK(oracle::relative_error(R3(s, c), oracle::R34(s, cs.phases, false)) < 1e-12);
      CHECK(oracle::relative_error(R4(s, c), oracle::R34(s, cs.phases, true)) < 1e-12);
    }
  }
}

TEST_CASE("rho1 on a single resonant pair") {
  const ResonanceClassifier c(Alpha(1, 1));
  const Complex u2(0.3, -0.7);
  const Complex n5(1.1, 0.4);
  const ZakharovState s{FourierField::delta(12, -2, u2), FourierField::delta(12, 5, n5), 0.0};
  const FourierField r = rho1(s, c);
  // n = (n_+ + n_-)/2 has n_5 = n5 / 2
  CHECK(std::abs(r[3] - 0.5 * n5 * u2) < 1e-15);
  FourierField rest = r;
  rest[3] = 0.0;
  CHECK(max_abs(rest) == 0.0);
  CHECK_THROWS_AS(rho1(s, ResonanceClassifier(Alpha(3, 4))), std::logic_error);
}

TEST_CASE("rho2 closed form") {
  const ResonanceClassifier c(Alpha(1, 1));
  const Complex a(0.2, 0.5), b(-1.0, 0.3), d(0.7, -0.1);
  FourierField u = FourierField::delta(8, 1, a) + FourierField::delta(8, 2, b) + FourierField::delta(8, -1, d);
  // (j1, j2) = (2, 1) at j = 3: |j| u_2 conj(u_{-1})
  CHECK(std::abs(rho2(u, c)[3] - 3.0 * b * std::conj(d)) < 1e-15);
  CHECK(std::abs(rho2(u, c, Rho2Variant::AsPrinted)[3] - 3.0 * b * std::conj(a)) < 1e-15);

  oracle::Gen gen(43);
  for (int trial = 0; trial < 20; ++trial) {
    const FourierField v = gen.field(gen.integer(2, 20));
    CHECK(max_abs_difference(rho2(v, c), rho2_scan(v, c)) <= 1e-14 * (1.0 + max_abs(rho2_scan(v, c))));
    FourierField even = gen.field(v.radius(), 1.0, true);
    for (int k = 1; k <= even.radius(); ++k) even[-k] = even[k] = even[k].real();
    const FourierField r = rho2(even, c);
    for (int j = 1; j <= r.radius(); ++j) CHECK(std::abs(r[-j] - std::conj(r[j])) < 1e-14);
  }
  CHECK_THROWS_AS(rho2(u, ResonanceClassifier(Alpha(1, 2))), std::logic_error);
  CHECK_THROWS_AS(rho2(u, ResonanceClassifier(Alpha(3, 4))), std::logic_error);
}

TEST_CASE("normal-form identity") {
  const ZakharovState s = random_initial_state(64, 1.0, 0.0, 1);
  const IdentityResidual tq = dbp_identity_residual(s, ResonanceClassifier(Alpha(3, 4)), {.include_rho = false});
  CHECK(tq.residual_u <= 1e-10);
  CHECK(tq.residual_n <= 1e-10);

  const ResonanceClassifier one(Alpha(1, 1));
  const IdentityResidual with = dbp_identity_residual(s, one);
  const IdentityResidual without = dbp_identity_residual(s, one, {.include_rho = false});
  CHECK(with.residual_u <= 1e-10);
  CHECK(with.residual_n <= 1e-10);
  CHECK(without.residual_u >= 1e3 * with.residual_u);
  CHECK(without.residual_n >= 1e3 * with.residual_n);

  const IdentityResidual printed = dbp_identity_residual(s, one, {.rho2_variant = Rho2Variant::AsPrinted});
  CHECK(printed.residual_n > 1e-3);

  const ZakharovState zero{FourierField(8), FourierField(8), 0.0};
  const IdentityResidual z = dbp_identity_residual(zero, ResonanceClassifier(Alpha(3, 4)));
  CHECK(z.absolute_u == 0.0);
  CHECK(z.absolute_n == 0.0);
}

TEST_CASE("normal-form identity: random states and rescaled u") {
  oracle::Gen gen(44);
  const ResonanceClassifier c(Alpha(3, 4));
  for (int trial = 0; trial < 10; ++trial) {
    const int N = gen.integer(8, 32);
    ZakharovState s = gen.state(N, gen.uniform(0.5, 1.5));
    const IdentityResidual base = dbp_identity_residual(s, c);
    CHECK(base.residual_u <= 1e-10);
    CHECK(base.residual_n <= 1e-10);
    const double lambda = gen.uniform(0.1, 10.0);
    s.u *= lambda;
    // the terms mix degrees one to three in u, so only the residual is scale-free
    const IdentityResidual scaled = dbp_identity_residual(s, c);
    CHECK(scaled.residual_u <= 1e-10);
    CHECK(scaled.residual_n <= 1e-10);
  }
}

TEST_CASE("Duhamel form of the normal-form equation reproduces the solution") {
  // u(t) - e^{-i a k^2 t} u(0) = e^{-i a k^2 t} B1(0) - B1(t) - i int_0^t e^{-i a k^2 (t-t')} (R1 + R2)(t') dt'
  const int N = 64;
  const double a = 0.75;
  const double T = 1.0;
  const double stride = 5e-4;
  const ResonanceClassifier c(Alpha(3, 4));
  const ZakharovState s = random_initial_state(N, 1.0, 0.0, 3);
  const Trajectory traj = integrate(s, ModelParams{Alpha(3, 4), 1.0}, {.dt = stride / 4, .t_end = T, .sample_stride = stride});
  const int M = static_cast<int>(traj.size()) - 1;
  REQUIRE(M % 2 == 0);
  FourierField integral(N);
  for (int i = 0; i <= M; ++i) {
    const double w = (i == 0 || i == M ? 1.0 : (i % 2 ? 4.0 : 2.0)) * stride / 3.0;
    const FourierField F = R1(traj[i].u, c) + R2(traj[i], c);
    for (int k = -N; k <= N; ++k) integral[k] += w * std::polar(1.0, a * k * k * traj[i].t) * F[k];
  }
  const FourierField lhs = traj.back().u - linear_flow_schrodinger(s.u, T, a);
  FourierField rhs_side = linear_flow_schrodinger(B1(s, c), T, a) - B1(traj.back(), c);
  for (int k = -N; k <= N; ++k) rhs_side[k] += Complex(0, -1) * std::polar(1.0, -a * k * k * T) * integral[k];
  CHECK(max_abs_difference(lhs, rhs_side) <= 1e-6);
}

TEST_CASE("a-priori scan constants are finite and R1 is stable under refinement") {
  const AprioriConstants k = apriori_scan(ResonanceClassifier(Alpha(3, 4)), 32, 1.0, 0.0, 20, 5);
  CHECK(std::isfinite(k.B1));
  CHECK(k.B1 > 0.0);
  CHECK(k.B2 > 0.0);
  CHECK(k.rho1 == 0.0);
  const AprioriConstants r = apriori_scan(ResonanceClassifier(Alpha(1, 1)), 32, 1.0, 0.5, 20, 5);
  CHECK(r.rho1 > 0.0);
  CHECK(r.rho2 > 0.0);

  const ResonanceClassifier c(Alpha(3, 4));
  const FourierField u = random_sobolev_field(1.0, 128, 5);
  const double n32 = sobolev_norm(R1(u.resized(32), c), 2.0);
  const double n64 = sobolev_norm(R1(u.resized(64), c), 2.0);
  const double n128 = sobolev_norm(R1(u.resized(128), c), 2.0);
  CHECK(std::isfinite(n128));
  CHECK(std::abs(n64 / n32 - 1.0) < 0.05);
  CHECK(std::abs(n128 / n64 - 1.0) < 0.05);
}
