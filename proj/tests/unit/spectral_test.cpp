#include <stdexcept>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "zakharov/errors.hpp"
#include "zakharov/spectral.hpp"

using namespace zakharov;

TEST_CASE("sobolev_norm on single modes") {
  CHECK(sobolev_norm(FourierField::delta(8, 0), 3.7) == doctest::Approx(1.0));
  CHECK(sobolev_norm(FourierField::delta(8, 3, 2.0), 1.0) == doctest::Approx(8.0));
  CHECK(sobolev_norm(FourierField(), 1.0) == 0.0);
}

TEST_CASE("sobolev_norm matches a direct sum") {
  FourierField f(64);
  double direct = 0.0;
  for (int k = -64; k <= 64; ++k) {
    f[k] = std::pow(1.0 + std::abs(k), -2.0);
    direct += std::pow(1.0 + std::abs(k), 2.0) * std::norm(f[k]);
  }
  // frozen: sqrt(sum_{|k| <= 64} <k>^{-2}) from an offline double-precision sum
  CHECK(sobolev_norm(f, 1.0) == doctest::Approx(std::sqrt(direct)).epsilon(1e-14));
  CHECK(sobolev_norm(f, 1.0) == doctest::Approx(1.503108238151478).epsilon(1e-14));
}

TEST_CASE("sobolev_norm: Parseval and monotonicity in s") {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const FourierField f = gen.field(gen.integer(1, 40), gen.uniform(0.0, 2.0));
    double l2 = 0.0;
    for (Complex c : f.coeffs()) l2 += std::norm(c);
    CHECK(sobolev_norm(f, 0.0) * sobolev_norm(f, 0.0) == doctest::Approx(l2).epsilon(1e-14));
    const double s = gen.uniform(-1.0, 2.0);
    const double s2 = s + gen.uniform(0.0, 1.5);
    CHECK(sobolev_norm(f, s) <= sobolev_norm(f, s2));
  }
}

TEST_CASE("phi_beta") {
  CHECK(phi_beta(2.0, 1) == doctest::Approx(2.0));
  CHECK(phi_beta(2.0, 0) == 0.0);
  double h100 = 0.0;
  for (int n = 1; n <= 100; ++n) h100 += 1.0 / n;
  CHECK(phi_beta(1.0, 100) == doctest::Approx(2.0 * h100).epsilon(1e-13));
  CHECK(phi_beta(1.0, -100) == doctest::Approx(2.0 * h100).epsilon(1e-13));
  const double two_zeta2 = std::numbers::pi * std::numbers::pi / 3.0;
  for (std::int64_t k : {1LL, 10LL, 1000LL, 100000LL, 1000000LL}) CHECK(phi_beta(2.0, k) <= two_zeta2);
}

TEST_CASE("convolve: trivial products") {
  const FourierField c = convolve(FourierField::delta(8, 1), FourierField::delta(8, 2));
  CHECK(max_abs_difference(c, FourierField::delta(8, 3)) < 1e-15);
  const Complex a(0.3, -1.2);
  const FourierField d = convolve(FourierField::delta(8, 0, a), FourierField::delta(8, 0, a));
  CHECK(max_abs_difference(d, FourierField::delta(8, 0, a * a)) < 1e-15);
  CHECK_THROWS_AS(convolve(FourierField(4), FourierField(5)), std::invalid_argument);
}

TEST_CASE("convolve agrees with the direct double loop") {
  oracle::Gen gen(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int N = gen.integer(1, 64);
    const FourierField f = gen.field(N, gen.uniform(0.0, 1.5));
    const FourierField g = gen.field(N, gen.uniform(0.0, 1.5));
    CHECK(oracle::relative_error(convolve(f, g), oracle::convolve(f, g)) < 1e-13);
  }
}

TEST_CASE("convolve preserves realness; modulus_squared matches the power oracle") {
  oracle::Gen gen(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int N = gen.integer(2, 48);
    const FourierField f = gen.field(N, 1.0, true);
    const FourierField g = gen.field(N, 0.5, true);
    const FourierField c = convolve(f, g);
    CHECK(c.conjugate_asymmetry() <= 1e-13 * max_abs(c));
    const FourierField u = gen.field(N, 1.0);
    const FourierField p = modulus_squared(u);
    CHECK(oracle::relative_error(p, oracle::power(u)) < 1e-13);
    CHECK(p.conjugate_asymmetry() <= 1e-13 * max_abs(p));
  }
}

TEST_CASE("PaddedTransform round trip and grid size") {
  for (int N : {1, 7, 16, 33, 100}) {
    PaddedTransform t(N);
    CHECK(t.grid_size() >= 3 * N + 1);
    CHECK(smooth_fft_size(t.grid_size()) == t.grid_size());
    oracle::Gen gen(N);
    const FourierField f = gen.field(N);
    std::vector<Complex> values(static_cast<std::size_t>(t.grid_size()));
    FourierField back(N);
    t.to_grid(f.coeffs(), values);
    t.to_coeffs(values, back.coeffs());
    CHECK(max_abs_difference(f, back) < 1e-14);
  }
  CHECK(smooth_fft_size(97) == 100);
  CHECK(smooth_fft_size(1) == 1);
}

TEST_CASE("random_sobolev_field") {
  const FourierField a = random_sobolev_field(1.0, 32, 7);
  const FourierField b = random_sobolev_field(1.0, 32, 7);
  CHECK(a == b);
  CHECK_FALSE(a == random_sobolev_field(1.0, 32, 8));
  CHECK(random_sobolev_field(1.0, 32, 7, {.mean_zero = true}).is_mean_zero());
  CHECK(random_sobolev_field(0.0, 32, 3, {.real_valued = true}).conjugate_asymmetry() < 1e-15);
  // a larger radius extends the same field
  CHECK(random_sobolev_field(1.0, 64, 7).resized(32) == a);
  CHECK(random_sobolev_field(0.0, 64, 3, {.mean_zero = true, .real_valued = true}).resized(32) ==
        random_sobolev_field(0.0, 32, 3, {.mean_zero = true, .real_valued = true}));

  const RegularityFit fit = fit_regularity_detail(random_sobolev_field(1.0, 256, 1), {16, 256});
  CHECK(std::abs(fit.decay_exponent - 1.55) <= 0.1);
}

TEST_CASE("fit_regularity") {
  FourierField f(512);
  for (int k = -512; k <= 512; ++k) f[k] = std::pow(1.0 + std::abs(k), -2.0);
  CHECK(std::abs(fit_regularity(f, {16, 512}) - 1.5) <= 0.1);
  CHECK_THROWS_AS(fit_regularity(FourierField::delta(64, 5), {4, 64}), NumericalError);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CHECK(std::abs(fit_regularity(random_sobolev_field(0.5, 256, seed), {16, 256}) - 0.5) <= 0.15);
  }
}

TEST_CASE("fit_regularity: power-law property") {
  oracle::Gen gen(77);
  for (int trial = 0; trial < 20; ++trial) {
    const double sigma = gen.uniform(0.5, 3.0);
    FourierField f(256);
    for (int k = -256; k <= 256; ++k) f[k] = std::polar(std::pow(1.0 + std::abs(k), -sigma), gen.uniform(0, 6.3));
    CHECK(std::abs(fit_regularity(f, {16, 256}) - (sigma - 0.5)) < 0.05);
  }
}

TEST_CASE("least_squares_slope") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
  CHECK(least_squares_slope(x, y) == doctest::Approx(2.0));
}

TEST_CASE("field CSV round trip is exact") {
  oracle::Gen gen(3);
  const FourierField f = gen.field(20);
  std::stringstream io;
  write_field_csv(io, f);
  CHECK(io.str().rfind("k,re,im\n", 0) == 0);
  CHECK(read_field_csv(io) == f);
}

TEST_CASE("FourierField basics") {
  FourierField f(3);
  f[-3] = Complex(1, 2);
  f[3] = Complex(1, -2);
  CHECK(f.is_real_valued());
  CHECK(f.at(4) == Complex{});
  CHECK(f.resized(5).at(-3) == Complex(1, 2));
  CHECK(f.resized(2).radius() == 2);
  f[1] = Complex(0, 1);
  CHECK(f.conjugate_asymmetry() == doctest::Approx(1.0));
  CHECK(f.real_part().is_real_valued(1e-16));
  CHECK(f.conjugate_reflection()[-1] == Complex(0, -1));
}
