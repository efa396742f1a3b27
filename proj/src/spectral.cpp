#include "zakharov/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "zakharov/errors.hpp"

namespace zakharov {

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

double sobolev_norm(const FourierField& f, double s) {
  double sum = 0.0;
  const int n = f.radius();
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double a = std::norm(c[i]);
    if (a == 0.0) continue;
    sum += (s == 0.0 ? 1.0 : std::pow(bracket(static_cast<int>(i) - n), 2.0 * s)) * a;
  }
  return std::sqrt(sum);
}

double phi_beta(double beta, std::int64_t k) {
  const std::int64_t m = k < 0 ? -k : k;
  // smallest terms first
  double sum = 0.0;
  for (std::int64_t n = m; n >= 1; --n) sum += std::pow(static_cast<double>(n), -beta);
  return 2.0 * sum;
}

int smooth_fft_size(int min_size) {
  for (int m = std::max(min_size, 1);; ++m) {
    int r = m;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

PaddedTransform::PaddedTransform(int radius)
    : radius_(radius), grid_(smooth_fft_size(3 * radius + 1)) {
  buffer_in_ = reinterpret_cast<Complex*>(fftw_alloc_complex(static_cast<std::size_t>(grid_)));
  buffer_out_ = reinterpret_cast<Complex*>(fftw_alloc_complex(static_cast<std::size_t>(grid_)));
  auto* in = reinterpret_cast<fftw_complex*>(buffer_in_);
  auto* out = reinterpret_cast<fftw_complex*>(buffer_out_);
  std::lock_guard lock(planner_mutex());
  backward_ = fftw_plan_dft_1d(grid_, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  forward_ = fftw_plan_dft_1d(grid_, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
}

PaddedTransform::~PaddedTransform() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(backward_));
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_free(buffer_in_);
  fftw_free(buffer_out_);
}

void PaddedTransform::to_grid(std::span<const Complex> coeffs, std::span<Complex> values) {
  std::fill(buffer_in_, buffer_in_ + grid_, Complex{});
  for (int k = -radius_; k <= radius_; ++k) {
    buffer_in_[(k + grid_) % grid_] = coeffs[static_cast<std::size_t>(k + radius_)];
  }
  fftw_execute(static_cast<fftw_plan>(backward_));
  std::copy(buffer_out_, buffer_out_ + grid_, values.begin());
}

void PaddedTransform::to_coeffs(std::span<const Complex> values, std::span<Complex> coeffs) {
  std::copy(values.begin(), values.begin() + grid_, buffer_in_);
  fftw_execute(static_cast<fftw_plan>(forward_));
  const double scale = 1.0 / grid_;
  for (int k = -radius_; k <= radius_; ++k) {
    coeffs[static_cast<std::size_t>(k + radius_)] = buffer_out_[(k + grid_) % grid_] * scale;
  }
}

namespace {

PaddedTransform& thread_transform(int radius) {
  thread_local std::map<int, std::unique_ptr<PaddedTransform>> cache;
  auto& slot = cache[radius];
  if (!slot) slot = std::make_unique<PaddedTransform>(radius);
  return *slot;
}

}  // namespace

FourierField convolve(const FourierField& f, const FourierField& g) {
  if (f.radius() != g.radius()) {
    throw std::invalid_argument("convolve: truncation radii differ (" +
                                std::to_string(f.radius()) + " vs " +
                                std::to_string(g.radius()) + ")");
  }
  auto& tr = thread_transform(f.radius());
  const auto m = static_cast<std::size_t>(tr.grid_size());
  std::vector<Complex> a(m), b(m);
  tr.to_grid(f.coeffs(), a);
  tr.to_grid(g.coeffs(), b);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  FourierField out(f.radius());
  tr.to_coeffs(a, out.coeffs());
  return out;
}

FourierField modulus_squared(const FourierField& f) {
  auto& tr = thread_transform(f.radius());
  const auto m = static_cast<std::size_t>(tr.grid_size());
  std::vector<Complex> a(m);
  tr.to_grid(f.coeffs(), a);
  for (auto& v : a) v = std::norm(v);
  FourierField out(f.radius());
  tr.to_coeffs(a, out.coeffs());
  // |f|^2 is real: enforce exact conjugate symmetry
  return out.real_part();
}

FourierField random_sobolev_field(double s, int radius, std::uint64_t seed,
                                  RandomFieldOptions options) {
  if (radius < 1) throw std::invalid_argument("random_sobolev_field: radius must be >= 1");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double exponent = -s - 0.5 - options.epsilon;
  FourierField f(radius);
  // draw in the order 0, 1, -1, 2, -2, ... so that a larger radius extends
  // the same field
  f[0] = std::polar(1.0, phase(gen));
  for (int k = 1; k <= radius; ++k) {
    f[k] = std::polar(std::pow(bracket(k), exponent), phase(gen));
    f[-k] = std::polar(std::pow(bracket(k), exponent), phase(gen));
  }
  if (options.real_valued) {
    for (int k = 1; k <= radius; ++k) f[-k] = std::conj(f[k]);
    const double a0 = std::abs(f[0]);
    f[0] = f[0].real() < 0.0 ? -a0 : a0;
  }
  if (options.mean_zero) f[0] = 0.0;
  return f;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("least_squares_slope: need >= 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares_slope: degenerate abscissae");
  return sxy / sxx;
}

RegularityFit fit_regularity_detail(const FourierField& f, FitRange range, double noise_floor) {
  if (range.lo < 1 || range.hi < range.lo || range.hi > f.radius()) {
    throw std::invalid_argument("fit_regularity: fit range must satisfy 1 <= lo <= hi <= N");
  }
  const double floor = noise_floor * max_abs(f);
  RegularityFit fit;
  std::vector<double> log_center, log_rms;
  for (int a = range.lo; a <= range.hi; a *= 2) {
    int b = std::min(2 * a - 1, range.hi);
    if (2 * a >= range.hi) b = range.hi;  // last shell closed at hi
    double mass = 0.0, log_sum = 0.0;
    int count = 0;
    for (int k = a; k <= b; ++k) {
      mass += std::norm(f[k]) + std::norm(f[-k]);
      log_sum += 2.0 * std::log(bracket(k));
      count += 2;
    }
    const double rms = std::sqrt(mass / count);
    const double center = std::exp(log_sum / count);
    if (rms > floor && rms > 0.0) {
      fit.shell_centers.push_back(center);
      fit.shell_rms.push_back(rms);
      log_center.push_back(std::log(center));
      log_rms.push_back(std::log(rms));
    }
    if (b == range.hi) break;
  }
  fit.shells_used = static_cast<int>(log_center.size());
  if (fit.shells_used < 3) {
    throw NumericalError("insufficient tail: " + std::to_string(fit.shells_used) +
                         " usable dyadic shells in [" + std::to_string(range.lo) + ", " +
                         std::to_string(range.hi) + "], need 3");
  }
  fit.decay_exponent = -least_squares_slope(log_center, log_rms);
  fit.regularity = fit.decay_exponent - 0.5;
  return fit;
}

double fit_regularity(const FourierField& f, FitRange range, double noise_floor) {
  return fit_regularity_detail(f, range, noise_floor).regularity;
}

void write_field_csv(std::ostream& out, const FourierField& f) {
  out << "k,re,im\n";
  char line[96];
  for (int k = -f.radius(); k <= f.radius(); ++k) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", k, f[k].real(), f[k].imag());
    out << line;
  }
}

FourierField read_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("k,re,im", 0) != 0) {
    throw std::invalid_argument("read_field_csv: missing header 'k,re,im'");
  }
  std::vector<std::pair<int, Complex>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string k, re, im;
    if (!std::getline(row, k, ',') || !std::getline(row, re, ',') || !std::getline(row, im)) {
      throw std::invalid_argument("read_field_csv: malformed row '" + line + "'");
    }
    rows.emplace_back(std::stoi(k), Complex(std::stod(re), std::stod(im)));
  }
  if (rows.empty() || rows.size() % 2 == 0) {
    throw std::invalid_argument("read_field_csv: expected 2N+1 rows");
  }
  const int radius = static_cast<int>(rows.size() / 2);
  FourierField f(radius);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != static_cast<int>(i) - radius) {
      throw std::invalid_argument("read_field_csv: modes must run -N..N in order");
    }
    f[rows[i].first] = rows[i].second;
  }
  return f;
}

}  // namespace zakharov
