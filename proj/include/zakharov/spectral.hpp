#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "zakharov/fourier_field.hpp"

namespace zakharov {

/// <k> = 1 + |k|
inline double bracket(double k) { return 1.0 + (k < 0 ? -k : k); }

/// ( sum_k <k>^{2s} |f_k|^2 )^{1/2}, sequence normalization (no 2*pi factor).
double sobolev_norm(const FourierField& f, double s);

/// phi_beta(k) = sum_{1 <= |n| <= |k|} |n|^{-beta}. The n = 0 term is excluded.
double phi_beta(double beta, std::int64_t k);

/// Smallest grid size >= min_size whose only prime factors are 2, 3 and 5.
int smooth_fft_size(int min_size);

/// Zero-padded FFT pair for fields of a fixed radius N on a grid of
/// M >= 3N + 1 points, so quadratic products are alias-free on |k| <= N.
///
/// Holds FFTW plans and scratch buffers; one instance per thread.
class PaddedTransform {
 public:
  explicit PaddedTransform(int radius);
  ~PaddedTransform();
  PaddedTransform(const PaddedTransform&) = delete;
  PaddedTransform& operator=(const PaddedTransform&) = delete;

  int radius() const { return radius_; }
  int grid_size() const { return grid_; }

  /// values_j = sum_k f_k e^{2 pi i j k / M}, j = 0..M-1.
  void to_grid(std::span<const Complex> coeffs, std::span<Complex> values);
  /// Inverse of to_grid, keeping |k| <= radius.
  void to_coeffs(std::span<const Complex> values, std::span<Complex> coeffs);

 private:
  int radius_;
  int grid_;
  Complex* buffer_in_ = nullptr;
  Complex* buffer_out_ = nullptr;
  void* backward_ = nullptr;
  void* forward_ = nullptr;
};

/// Truncated alias-free convolution (f*g)_k = sum_{m+n=k} f_m g_n, |k| <= N.
FourierField convolve(const FourierField& f, const FourierField& g);

/// Coefficients of |f|^2 truncated to |k| <= N, i.e. f * conj_reflection(f).
FourierField modulus_squared(const FourierField& f);

struct RandomFieldOptions {
  bool mean_zero = false;
  bool real_valued = false;
  double epsilon = 0.05;
};

/// f_k = <k>^{-s-1/2-eps} e^{i theta_k} with i.i.d. uniform phases from a
/// generator seeded with `seed`. Real-valued fields use theta_{-k} = -theta_k.
/// Fields of different radius with the same seed agree on their common modes.
FourierField random_sobolev_field(double s, int radius, std::uint64_t seed,
                                  RandomFieldOptions options = {});

struct RegularityFit {
  double decay_exponent = 0.0;  // sigma: per-mode amplitude ~ <k>^{-sigma}
  double regularity = 0.0;      // sigma - 1/2
  int shells_used = 0;
  std::vector<double> shell_centers;
  std::vector<double> shell_rms;
};

struct FitRange {
  int lo = 1;
  int hi = 1;
};

/// Dyadic-shell tail fit: least-squares slope of log(shell RMS amplitude)
/// against log(shell geometric center). Shells are [lo 2^i, lo 2^{i+1}) with
/// the last one closed at hi. Shells whose RMS falls below
/// noise_floor * max|f_k| are dropped.
/// Throws NumericalError("insufficient tail") with fewer than 3 usable shells.
RegularityFit fit_regularity_detail(const FourierField& f, FitRange range,
                                    double noise_floor = 1e-14);
double fit_regularity(const FourierField& f, FitRange range, double noise_floor = 1e-14);

/// CSV with header "k,re,im", one row per mode, 17 significant digits.
void write_field_csv(std::ostream& out, const FourierField& f);
FourierField read_field_csv(std::istream& in);

/// Least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace zakharov
