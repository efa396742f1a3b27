#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace zakharov {

using Complex = std::complex<double>;

/// Truncated Fourier series f(x) = sum_{|k| <= N} f_k e^{ikx} on the torus.
///
/// Coefficients are stored densely for k = -N..N; index 0 is always
/// addressable. The radius N is fixed at construction.
class FourierField {
 public:
  FourierField() = default;
  explicit FourierField(int radius);
  FourierField(int radius, std::vector<Complex> coeffs);

  static FourierField delta(int radius, int k, Complex amplitude = 1.0);

  int radius() const { return radius_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  /// Unchecked access, -radius() <= k <= radius().
  Complex operator[](int k) const { return coeffs_[static_cast<std::size_t>(k + radius_)]; }
  Complex& operator[](int k) { return coeffs_[static_cast<std::size_t>(k + radius_)]; }

  /// Zero outside the retained range.
  Complex at(int k) const {
    return (k < -radius_ || k > radius_) ? Complex{} : (*this)[k];
  }

  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }

  bool is_mean_zero() const { return empty() || (*this)[0] == Complex{}; }

  /// max_k |f_{-k} - conj(f_k)|; zero for the coefficients of a real function.
  double conjugate_asymmetry() const;
  bool is_real_valued(double tol = 0.0) const { return conjugate_asymmetry() <= tol; }

  /// g_k = conj(f_{-k}), the coefficients of the pointwise conjugate.
  FourierField conjugate_reflection() const;

  /// Projection g_k = (f_k + conj(f_{-k}))/2 onto real-valued functions.
  FourierField real_part() const;

  /// Zero-padded embedding (larger radius) or truncation (smaller radius).
  FourierField resized(int new_radius) const;

  FourierField& operator+=(const FourierField& other);
  FourierField& operator-=(const FourierField& other);
  FourierField& operator*=(Complex scale);

  friend FourierField operator+(FourierField a, const FourierField& b) { return a += b; }
  friend FourierField operator-(FourierField a, const FourierField& b) { return a -= b; }
  friend FourierField operator*(FourierField a, Complex s) { return a *= s; }
  friend FourierField operator*(Complex s, FourierField a) { return a *= s; }

  bool operator==(const FourierField&) const = default;

 private:
  int radius_ = 0;
  std::vector<Complex> coeffs_;
};

/// max_k |a_k - b_k| over the union of both index ranges.
double max_abs_difference(const FourierField& a, const FourierField& b);

/// max_k |f_k|
double max_abs(const FourierField& f);

}  // namespace zakharov
