#include "zakharov/fourier_field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace zakharov {

FourierField::FourierField(int radius) : radius_(radius) {
  if (radius < 0) throw std::invalid_argument("FourierField: negative radius");
  coeffs_.assign(static_cast<std::size_t>(2 * radius + 1), Complex{});
}

FourierField::FourierField(int radius, std::vector<Complex> coeffs)
    : radius_(radius), coeffs_(std::move(coeffs)) {
  if (radius < 0 || coeffs_.size() != static_cast<std::size_t>(2 * radius + 1)) {
    throw std::invalid_argument("FourierField: expected " + std::to_string(2 * radius + 1) +
                                " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

FourierField FourierField::delta(int radius, int k, Complex amplitude) {
  FourierField f(radius);
  if (k < -radius || k > radius) throw std::out_of_range("FourierField::delta: mode outside range");
  f[k] = amplitude;
  return f;
}

double FourierField::conjugate_asymmetry() const {
  double worst = 0.0;
  for (int k = 0; k <= radius_; ++k) {
    worst = std::max(worst, std::abs((*this)[-k] - std::conj((*this)[k])));
  }
  return worst;
}

FourierField FourierField::conjugate_reflection() const {
  FourierField g(radius_);
  for (int k = -radius_; k <= radius_; ++k) g[k] = std::conj((*this)[-k]);
  return g;
}

FourierField FourierField::real_part() const {
  FourierField g(radius_);
  for (int k = -radius_; k <= radius_; ++k) g[k] = 0.5 * ((*this)[k] + std::conj((*this)[-k]));
  return g;
}

FourierField FourierField::resized(int new_radius) const {
  FourierField g(new_radius);
  const int r = std::min(radius_, new_radius);
  for (int k = -r; k <= r; ++k) g[k] = (*this)[k];
  return g;
}

FourierField& FourierField::operator+=(const FourierField& other) {
  if (other.radius_ != radius_) throw std::invalid_argument("FourierField: radius mismatch in +=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

FourierField& FourierField::operator-=(const FourierField& other) {
  if (other.radius_ != radius_) throw std::invalid_argument("FourierField: radius mismatch in -=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

FourierField& FourierField::operator*=(Complex scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

double max_abs_difference(const FourierField& a, const FourierField& b) {
  const int r = std::max(a.radius(), b.radius());
  double worst = 0.0;
  for (int k = -r; k <= r; ++k) worst = std::max(worst, std::abs(a.at(k) - b.at(k)));
  return worst;
}

double max_abs(const FourierField& f) {
  double worst = 0.0;
  for (auto c : f.coeffs()) worst = std::max(worst, std::abs(c));
  return worst;
}

}  // namespace zakharov
