#include "zakharov/normal_form.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <stdexcept>

#include "zakharov/dynamics.hpp"
#include "zakharov/reduction.hpp"
#include "zakharov/spectral.hpp"

namespace zakharov {

namespace {

constexpr Complex kI{0.0, 1.0};

std::int64_t iabs(std::int64_t x) { return x < 0 ? -x : x; }
std::int64_t isgn(std::int64_t x) { return (x > 0) - (x < 0); }

void warn_floating_alpha(double alpha) {
  static std::atomic<bool> warned{false};
  if (!warned.exchange(true)) {
    std::cerr << "warning: alpha = " << alpha
              << " is not an exact rational; resonances are detected with a 1e-12 tolerance\n";
  }
}

bool near_zero(double omega, double magnitude) { return std::abs(omega) < 1e-12 * (1.0 + magnitude); }

}  // namespace

ResonanceClassifier::ResonanceClassifier(const Alpha& alpha) : alpha_(alpha), mode_(ResonanceMode::NonResonant) {
  if (alpha.is_exact()) {
    p_ = alpha.exact()->numerator();
    q_ = alpha.exact()->denominator();
    // 1/alpha = q/p is a positive integer iff p == 1 (p/q is reduced)
    if (p_ == 1) mode_ = ResonanceMode::Resonant;
  } else {
    warn_floating_alpha(alpha.value());
    const double inv = 1.0 / alpha.value();
    if (inv >= 0.5 && std::abs(inv - std::round(inv)) < 1e-12) mode_ = ResonanceMode::Resonant;
  }
}

double ResonanceClassifier::schro_denominator(std::int64_t k, std::int64_t k1, Branch b) const {
  // alpha k^2 - alpha (k-k1)^2 = alpha k1 (2k - k1)
  return alpha_.value() * static_cast<double>(k1) * static_cast<double>(2 * k - k1) -
         sign_of(b) * static_cast<double>(iabs(k1));
}

double ResonanceClassifier::wave_denominator(std::int64_t j, std::int64_t j1) const {
  // alpha j1^2 - alpha (j-j1)^2 = alpha j (2 j1 - j)
  return static_cast<double>(iabs(j)) -
         alpha_.value() * static_cast<double>(j) * static_cast<double>(2 * j1 - j);
}

Rational ResonanceClassifier::schro_denominator_exact(std::int64_t k, std::int64_t k1, Branch b) const {
  if (!exact()) throw std::logic_error("schro_denominator_exact: alpha is not an exact rational");
  const Rational a = *alpha_.exact();
  return a * Rational(k * k) - a * Rational((k - k1) * (k - k1)) - Rational(sign_of(b) * iabs(k1));
}

Rational ResonanceClassifier::wave_denominator_exact(std::int64_t j, std::int64_t j1) const {
  if (!exact()) throw std::logic_error("wave_denominator_exact: alpha is not an exact rational");
  const Rational a = *alpha_.exact();
  return Rational(iabs(j)) - a * Rational(j1 * j1) + a * Rational((j - j1) * (j - j1));
}

bool ResonanceClassifier::schro_resonant(std::int64_t k, std::int64_t k1, Branch b) const {
  if (exact()) return p_ * k1 * (2 * k - k1) - sign_of(b) * q_ * iabs(k1) == 0;
  const double big = alpha_.value() * std::abs(static_cast<double>(k1) * static_cast<double>(2 * k - k1));
  return near_zero(schro_denominator(k, k1, b), big + static_cast<double>(iabs(k1)));
}

bool ResonanceClassifier::wave_resonant(std::int64_t j, std::int64_t j1) const {
  if (exact()) return q_ * iabs(j) - p_ * j * (2 * j1 - j) == 0;
  const double big = alpha_.value() * std::abs(static_cast<double>(j) * static_cast<double>(2 * j1 - j));
  return near_zero(wave_denominator(j, j1), big + static_cast<double>(iabs(j)));
}

std::vector<IndexPair> scan_schro_resonances(const ResonanceClassifier& c, int K, Branch b) {
  std::vector<IndexPair> out;
  for (int k = -K; k <= K; ++k) {
    for (int k1 = -K; k1 <= K; ++k1) {
      if (k1 != 0 && c.schro_resonant(k, k1, b)) out.push_back({k, k1});
    }
  }
  return out;
}

std::vector<IndexPair> scan_wave_resonances(const ResonanceClassifier& c, int K) {
  std::vector<IndexPair> out;
  for (int j = -K; j <= K; ++j) {
    if (j == 0) continue;
    for (int j1 = std::max(-K, j - K); j1 <= std::min(K, j + K); ++j1) {
      if (c.wave_resonant(j, j1)) out.push_back({j, j1});
    }
  }
  return out;
}

ComparabilityReport denominator_comparability_check(const ResonanceClassifier& c, int K) {
  ComparabilityReport r;
  r.min_ratio = INFINITY;
  r.identity_exact = c.exact();
  const double alpha = c.alpha().value();
  for (std::int64_t k = -K; k <= K; ++k) {
    for (std::int64_t k1 = -K; k1 <= K; ++k1) {
      if (k1 == 0) continue;
      ++r.pairs;
      if (c.schro_resonant(k, k1)) {
        ++r.resonant_pairs;
        continue;
      }
      const double omega = c.schro_denominator(k, k1);
      const double ratio = std::abs(omega) / (bracket(static_cast<double>(k1)) *
                                              bracket(static_cast<double>(2 * k - k1)));
      r.min_ratio = std::min(r.min_ratio, ratio);
      r.max_ratio = std::max(r.max_ratio, ratio);
      if (c.exact()) {
        const Rational lhs = boost::abs(c.schro_denominator_exact(k, k1));
        const Rational a = *c.alpha().exact();
        const Rational rhs = a * Rational(iabs(k1)) *
                             boost::abs(Rational(2 * k - k1) - Rational(isgn(k1)) / a);
        if (lhs != rhs) r.identity_exact = false;
      }
      const double direct = std::abs(alpha * static_cast<double>(k * k) -
                                     alpha * static_cast<double>((k - k1) * (k - k1)) -
                                     static_cast<double>(iabs(k1)));
      const double factored = alpha * static_cast<double>(iabs(k1)) *
                              std::abs(static_cast<double>(2 * k - k1) - static_cast<double>(isgn(k1)) / alpha);
      r.max_identity_error = std::max(r.max_identity_error,
                                      std::abs(direct - factored) / std::max(1.0, direct));
    }
  }
  if (r.pairs == r.resonant_pairs) r.min_ratio = 0.0;
  return r;
}

FourierField B1_branch(const FourierField& a, const FourierField& u, const ResonanceClassifier& c,
                       Branch b) {
  const int n = u.radius();
  if (a.radius() != n) throw std::invalid_argument("B1: truncation radii differ");
  FourierField out(n);
  for (int k = -n; k <= n; ++k) {
    Complex sum{};
    for (int k1 = std::max(-n, k - n); k1 <= std::min(n, k + n); ++k1) {
      if (k1 == 0 || a[k1] == Complex{} || c.schro_resonant(k, k1, b)) continue;
      sum += a[k1] * u[k - k1] / c.schro_denominator(k, k1, b);
    }
    out[k] = sum;
  }
  return out;
}

FourierField B1(const ZakharovState& s, const ResonanceClassifier& c) {
  return B1_branch(0.5 * s.n_plus, s.u, c, Branch::Plus) +
         B1_branch(0.5 * s.n_minus(), s.u, c, Branch::Minus);
}

FourierField B2(const FourierField& a, const FourierField& b, const ResonanceClassifier& c) {
  const int n = a.radius();
  if (b.radius() != n) throw std::invalid_argument("B2: truncation radii differ");
  FourierField out(n);
  for (int j = -n; j <= n; ++j) {
    if (j == 0) continue;
    Complex sum{};
    for (int j1 = std::max(-n, j - n); j1 <= std::min(n, j + n); ++j1) {
      if (c.wave_resonant(j, j1)) continue;
      sum += a[j1] * std::conj(b[j1 - j]) / c.wave_denominator(j, j1);
    }
    out[j] = static_cast<double>(std::abs(j)) * sum;
  }
  return out;
}

FourierField B2(const FourierField& u, const ResonanceClassifier& c) { return B2(u, u, c); }

FourierField rho1_branch(const FourierField& a, const FourierField& u, const ResonanceClassifier& c,
                         Branch b) {
  const int n = u.radius();
  if (a.radius() != n) throw std::invalid_argument("rho1: truncation radii differ");
  FourierField out(n);
  for (int k = -n; k <= n; ++k) {
    for (int k1 = std::max(-n, k - n); k1 <= std::min(n, k + n); ++k1) {
      if (k1 != 0 && c.schro_resonant(k, k1, b)) out[k] += a[k1] * u[k - k1];
    }
  }
  return out;
}

namespace {

void require_resonant(const ResonanceClassifier& c, const char* what) {
  if (c.mode() != ResonanceMode::Resonant) {
    throw std::logic_error(std::string(what) + ": resonant terms exist only when 1/alpha is a positive integer");
  }
}

bool alpha_is_one(const ResonanceClassifier& c) {
  return c.exact() ? *c.alpha().exact() == Rational(1) : c.alpha().value() == 1.0;
}

}  // namespace

FourierField rho1(const ZakharovState& s, const ResonanceClassifier& c) {
  require_resonant(c, "rho1");
  return rho1_branch(0.5 * s.n_plus, s.u, c, Branch::Plus) +
         rho1_branch(0.5 * s.n_minus(), s.u, c, Branch::Minus);
}

FourierField rho2(const FourierField& u, const ResonanceClassifier& c, Rho2Variant variant) {
  require_resonant(c, "rho2");
  if (!alpha_is_one(c)) throw std::logic_error("rho2: the closed form holds for alpha = 1 only");
  const int n = u.radius();
  FourierField out(n);
  for (int j = -n; j <= n; ++j) {
    if (j % 2 == 0) continue;
    const int s = j > 0 ? 1 : -1;
    const int j1 = (j + s) / 2;
    const int j2 = (j - s) / 2;
    const Complex second = variant == Rho2Variant::Substitution ? u.at(-j2) : u.at(j2);
    out[j] = static_cast<double>(std::abs(j)) * u.at(j1) * std::conj(second);
  }
  return out;
}

FourierField rho2_scan(const FourierField& u, const ResonanceClassifier& c) {
  require_resonant(c, "rho2");
  const int n = u.radius();
  FourierField out(n);
  for (int j = -n; j <= n; ++j) {
    if (j == 0) continue;
    Complex sum{};
    for (int j1 = std::max(-n, j - n); j1 <= std::min(n, j + n); ++j1) {
      if (c.wave_resonant(j, j1)) sum += u[j1] * std::conj(u[j1 - j]);
    }
    out[j] = static_cast<double>(std::abs(j)) * sum;
  }
  return out;
}

FourierField R1(const FourierField& u, const ResonanceClassifier& c) {
  const FourierField dp = apply_d(modulus_squared(u));
  return 0.5 * B1_branch(dp, u, c, Branch::Plus) - 0.5 * B1_branch(dp, u, c, Branch::Minus);
}

namespace {

FourierField coupling_product(const ZakharovState& s) { return convolve(density(s.n_plus), s.u); }

}  // namespace

FourierField R2(const ZakharovState& s, const ResonanceClassifier& c) {
  const FourierField nu = coupling_product(s);
  return B1_branch(0.5 * s.n_plus, nu, c, Branch::Plus) +
         B1_branch(0.5 * s.n_minus(), nu, c, Branch::Minus);
}

FourierField R3(const ZakharovState& s, const ResonanceClassifier& c) {
  return B2(coupling_product(s), s.u, c);
}

FourierField R4(const ZakharovState& s, const ResonanceClassifier& c) {
  return Complex(-1.0) * B2(s.u, coupling_product(s), c);
}

IdentityResidual dbp_identity_residual(const ZakharovState& s, const ResonanceClassifier& c,
                                       const IdentityOptions& options) {
  validate_state(s);
  const int n = s.radius();
  ModelParams params{c.alpha(), 1.0};
  const StateDerivative d = rhs(s, params);
  const FourierField n_minus = s.n_minus();
  const FourierField dn_minus = d.dn_plus.conjugate_reflection();

  const FourierField b1 = B1(s, c);
  const FourierField b1_dot = B1_branch(0.5 * d.dn_plus, s.u, c, Branch::Plus) +
                              B1_branch(0.5 * dn_minus, s.u, c, Branch::Minus) +
                              B1_branch(0.5 * s.n_plus, d.du, c, Branch::Plus) +
                              B1_branch(0.5 * n_minus, d.du, c, Branch::Minus);
  const FourierField b2 = B2(s.u, c);
  const FourierField b2_dot = B2(d.du, s.u, c) + B2(s.u, d.du, c);

  const bool with_rho = options.include_rho && c.mode() == ResonanceMode::Resonant;
  FourierField r_u = R1(s.u, c) + R2(s, c);
  FourierField r_n = R3(s, c) + R4(s, c);
  FourierField rho_u(n), rho_n(n);
  if (with_rho) {
    rho_u = rho1(s, c);
    rho_n = (alpha_is_one(c) || options.rho2_variant == Rho2Variant::AsPrinted)
                ? rho2(s.u, c, options.rho2_variant)
                : rho2_scan(s.u, c);
  }

  IdentityResidual out;
  const double alpha = c.alpha().value();
  const int interior = static_cast<int>(std::floor(options.interior_fraction * n));
  for (int k = -interior; k <= interior; ++k) {
    const double kk = static_cast<double>(k);
    const double lin_u = alpha * kk * kk;
    const double lin_n = std::abs(kk);
    const Complex lhs_u = kI * (d.du[k] + b1_dot[k]) - lin_u * (s.u[k] + b1[k]);
    const Complex rhs_u = rho_u[k] + r_u[k];
    const Complex lhs_n = kI * (d.dn_plus[k] + b2_dot[k]) - lin_n * (s.n_plus[k] + b2[k]);
    const Complex rhs_n = rho_n[k] + r_n[k];
    out.absolute_u = std::max(out.absolute_u, std::abs(lhs_u - rhs_u));
    out.absolute_n = std::max(out.absolute_n, std::abs(lhs_n - rhs_n));
    for (const double t : {std::abs(d.du[k]), lin_u * std::abs(s.u[k]), std::abs(b1_dot[k]),
                           lin_u * std::abs(b1[k]), std::abs(rho_u[k]), std::abs(r_u[k])}) {
      out.scale_u = std::max(out.scale_u, t);
    }
    for (const double t : {std::abs(d.dn_plus[k]), lin_n * std::abs(s.n_plus[k]), std::abs(b2_dot[k]),
                           lin_n * std::abs(b2[k]), std::abs(rho_n[k]), std::abs(r_n[k])}) {
      out.scale_n = std::max(out.scale_n, t);
    }
  }
  out.residual_u = out.scale_u > 0.0 ? out.absolute_u / out.scale_u : 0.0;
  out.residual_n = out.scale_n > 0.0 ? out.absolute_n / out.scale_n : 0.0;
  return out;
}

std::int64_t excluded_tuples_count(const ResonanceClassifier& c, int N) {
  std::int64_t count = 0;
  for (int k = -N; k <= N; ++k) {
    for (int k1 = std::max(-N, k - N); k1 <= std::min(N, k + N); ++k1) {
      if (k1 == 0) continue;
      count += c.schro_resonant(k, k1, Branch::Plus);
      count += c.schro_resonant(k, k1, Branch::Minus);
    }
  }
  for (int j = -N; j <= N; ++j) {
    if (j == 0) continue;
    for (int j1 = std::max(-N, j - N); j1 <= std::min(N, j + N); ++j1) count += c.wave_resonant(j, j1);
  }
  return count;
}

AprioriConstants apriori_scan(const ResonanceClassifier& c, int N, double s0, double s1, int samples,
                              std::uint64_t seed) {
  AprioriConstants out;
  const bool resonant = c.mode() == ResonanceMode::Resonant;
  for (int i = 0; i < samples; ++i) {
    const ZakharovState s = random_initial_state(N, s0, s1, seed + static_cast<std::uint64_t>(i));
    const double nu = sobolev_norm(s.n_plus, s1) * sobolev_norm(s.u, s0);
    const double uu = std::pow(sobolev_norm(s.u, s0), 2);
    out.B1 = std::max(out.B1, sobolev_norm(B1(s, c), 1.0 + s0 + std::min(s1, 0.0)) / nu);
    out.B2 = std::max(out.B2, sobolev_norm(B2(s.u, c), std::min(2.0 * s0, 1.0 + s0)) / uu);
    if (resonant) {
      out.rho1 = std::max(out.rho1, sobolev_norm(rho1(s, c), s0 + s1) / nu);
      out.rho2 = std::max(out.rho2, sobolev_norm(rho2_scan(s.u, c), 2.0 * s0 - 1.0) / uu);
    }
  }
  return out;
}

}  // namespace zakharov
