#pragma once

// Brute-force reference implementations and random generators for the unit
// and property tests. Everything here loops over index tuples directly and
// uses integer arithmetic for the resonance tests, so it shares no code path
// with the library beyond FourierField storage.

#include <cmath>
#include <cstdint>
#include <random>

#include "zakharov/fourier_field.hpp"
#include "zakharov/state.hpp"

namespace oracle {

using zakharov::Complex;
using zakharov::FourierField;
using zakharov::ZakharovState;

inline std::int64_t iabs(std::int64_t x) { return x < 0 ? -x : x; }

/// Random inputs with a fixed seed per test.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Complex gaussian coefficients with a power-law envelope <k>^{-decay}.
  FourierField field(int N, double decay = 1.0, bool real_valued = false, bool mean_zero = false) {
    std::normal_distribution<double> g(0.0, 1.0);
    FourierField f(N);
    for (int k = -N; k <= N; ++k) f[k] = Complex(g(rng_), g(rng_)) * std::pow(1.0 + std::abs(k), -decay);
    if (real_valued) f = f.real_part();
    if (mean_zero) f[0] = 0.0;
    return f;
  }

  ZakharovState state(int N, double decay = 1.0, double scale = 1.0) {
    ZakharovState s{field(N, decay) * scale, field(N, decay, false, true) * scale, 0.0};
    return s;
  }

 private:
  std::mt19937_64 rng_;
};

/// (f*g)_k = sum_{m+n=k} f_m g_n for |k| <= N
inline FourierField convolve(const FourierField& f, const FourierField& g) {
  const int N = f.radius();
  FourierField out(N);
  for (int m = -N; m <= N; ++m) {
    for (int n = -N; n <= N; ++n) {
      const int k = m + n;
      if (k >= -N && k <= N) out[k] += f[m] * g[n];
    }
  }
  return out;
}

/// (|u|^2)_j = sum_a u_a conj(u_{a-j})
inline FourierField power(const FourierField& u) {
  const int N = u.radius();
  FourierField out(N);
  for (int j = -N; j <= N; ++j) {
    for (int a = -N; a <= N; ++a) {
      if (a - j >= -N && a - j <= N) out[j] += u[a] * std::conj(u[a - j]);
    }
  }
  return out;
}

/// Re(n_+) as a field: n_k = (n+_k + conj(n+_{-k})) / 2
inline FourierField density(const FourierField& np) {
  const int N = np.radius();
  FourierField n(N);
  for (int k = -N; k <= N; ++k) n[k] = 0.5 * (np[k] + std::conj(np[-k]));
  return n;
}

inline FourierField minus_branch(const FourierField& np) {
  const int N = np.radius();
  FourierField m(N);
  for (int k = -N; k <= N; ++k) m[k] = std::conj(np[-k]);
  return m;
}

struct Derivative {
  FourierField du;
  FourierField dn;
};

/// du_k  = (-i a k^2 - g) u_k - i c sum_{k1} n_{k1} u_{k-k1} - i f_k
/// dn+_j = (-i |j| - g) n+_j - i c |j| sum_{a} u_a conj(u_{a-j}),  j != 0
inline Derivative rhs(const ZakharovState& s, double alpha, double c, double gamma = 0.0,
                      const FourierField& forcing = {}) {
  const int N = s.u.radius();
  const Complex I(0.0, 1.0);
  const FourierField n = density(s.n_plus);
  Derivative d{FourierField(N), FourierField(N)};
  for (int k = -N; k <= N; ++k) {
    Complex nu{};
    for (int k1 = -N; k1 <= N; ++k1) {
      if (k - k1 >= -N && k - k1 <= N) nu += n[k1] * s.u[k - k1];
    }
    d.du[k] = (-I * alpha * double(k) * double(k) - gamma) * s.u[k] - I * c * nu;
    if (!forcing.empty()) d.du[k] -= I * forcing.at(k);
  }
  for (int j = -N; j <= N; ++j) {
    if (j == 0) continue;
    Complex p{};
    for (int a = -N; a <= N; ++a) {
      if (a - j >= -N && a - j <= N) p += s.u[a] * std::conj(s.u[a - j]);
    }
    d.dn[j] = (-I * double(std::abs(j)) - gamma) * s.n_plus[j] - I * c * double(std::abs(j)) * p;
  }
  return d;
}

/// alpha = p/q. q * Omega_sigma(k, k1) = p k^2 - p (k-k1)^2 - sigma q |k1|, an integer.
struct Phases {
  std::int64_t p;
  std::int64_t q;
  std::int64_t schro(std::int64_t k, std::int64_t k1, int sigma) const {
    return p * k * k - p * (k - k1) * (k - k1) - sigma * q * iabs(k1);
  }
  /// q * Omega_w(j, j1) = q |j| - p j1^2 + p (j-j1)^2
  std::int64_t wave(std::int64_t j, std::int64_t j1) const {
    return q * iabs(j) - p * j1 * j1 + p * (j - j1) * (j - j1);
  }
  double value(std::int64_t scaled) const { return double(scaled) / double(q); }
};

/// B1^sigma(a, u)_k over pairs k1 + k2 = k, k1 != 0, nonresonant
inline FourierField B1_branch(const FourierField& a, const FourierField& u, const Phases& ph, int sigma) {
  const int N = u.radius();
  FourierField out(N);
  for (int k1 = -N; k1 <= N; ++k1) {
    if (k1 == 0) continue;
    for (int k2 = -N; k2 <= N; ++k2) {
      const int k = k1 + k2;
      if (k < -N || k > N) continue;
      const std::int64_t w = ph.schro(k, k1, sigma);
      if (w == 0) continue;
      out[k] += a[k1] * u[k2] / ph.value(w);
    }
  }
  return out;
}

inline FourierField B1(const ZakharovState& s, const Phases& ph) {
  return B1_branch(0.5 * s.n_plus, s.u, ph, 1) + B1_branch(0.5 * minus_branch(s.n_plus), s.u, ph, -1);
}

/// B2(a, b)_j = |j| sum a_{j1} conj(b_{-j2}) / Omega_w, j1 + j2 = j
inline FourierField B2(const FourierField& a, const FourierField& b, const Phases& ph) {
  const int N = a.radius();
  FourierField out(N);
  for (int j1 = -N; j1 <= N; ++j1) {
    for (int j2 = -N; j2 <= N; ++j2) {
      const int j = j1 + j2;
      if (j == 0 || j < -N || j > N) continue;
      const std::int64_t w = ph.wave(j, j1);
      if (w == 0) continue;
      out[j] += double(std::abs(j)) * a[j1] * std::conj(b[-j2]) / ph.value(w);
    }
  }
  return out;
}

/// The sums below are written as explicit triple loops.

inline FourierField R1(const FourierField& u, const Phases& ph) {
  const int N = u.radius();
  FourierField out(N);
  for (int k = -N; k <= N; ++k) {
    for (int m = -N; m <= N; ++m) {
      if (m == 0 || k - m < -N || k - m > N) continue;
      Complex P{};
      for (int a = -N; a <= N; ++a) {
        if (a - m >= -N && a - m <= N) P += u[a] * std::conj(u[a - m]);
      }
      const double weight = double(std::abs(m)) * 0.5;
      for (int sigma : {1, -1}) {
        const std::int64_t w = ph.schro(k, m, sigma);
        if (w == 0) continue;
        out[k] += double(sigma) * weight * P * u[k - m] / ph.value(w);
      }
    }
  }
  return out;
}

inline FourierField R2(const ZakharovState& s, const Phases& ph) {
  const int N = s.u.radius();
  const FourierField n = density(s.n_plus);
  const FourierField nm = minus_branch(s.n_plus);
  FourierField out(N);
  for (int k = -N; k <= N; ++k) {
    for (int k1 = -N; k1 <= N; ++k1) {
      const int r = k - k1;
      if (k1 == 0 || r < -N || r > N) continue;
      Complex nu{};
      for (int m = -N; m <= N; ++m) {
        if (r - m >= -N && r - m <= N) nu += n[m] * s.u[r - m];
      }
      for (int sigma : {1, -1}) {
        const std::int64_t w = ph.schro(k, k1, sigma);
        if (w == 0) continue;
        const Complex a = 0.5 * (sigma > 0 ? s.n_plus[k1] : nm[k1]);
        out[k] += a * nu / ph.value(w);
      }
    }
  }
  return out;
}

/// R3 = B2(nu, u), R4 = -B2(u, nu) with nu = T_N(n u), nu computed inline.
inline FourierField R34(const ZakharovState& s, const Phases& ph, bool fourth) {
  const int N = s.u.radius();
  const FourierField n = density(s.n_plus);
  auto nu_at = [&](int r) {
    Complex v{};
    for (int m = -N; m <= N; ++m) {
      if (r - m >= -N && r - m <= N) v += n[m] * s.u[r - m];
    }
    return v;
  };
  FourierField out(N);
  for (int j = -N; j <= N; ++j) {
    if (j == 0) continue;
    for (int j1 = -N; j1 <= N; ++j1) {
      const int j2 = j - j1;
      if (j2 < -N || j2 > N) continue;
      const std::int64_t w = ph.wave(j, j1);
      if (w == 0) continue;
      const Complex term = fourth ? s.u[j1] * std::conj(nu_at(-j2)) : nu_at(j1) * std::conj(s.u[-j2]);
      out[j] += (fourth ? -1.0 : 1.0) * double(std::abs(j)) * term / ph.value(w);
    }
  }
  return out;
}

/// max_k |a_k - b_k| / max(max_k |b_k|, tiny)
inline double relative_error(const FourierField& a, const FourierField& b) {
  double diff = 0.0;
  double scale = 0.0;
  for (int k = -b.radius(); k <= b.radius(); ++k) {
    diff = std::max(diff, std::abs(a.at(k) - b[k]));
    scale = std::max(scale, std::abs(b[k]));
  }
  return diff / std::max(scale, 1e-300);
}

}  // namespace oracle
