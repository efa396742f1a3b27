#include "zakharov/reduction.hpp"

#include <cmath>
#include <stdexcept>

#include "zakharov/spectral.hpp"

namespace zakharov {

void validate_state(const ZakharovState& state) {
  if (state.u.radius() != state.n_plus.radius()) {
    throw std::invalid_argument("ZakharovState: u and n_+ truncation radii differ");
  }
  if (!state.n_plus.is_mean_zero()) {
    throw std::invalid_argument("ZakharovState: n_+ must be mean-zero");
  }
}

GaugedData gauge_normalize(const PhysicalTriple& p) {
  GaugedData out{p, {}};
  out.record.A = p.n0.at(0).real();
  out.record.B = p.n1.at(0).real();
  if (!out.triple.n0.empty()) out.triple.n0[0] = 0.0;
  if (!out.triple.n1.empty()) out.triple.n1[0] = 0.0;
  return out;
}

void ungauge(FourierField& u, FourierField& n, double t, const GaugeRecord& record) {
  // the gauged variable is e^{i(Bt^2/2 + At)} u, so undo that phase
  const Complex phase = std::polar(1.0, -(record.B * t * t / 2.0 + record.A * t));
  u *= phase;
  if (!n.empty()) n[0] += record.A + record.B * t;
}

FourierField apply_d(const FourierField& f) {
  FourierField g(f.radius());
  for (int k = -f.radius(); k <= f.radius(); ++k) g[k] = f[k] * static_cast<double>(std::abs(k));
  return g;
}

FourierField apply_d_inverse(const FourierField& f) {
  if (!f.is_mean_zero()) {
    throw std::invalid_argument("apply_d_inverse: input has a nonzero k=0 coefficient");
  }
  FourierField g(f.radius());
  for (int k = -f.radius(); k <= f.radius(); ++k) {
    if (k != 0) g[k] = f[k] / static_cast<double>(std::abs(k));
  }
  return g;
}

ZakharovState to_plus_minus(const PhysicalTriple& p, double t) {
  if (p.n0.radius() != p.n1.radius() || p.u0.radius() != p.n0.radius()) {
    throw std::invalid_argument("to_plus_minus: truncation radii differ");
  }
  if (!p.n0.is_mean_zero()) throw std::invalid_argument("to_plus_minus: n0 must be mean-zero");
  ZakharovState s{p.u0, p.n0 + Complex(0.0, 1.0) * apply_d_inverse(p.n1), t};
  return s;
}

ZakharovState random_initial_state(int radius, double s0, double s1, std::uint64_t seed,
                                   double epsilon) {
  RandomFieldOptions complex_field;
  complex_field.epsilon = epsilon;
  RandomFieldOptions real_field = complex_field;
  real_field.mean_zero = true;
  real_field.real_valued = true;
  // independent streams for the three components
  const PhysicalTriple p{random_sobolev_field(s0, radius, 4 * seed + 1, complex_field),
                         random_sobolev_field(s1, radius, 4 * seed + 2, real_field),
                         random_sobolev_field(s1 - 1.0, radius, 4 * seed + 3, real_field)};
  return to_plus_minus(p, 0.0);
}

FourierField density(const FourierField& n_plus) { return n_plus.real_part(); }

PhysicalTriple from_plus_minus(const ZakharovState& state) {
  const FourierField n_minus = state.n_minus();
  FourierField n = 0.5 * (state.n_plus + n_minus);
  FourierField nt = apply_d(state.n_plus - n_minus) * Complex(0.0, -0.5);
  return {state.u, std::move(n), std::move(nt)};
}

}  // namespace zakharov
