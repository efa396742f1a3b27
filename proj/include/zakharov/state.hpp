#pragma once

#include "zakharov/fourier_field.hpp"

namespace zakharov {

/// (u, n_+) at time t. n_- is never stored: n_- = conj_reflection(n_+).
struct ZakharovState {
  FourierField u;
  FourierField n_plus;
  double t = 0.0;

  int radius() const { return u.radius(); }
  FourierField n_minus() const { return n_plus.conjugate_reflection(); }
};

/// Throws std::invalid_argument unless radii agree and n_+ is mean-zero.
void validate_state(const ZakharovState& state);

}  // namespace zakharov
