#pragma once

#include <cstdint>

#include "zakharov/fourier_field.hpp"
#include "zakharov/state.hpp"

namespace zakharov {

/// Raw data (u0, n0, n1) of the second-order system; n0, n1 real-valued.
struct PhysicalTriple {
  FourierField u0;
  FourierField n0;
  FourierField n1;
};

/// Spatial means removed by the gauge n -> n - A - Bt, u -> e^{i(Bt^2/2 + At)} u.
struct GaugeRecord {
  double A = 0.0;
  double B = 0.0;
};

struct GaugedData {
  PhysicalTriple triple;
  GaugeRecord record;
};

GaugedData gauge_normalize(const PhysicalTriple& p);

/// Map a solution (u, n) of the mean-zero system at time t back to the
/// original variables.
void ungauge(FourierField& u, FourierField& n, double t, const GaugeRecord& record);

/// (d f)_k = |k| f_k
FourierField apply_d(const FourierField& f);
/// (d^{-1} f)_k = f_k / |k|, k != 0. Throws std::invalid_argument unless f is mean-zero.
FourierField apply_d_inverse(const FourierField& f);

/// n_+ = n0 + i d^{-1} n1; u passes through. Requires mean-zero n0, n1.
ZakharovState to_plus_minus(const PhysicalTriple& p, double t = 0.0);

/// n = (n_+ + n_-)/2, n_t = d(n_+ - n_-)/(2i), with n_- = conj_reflection(n_+).
PhysicalTriple from_plus_minus(const ZakharovState& state);

/// Random mean-zero data for the n_+/- system: u0 at regularity s0 (complex),
/// n0 at s1 and n1 at s1 - 1 (real, mean-zero), so n_+ sits at s1.
/// Deterministic in (radius, s0, s1, seed, epsilon).
ZakharovState random_initial_state(int radius, double s0, double s1, std::uint64_t seed,
                                   double epsilon = 0.05);

/// Physical density n = (n_+ + n_-)/2 = real_part(n_+).
FourierField density(const FourierField& n_plus);

}  // namespace zakharov
