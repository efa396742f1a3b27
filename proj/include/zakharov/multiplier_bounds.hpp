#pragma once

#include <cstdint>
#include <vector>

namespace zakharov {

/// Truncated sum, an estimate of the part beyond the cutoff, and the
/// comparison with a closed-form bound.
struct LemmaValue {
  double value = 0.0;       // truncated sum (or quadrature) plus tail estimate
  double truncated = 0.0;   // the part computed term by term
  double tail = 0.0;        // Euler-Maclaurin (sums) or quadrature (integral) tail
  double tail_bound = 0.0;  // crude upper bound for the neglected part
  double bound = 0.0;
  double ratio = 0.0;       // value / bound
};

/// sum_n <n-k1>^{-beta} <n-k2>^{-gamma} against <k1-k2>^{-gamma} phi_beta(<k1-k2>).
/// Requires beta >= gamma >= 0 and beta + gamma > 1 (std::invalid_argument).
/// cutoff <= 0 picks 64 (1 + |k1| + |k2|) + 1024.
LemmaValue lemma_sum_a(double beta, double gamma, std::int64_t k1, std::int64_t k2,
                       std::int64_t cutoff = 0);

/// sum_n <n^2 + c1 n + c2>^{-beta}, beta > 1/2. bound and ratio are left at
/// zero: the claim is only that the value is bounded uniformly in (c1, c2).
LemmaValue lemma_sum_c(double beta, double c1, double c2, std::int64_t cutoff = 0);

/// int_R dtau / (<tau+rho1>^beta <tau+rho2>) against <rho1-rho2>^{-beta+delta},
/// beta in (0, 1]. Quadrature over |tau| <= 1e6 <rho1-rho2>, tails added.
LemmaValue lemma_int_b(double beta, double rho1, double rho2, double delta = 0.01);

struct LemmaSweep {
  std::vector<double> abscissa;  // the swept distance or level
  std::vector<double> ratio;     // ratio (lemma a, b) or value (lemma c)
  double slope = 0.0;            // log-log least-squares slope of ratio vs <abscissa>
  double sup = 0.0;
};

/// k1 = 0, k2 = 2^i, i = 0..max_log2.
LemmaSweep sweep_lemma_a(double beta, double gamma, int max_log2 = 10);
/// rho1 = 2^i, rho2 = 0, i = 0..max_log2.
LemmaSweep sweep_lemma_b(double beta, int max_log2 = 20, double delta = 0.01);
/// Level c in {0, 1, 10, ..., 10^max_log10}; at each level the sup over all
/// (c1, c2) in {0, +-1, ..., +-10^level}^2 with max(|c1|, |c2|) at that level,
/// plus the root probe c2 = -m^2 at m = sqrt(level). The slope is taken over
/// levels >= 1.
LemmaSweep sweep_lemma_c(double beta, int max_log10 = 6);

enum class SupSumKind { R1, R2, R3, R4 };

struct SupSumParams {
  double s = 0.0;
  double s0 = 1.0;
  double s1 = 0.0;
  double b = 0.55;
  double alpha = 0.75;
  int K = 1024;           // largest |k| on the dyadic grid
  int inner_factor = 8;   // inner indices range over |.| <= inner_factor * K
  double delta = 0.01;    // the exponent 2 - 2b is lowered to 2 - 2b - delta
};

struct SupSumResult {
  std::vector<int> k;           // 1, 2, 4, ..., K
  std::vector<double> inner;    // the double sum without the <k>^{2s} factor
  std::vector<double> sum;      // <k>^{2s} * inner
  double k0_value = 0.0;        // the k = 0 column (j = 0 has no wave sum and is skipped)
  double sup = 0.0;
  double slope = 0.0;           // log-log slope of sum vs <k> over k >= K/16
  bool admissible = false;      // s within the proven range for (s0, s1, b)
  int inner_cutoff = 0;
};

/// Inner double sum at one k (without <k>^{2s}) with inner cutoff L.
///  R1: sum over k1, k2 (k1 + k2 != 0) of
///      <k1>^{-2s0} <k2>^{-2s0} <k-k1-k2>^{-2s0} / (<2k-k1-k2>^2 <(k1+k2)(k-k1)>^{e})
///  R2: sum over k1, k2 != 0, nonresonant (k, k1), of
///      <k1>^{-2-2s1} <k2>^{-2s1} <k-k1-k2>^{-2s0} / (<2k-k1>^2 <alpha k^2 - |k1| - |k2| - alpha (k-k1-k2)^2>^{e})
///  R3/R4: sum over m, n (j - n - m != 0) of
///      <j-n-m>^{-2s1} / (<2n-j>^2 <m>^{2s0} <n>^{2s0} <alpha n^2 - alpha m^2 +- |j| - |j-n-m|>^{e})
/// with e = 2 - 2b - delta. L counts |k1|, |n| (R2: |k1|, |n| with n = k1 + k2 - k).
double supsum_inner(SupSumKind kind, const SupSumParams& p, std::int64_t k, std::int64_t L);

SupSumResult supsum(SupSumKind kind, const SupSumParams& p);
SupSumResult supsum_R1(const SupSumParams& p);
SupSumResult supsum_R2(const SupSumParams& p);
SupSumResult supsum_wave(const SupSumParams& p, SupSumKind variant);

/// Rescale a finished sweep to another s (the s dependence is the <k>^{2s} prefactor).
SupSumResult rescale_supsum(const SupSumResult& r, SupSumKind kind, const SupSumParams& p, double s);

/// Largest s for which the corresponding proposition gives boundedness.
double admissible_s(SupSumKind kind, double s0, double s1, double b);

/// alpha-admissibility of (s0, s1); `resonant` selects the 1/alpha in N branch.
bool is_admissible_pair(double s0, double s1, bool resonant);

}  // namespace zakharov
