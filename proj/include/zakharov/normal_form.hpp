#pragma once

#include <cstdint>
#include <vector>

#include "zakharov/alpha.hpp"
#include "zakharov/fourier_field.hpp"
#include "zakharov/state.hpp"

namespace zakharov {

/// Sign of the half-wave carried by n_sigma: n_+ oscillates like e^{-i|j|t},
/// n_- like e^{+i|j|t}.
enum class Branch { Plus = 1, Minus = -1 };

inline int sign_of(Branch b) { return b == Branch::Plus ? 1 : -1; }

enum class ResonanceMode { NonResonant, Resonant };

/// Decides which index tuples have a vanishing phase.
///
/// With alpha = p/q exact, q * Omega is an integer and zero tests are exact.
/// Otherwise |Omega| < 1e-12 counts as zero and a warning is printed once.
class ResonanceClassifier {
 public:
  explicit ResonanceClassifier(const Alpha& alpha);

  const Alpha& alpha() const { return alpha_; }
  ResonanceMode mode() const { return mode_; }
  bool exact() const { return alpha_.is_exact(); }

  /// alpha k^2 - alpha (k-k1)^2 - sigma |k1|
  double schro_denominator(std::int64_t k, std::int64_t k1, Branch b = Branch::Plus) const;
  /// |j| - alpha j1^2 + alpha (j-j1)^2
  double wave_denominator(std::int64_t j, std::int64_t j1) const;

  /// Exact rational values; require an exact alpha.
  Rational schro_denominator_exact(std::int64_t k, std::int64_t k1, Branch b = Branch::Plus) const;
  Rational wave_denominator_exact(std::int64_t j, std::int64_t j1) const;

  bool schro_resonant(std::int64_t k, std::int64_t k1, Branch b = Branch::Plus) const;
  bool wave_resonant(std::int64_t j, std::int64_t j1) const;

 private:
  Alpha alpha_;
  ResonanceMode mode_;
  std::int64_t p_ = 0;
  std::int64_t q_ = 1;
};

struct IndexPair {
  int first;
  int second;
  bool operator==(const IndexPair&) const = default;
};

/// All (k, k1) with |k|, |k1| <= K, k1 != 0 and a zero Schroedinger phase.
std::vector<IndexPair> scan_schro_resonances(const ResonanceClassifier& c, int K,
                                             Branch b = Branch::Plus);
/// All (j, j1) with j != 0, |j|, |j1|, |j - j1| <= K and a zero wave phase.
std::vector<IndexPair> scan_wave_resonances(const ResonanceClassifier& c, int K);

struct ComparabilityReport {
  double min_ratio = 0.0;  // |Omega| / (<k1> <2k-k1>)
  double max_ratio = 0.0;
  double max_identity_error = 0.0;  // relative, floating mode
  bool identity_exact = false;      // exact mode: every checked tuple agreed
  std::int64_t pairs = 0;
  std::int64_t resonant_pairs = 0;
};

/// Scans |k|, |k1| <= K, k1 != 0 on the + branch and checks
/// |alpha k^2 - alpha (k-k1)^2 - |k1|| = alpha |k1| |2k - k1 - sgn(k1)/alpha|.
ComparabilityReport denominator_comparability_check(const ResonanceClassifier& c, int K);

/// Restricted sum B1^sigma(a, u)_k = sum* a_{k1} u_{k-k1} / Omega_sigma(k, k1).
FourierField B1_branch(const FourierField& a, const FourierField& u, const ResonanceClassifier& c,
                       Branch b);
/// B1(n, u) = B1^+(n_+/2, u) + B1^-(n_-/2, u).
FourierField B1(const ZakharovState& s, const ResonanceClassifier& c);

/// B2(a, b)_j = |j| sum* a_{j1} conj(b_{j1-j}) / Omega_w(j, j1); B2(u) = B2(u, u).
FourierField B2(const FourierField& a, const FourierField& b, const ResonanceClassifier& c);
FourierField B2(const FourierField& u, const ResonanceClassifier& c);

/// Resonant part sum_{Omega_sigma = 0} a_{k1} u_{k-k1}.
FourierField rho1_branch(const FourierField& a, const FourierField& u, const ResonanceClassifier& c,
                         Branch b);
/// rho1 = resonant parts of (n u) on both branches. Throws std::logic_error
/// unless 1/alpha is a positive integer.
FourierField rho1(const ZakharovState& s, const ResonanceClassifier& c);

enum class Rho2Variant {
  Substitution,  // |j| u_{(j+sgn j)/2} conj(u_{-(j-sgn j)/2})
  AsPrinted,     // |j| u_{(j+sgn j)/2} conj(u_{(j-sgn j)/2})
};

/// Closed forms valid for alpha = 1 only; throws std::logic_error otherwise.
FourierField rho2(const FourierField& u, const ResonanceClassifier& c,
                  Rho2Variant variant = Rho2Variant::Substitution);
/// Resonant part of the wave sum for any resonant alpha, by direct scan.
FourierField rho2_scan(const FourierField& u, const ResonanceClassifier& c);

/// Cubic corrections. Intermediate products are truncated to |.| <= N as in
/// the Galerkin system: P = T_N|u|^2, nu = T_N(n u).
///   R1 = (R1^+ - R1^-)/2,  R1^sigma_k = sum*_{m != 0} |m| P_m u_{k-m} / Omega_sigma(k, m)
///   R2 = sum_sigma sum* (n_sigma/2)_{k1} (nu)_{k-k1} / Omega_sigma(k, k1)
///   R3 = B2(nu, u),  R4 = -B2(u, nu)
FourierField R1(const FourierField& u, const ResonanceClassifier& c);
FourierField R2(const ZakharovState& s, const ResonanceClassifier& c);
FourierField R3(const ZakharovState& s, const ResonanceClassifier& c);
FourierField R4(const ZakharovState& s, const ResonanceClassifier& c);

struct IdentityOptions {
  bool include_rho = true;
  Rho2Variant rho2_variant = Rho2Variant::Substitution;
  /// Only |k| <= interior_fraction * N enters the maximum.
  double interior_fraction = 0.5;
};

struct IdentityResidual {
  double residual_u = 0.0;  // max |LHS - RHS| / scale_u on interior modes
  double residual_n = 0.0;
  double absolute_u = 0.0;
  double absolute_n = 0.0;
  double scale_u = 0.0;  // largest individual term on interior modes
  double scale_n = 0.0;
};

/// Evaluates both normal-form equations at one instant, in the original
/// (u, n_+) variables with the common phase removed:
///   i(u' + B1') - alpha k^2 (u + B1)   = rho1 + R1 + R2
///   i(n+' + B2') - |j| (n_+ + B2)      = rho2 + R3 + R4
/// Time derivatives come from rhs() through the chain rule.
IdentityResidual dbp_identity_residual(const ZakharovState& s, const ResonanceClassifier& c,
                                       const IdentityOptions& options = {});

/// Number of tuples dropped by the restricted sums at radius N: both
/// Schroedinger branches (k1 != 0) plus the wave sum (j != 0).
std::int64_t excluded_tuples_count(const ResonanceClassifier& c, int N);

/// Largest ratio of each a-priori bound over a random ensemble.
struct AprioriConstants {
  double B1 = 0.0;    // |B1|_{H^{1+s0+min(s1,0)}} / (|n_+|_{H^s1} |u|_{H^s0})
  double B2 = 0.0;    // |B2|_{H^{min(2 s0, 1+s0)}} / |u|^2_{H^s0}
  double rho1 = 0.0;  // |rho1|_{H^{s0+s1}} / (|n_+|_{H^s1} |u|_{H^s0}); resonant alpha only
  double rho2 = 0.0;  // |rho2|_{H^{2 s0 - 1}} / |u|^2_{H^s0}; resonant alpha only
};

AprioriConstants apriori_scan(const ResonanceClassifier& c, int N, double s0, double s1,
                              int samples, std::uint64_t seed);

}  // namespace zakharov
