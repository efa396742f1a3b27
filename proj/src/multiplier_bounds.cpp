#include "zakharov/multiplier_bounds.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zakharov/parallel.hpp"
#include "zakharov/spectral.hpp"

namespace zakharov {

namespace {

using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::gauss_kronrod;

double br(double x) { return 1.0 + std::abs(x); }

// Sum over n > cutoff of a smooth decreasing f, by Euler-Maclaurin:
//   sum_{n > C} f(n) = int_C^inf f - f(C)/2 - f'(C)/12 + O(f'''(C)).
template <class F, class DF>
double em_tail(F f, DF df, double cutoff, double& integral) {
  exp_sinh<double> integrator;
  integral = integrator.integrate(f, cutoff, std::numeric_limits<double>::infinity());
  return integral - f(cutoff) / 2.0 - df(cutoff) / 12.0;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(br(x[i])));
    ly.push_back(std::log(y[i]));
  }
  return least_squares_slope(lx, ly);
}

}  // namespace

LemmaValue lemma_sum_a(double beta, double gamma, std::int64_t k1, std::int64_t k2,
                       std::int64_t cutoff) {
  if (!(beta >= gamma && gamma >= 0.0 && beta + gamma > 1.0)) {
    throw std::invalid_argument("lemma_sum_a: requires beta >= gamma >= 0 and beta + gamma > 1");
  }
  const std::int64_t m = std::max(std::abs(k1), std::abs(k2));
  if (cutoff <= 0) cutoff = 64 * (1 + std::abs(k1) + std::abs(k2)) + 1024;
  if (cutoff <= m) throw std::invalid_argument("lemma_sum_a: cutoff must exceed |k1|, |k2|");

  LemmaValue r;
  // smallest terms first
  for (std::int64_t a = cutoff; a >= 0; --a) {
    for (int side = 0; side < (a == 0 ? 1 : 2); ++side) {
      const std::int64_t n = side == 0 ? a : -a;
      r.truncated += std::pow(br(static_cast<double>(n - k1)), -beta) *
                     std::pow(br(static_cast<double>(n - k2)), -gamma);
    }
  }
  const double c = static_cast<double>(cutoff);
  for (const int side : {1, -1}) {
    const double a1 = side * static_cast<double>(k1);
    const double a2 = side * static_cast<double>(k2);
    auto f = [=](double x) { return std::pow(1.0 + x - a1, -beta) * std::pow(1.0 + x - a2, -gamma); };
    auto df = [=](double x) { return -f(x) * (beta / (1.0 + x - a1) + gamma / (1.0 + x - a2)); };
    double integral = 0.0;
    r.tail += em_tail(f, df, c, integral);
    r.tail_bound += integral;
  }
  r.value = r.truncated + r.tail;
  const auto d = std::abs(k1 - k2);
  r.bound = std::pow(br(static_cast<double>(d)), -gamma) * phi_beta(beta, 1 + d);
  r.ratio = r.value / r.bound;
  return r;
}

LemmaValue lemma_sum_c(double beta, double c1, double c2, std::int64_t cutoff) {
  if (!(beta > 0.5)) throw std::invalid_argument("lemma_sum_c: requires beta > 1/2");
  // beyond every real root of n^2 + c1 n + c2
  const double reach = std::abs(c1) + std::sqrt(std::abs(c2));
  if (cutoff <= 0) cutoff = static_cast<std::int64_t>(2.0 * reach) + 1024;
  if (static_cast<double>(cutoff) <= reach) throw std::invalid_argument("lemma_sum_c: cutoff too small");

  LemmaValue r;
  for (std::int64_t a = cutoff; a >= 0; --a) {
    for (int side = 0; side < (a == 0 ? 1 : 2); ++side) {
      const std::int64_t n = side == 0 ? a : -a;
      const double x = static_cast<double>(n);
      r.truncated += std::pow(br(x * x + c1 * x + c2), -beta);
    }
  }
  const double c = static_cast<double>(cutoff);
  for (const int side : {1, -1}) {
    const double b1 = side * c1;
    auto g = [=](double x) { return x * x + b1 * x + c2; };
    auto f = [=](double x) { return std::pow(1.0 + g(x), -beta); };
    auto df = [=](double x) { return -beta * std::pow(1.0 + g(x), -beta - 1.0) * (2.0 * x + b1); };
    double integral = 0.0;
    r.tail += em_tail(f, df, c, integral);
    r.tail_bound += integral;
  }
  r.value = r.truncated + r.tail;
  return r;
}

LemmaValue lemma_int_b(double beta, double rho1, double rho2, double delta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("lemma_int_b: requires beta in (0, 1]");
  // shift tau -> tau - rho2 and reflect so that the second kink sits at -d <= 0
  const double d = std::abs(rho1 - rho2);
  auto g = [=](double t) { return std::pow(br(t + d), -beta) / br(t); };

  const double reach = 1e6 * br(d);
  std::vector<double> cuts{-reach, -d, 0.0, reach};
  // geometric refinement away from each kink
  for (double h = 1.0; h < reach; h *= 2.0) {
    cuts.push_back(h);
    cuts.push_back(-d - h);
    if (h < d / 2) {
      cuts.push_back(-h);
      cuts.push_back(-d + h);
    }
  }
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [&](double x) { return x < -reach || x > reach; }),
             cuts.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  LemmaValue r;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    r.truncated += gauss_kronrod<double, 31>::integrate(g, cuts[i], cuts[i + 1], 10, 1e-13);
  }
  exp_sinh<double> integrator;
  const double inf = std::numeric_limits<double>::infinity();
  r.tail = integrator.integrate(g, reach, inf) +
           integrator.integrate([&](double t) { return g(-t); }, reach, inf);
  // for |tau| >= reach >= 2d, <tau + d> >= |tau|/2
  r.tail_bound = 2.0 * std::pow(2.0, beta) * std::pow(reach, -beta) / beta;
  r.value = r.truncated + r.tail;
  r.bound = std::pow(br(d), -beta + delta);
  r.ratio = r.value / r.bound;
  return r;
}

LemmaSweep sweep_lemma_a(double beta, double gamma, int max_log2) {
  LemmaSweep s;
  for (int i = 0; i <= max_log2; ++i) {
    const std::int64_t d = std::int64_t{1} << i;
    const LemmaValue v = lemma_sum_a(beta, gamma, 0, d);
    s.abscissa.push_back(static_cast<double>(d));
    s.ratio.push_back(v.ratio);
    s.sup = std::max(s.sup, v.ratio);
  }
  s.slope = loglog_slope(s.abscissa, s.ratio);
  return s;
}

LemmaSweep sweep_lemma_b(double beta, int max_log2, double delta) {
  LemmaSweep s;
  for (int i = 0; i <= max_log2; ++i) {
    const double d = std::ldexp(1.0, i);
    const LemmaValue v = lemma_int_b(beta, d, 0.0, delta);
    s.abscissa.push_back(d);
    s.ratio.push_back(v.ratio);
    s.sup = std::max(s.sup, v.ratio);
  }
  s.slope = loglog_slope(s.abscissa, s.ratio);
  return s;
}

LemmaSweep sweep_lemma_c(double beta, int max_log10) {
  std::vector<double> grid{0.0};
  for (int i = 0; i <= max_log10; ++i) grid.push_back(std::pow(10.0, i));
  LemmaSweep s;
  std::vector<double> lx, ly;
  for (std::size_t level = 0; level < grid.size(); ++level) {
    double sup = 0.0;
    for (std::size_t i = 0; i <= level; ++i) {
      for (std::size_t j = 0; j <= level; ++j) {
        if (std::max(i, j) != level) continue;
        for (const int si : {1, -1}) {
          for (const int sj : {1, -1}) {
            if ((i == 0 && si < 0) || (j == 0 && sj < 0)) continue;
            sup = std::max(sup, lemma_sum_c(beta, si * grid[i], sj * grid[j]).value);
          }
        }
      }
    }
    s.abscissa.push_back(grid[level]);
    s.ratio.push_back(sup);
    s.sup = std::max(s.sup, sup);
    if (level >= 1) {
      lx.push_back(std::log(br(grid[level])));
      ly.push_back(std::log(sup));
    }
  }
  s.slope = least_squares_slope(lx, ly);
  return s;
}

namespace {

// t[i] = <i>^{-a} for 0 <= i < size
std::vector<double> power_table(double a, std::int64_t size) {
  std::vector<double> t(static_cast<std::size_t>(size));
  for (std::int64_t i = 0; i < size; ++i) t[static_cast<std::size_t>(i)] = std::pow(br(static_cast<double>(i)), -a);
  return t;
}

inline std::size_t ai(std::int64_t x) { return static_cast<std::size_t>(x < 0 ? -x : x); }

}  // namespace

double supsum_inner(SupSumKind kind, const SupSumParams& p, std::int64_t k, std::int64_t L) {
  const double e = 2.0 - 2.0 * p.b - p.delta;
  const std::int64_t span = 4 * (L + std::abs(k)) + 4;
  const auto sq = power_table(2.0, span);
  double total = 0.0;
  switch (kind) {
    case SupSumKind::R1: {
      const auto t0 = power_table(2.0 * p.s0, span);
      for (std::int64_t k1 = -L; k1 <= L; ++k1) {
        const double a1 = t0[ai(k1)];
        const double km = static_cast<double>(k - k1);
        double row = 0.0;
        for (std::int64_t k2 = -L; k2 <= L; ++k2) {
          const std::int64_t m = k1 + k2;
          if (m == 0) continue;
          const double phase = br(static_cast<double>(m) * km);
          row += t0[ai(k2)] * t0[ai(k - m)] * sq[ai(2 * k - m)] * std::pow(phase, -e);
        }
        total += a1 * row;
      }
      break;
    }
    case SupSumKind::R2: {
      const auto t1 = power_table(2.0 + 2.0 * p.s1, span);
      const auto t1b = power_table(2.0 * p.s1, span);
      const auto t0 = power_table(2.0 * p.s0, span);
      const double ak2 = p.alpha * static_cast<double>(k) * static_cast<double>(k);
      for (std::int64_t k1 = -L; k1 <= L; ++k1) {
        if (k1 == 0) continue;
        const double omega = p.alpha * static_cast<double>(k1) * static_cast<double>(2 * k - k1) -
                             static_cast<double>(std::abs(k1));
        if (std::abs(omega) < 1e-9) continue;  // restricted sum
        const double a1 = t1[ai(k1)] * sq[ai(2 * k - k1)];
        double row = 0.0;
        for (std::int64_t n = -L; n <= L; ++n) {
          const std::int64_t k2 = n + k - k1;
          if (k2 == 0) continue;
          const double nn = static_cast<double>(n);
          const double phase = br(ak2 - static_cast<double>(std::abs(k1)) -
                                  static_cast<double>(std::abs(k2)) - p.alpha * nn * nn);
          row += t1b[ai(k2)] * t0[ai(n)] * std::pow(phase, -e);
        }
        total += a1 * row;
      }
      break;
    }
    case SupSumKind::R3:
    case SupSumKind::R4: {
      if (k == 0) return 0.0;
      const double sj = (kind == SupSumKind::R3 ? 1.0 : -1.0) * static_cast<double>(std::abs(k));
      const auto t1 = power_table(2.0 * p.s1, span);
      const auto t0 = power_table(2.0 * p.s0, span);
      for (std::int64_t n = -L; n <= L; ++n) {
        const double nn = static_cast<double>(n);
        const double a1 = sq[ai(2 * n - k)] * t0[ai(n)];
        const double base = p.alpha * nn * nn + sj;
        double row = 0.0;
        for (std::int64_t m = -L; m <= L; ++m) {
          const std::int64_t j1 = k - n - m;
          if (j1 == 0) continue;
          const double mm = static_cast<double>(m);
          const double phase = br(base - p.alpha * mm * mm - static_cast<double>(std::abs(j1)));
          row += t1[ai(j1)] * t0[ai(m)] * std::pow(phase, -e);
        }
        total += a1 * row;
      }
      break;
    }
  }
  return total;
}

double admissible_s(SupSumKind kind, double s0, double s1, double b) {
  switch (kind) {
    case SupSumKind::R1:
      return s0 + std::min(1.0, 2.0 * s0);
    case SupSumKind::R2:
      return std::min({s0 + 1.0 + 2.0 * s1, s0 + 1.0, 3.0 + 2.0 * s1 - 2.0 * b, 3.0 + s1 - 2.0 * b});
    case SupSumKind::R3:
    case SupSumKind::R4:
      return s1 + std::min({1.0, 2.0 * s0, 2.0 * s0 - s1});
  }
  return 0.0;
}

bool is_admissible_pair(double s0, double s1, bool resonant) {
  if (resonant) return s1 >= 0.0 && std::max(s1, s1 / 2 + 0.5) <= s0 && s0 <= s1 + 1.0;
  return s1 >= -0.5 && std::max(s1, s1 / 2 + 0.25) <= s0 && s0 <= s1 + 1.0;
}

namespace {

bool b_in_range(SupSumKind kind, double s0, double s1, double b) {
  if (kind == SupSumKind::R1 || kind == SupSumKind::R2) return b > 0.5 && b < std::min(0.75, (s0 + 1) / 2);
  return b > 0.5 && b < 0.75 + std::min(0.0, (s0 + s1) / 2);
}

void finish(SupSumResult& r, SupSumKind kind, const SupSumParams& p, double s) {
  r.sum.clear();
  r.sup = r.k0_value;
  for (std::size_t i = 0; i < r.k.size(); ++i) {
    r.sum.push_back(std::pow(br(r.k[i]), 2.0 * s) * r.inner[i]);
    r.sup = std::max(r.sup, r.sum.back());
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < r.k.size(); ++i) {
    if (16 * r.k[i] < p.K) continue;
    lx.push_back(std::log(br(r.k[i])));
    ly.push_back(std::log(r.sum[i]));
  }
  r.slope = lx.size() >= 2 ? least_squares_slope(lx, ly) : 0.0;
  const double inv = 1.0 / p.alpha;
  const bool resonant = std::abs(inv - std::round(inv)) < 1e-12;
  r.admissible = s <= admissible_s(kind, p.s0, p.s1, p.b) + 1e-12 && b_in_range(kind, p.s0, p.s1, p.b) &&
                 is_admissible_pair(p.s0, p.s1, resonant);
}

}  // namespace

SupSumResult supsum(SupSumKind kind, const SupSumParams& p) {
  if (p.K < 1) throw std::invalid_argument("supsum: K must be >= 1");
  SupSumResult r;
  r.inner_cutoff = p.inner_factor * p.K;
  for (int k = 1; k <= p.K; k *= 2) r.k.push_back(k);
  // column 0 is k = 0, the others follow r.k
  std::vector<double> columns(r.k.size() + 1);
  parallel_for(columns.size(), [&](std::size_t i) {
    columns[i] = supsum_inner(kind, p, i == 0 ? 0 : r.k[i - 1], r.inner_cutoff);
  });
  r.k0_value = columns[0];
  r.inner.assign(columns.begin() + 1, columns.end());
  finish(r, kind, p, p.s);
  return r;
}

SupSumResult supsum_R1(const SupSumParams& p) { return supsum(SupSumKind::R1, p); }
SupSumResult supsum_R2(const SupSumParams& p) { return supsum(SupSumKind::R2, p); }

SupSumResult supsum_wave(const SupSumParams& p, SupSumKind variant) {
  if (variant != SupSumKind::R3 && variant != SupSumKind::R4) {
    throw std::invalid_argument("supsum_wave: variant must be R3 or R4");
  }
  return supsum(variant, p);
}

SupSumResult rescale_supsum(const SupSumResult& r, SupSumKind kind, const SupSumParams& p, double s) {
  SupSumResult out = r;
  finish(out, kind, p, s);
  return out;
}

}  // namespace zakharov
