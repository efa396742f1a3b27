#include "zakharov/dynamics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>

#include "zakharov/errors.hpp"
#include "zakharov/reduction.hpp"
#include "zakharov/spectral.hpp"

namespace zakharov {

namespace {

constexpr Complex kI{0.0, 1.0};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t idx(int k, int radius) { return static_cast<std::size_t>(k + radius); }

}  // namespace

EvolutionModel EvolutionModel::conservative(const ModelParams& params) {
  EvolutionModel m;
  m.alpha = params.alpha.value();
  m.nonlinearity = params.nonlinearity;
  return m;
}

// u is complex and needs a c2c transform; n = Re(n_+) and |u|^2 are real, so
// half-spectrum transforms suffice for them.
struct CouplingEvaluator::Buffers {
  Complex* u_grid = nullptr;    // M complex
  Complex* work_c = nullptr;    // M complex
  Complex* half = nullptr;      // M/2 + 1 complex
  double* real_grid = nullptr;  // M real
  double* n_grid = nullptr;     // M real
  fftw_plan u_backward = nullptr;
  fftw_plan nu_forward = nullptr;
  fftw_plan n_backward = nullptr;
  fftw_plan power_forward = nullptr;
};

CouplingEvaluator::CouplingEvaluator(int radius)
    : radius_(radius), grid_(smooth_fft_size(3 * radius + 1)), buf_(std::make_unique<Buffers>()) {
  if (radius < 0) throw std::invalid_argument("CouplingEvaluator: negative radius");
  const auto m = static_cast<std::size_t>(grid_);
  auto& b = *buf_;
  b.u_grid = reinterpret_cast<Complex*>(fftw_alloc_complex(m));
  b.work_c = reinterpret_cast<Complex*>(fftw_alloc_complex(m));
  b.half = reinterpret_cast<Complex*>(fftw_alloc_complex(m / 2 + 1));
  b.real_grid = fftw_alloc_real(m);
  b.n_grid = fftw_alloc_real(m);
  auto* ug = reinterpret_cast<fftw_complex*>(b.u_grid);
  auto* wc = reinterpret_cast<fftw_complex*>(b.work_c);
  auto* hf = reinterpret_cast<fftw_complex*>(b.half);
  std::lock_guard lock(planner_mutex());
  b.u_backward = fftw_plan_dft_1d(grid_, wc, ug, FFTW_BACKWARD, FFTW_ESTIMATE);
  b.nu_forward = fftw_plan_dft_1d(grid_, ug, wc, FFTW_FORWARD, FFTW_ESTIMATE);
  b.n_backward = fftw_plan_dft_c2r_1d(grid_, hf, b.n_grid, FFTW_ESTIMATE);
  b.power_forward = fftw_plan_dft_r2c_1d(grid_, b.real_grid, hf, FFTW_ESTIMATE);
}

CouplingEvaluator::~CouplingEvaluator() {
  auto& b = *buf_;
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(b.u_backward);
  fftw_destroy_plan(b.nu_forward);
  fftw_destroy_plan(b.n_backward);
  fftw_destroy_plan(b.power_forward);
  fftw_free(b.u_grid);
  fftw_free(b.work_c);
  fftw_free(b.half);
  fftw_free(b.real_grid);
  fftw_free(b.n_grid);
}

void CouplingEvaluator::evaluate(std::span<const Complex> u, std::span<const Complex> n_plus,
                                 std::span<Complex> n_u, std::span<Complex> power) {
  auto& b = *buf_;
  const int r = radius_;
  const int m = grid_;
  const double scale = 1.0 / m;

  std::fill(b.work_c, b.work_c + m, Complex{});
  for (int k = -r; k <= r; ++k) b.work_c[(k + m) % m] = u[idx(k, r)];
  fftw_execute(b.u_backward);

  // n_k = (n+_k + conj(n+_{-k}))/2, k = 0..N
  std::fill(b.half, b.half + m / 2 + 1, Complex{});
  b.half[0] = n_plus[idx(0, r)].real();
  for (int k = 1; k <= r; ++k) b.half[k] = 0.5 * (n_plus[idx(k, r)] + std::conj(n_plus[idx(-k, r)]));
  fftw_execute(b.n_backward);

  for (int i = 0; i < m; ++i) b.real_grid[i] = std::norm(b.u_grid[i]);
  for (int i = 0; i < m; ++i) b.u_grid[i] *= b.n_grid[i];
  fftw_execute(b.nu_forward);
  for (int k = -r; k <= r; ++k) n_u[idx(k, r)] = b.work_c[(k + m) % m] * scale;

  fftw_execute(b.power_forward);
  for (int k = 0; k <= r; ++k) {
    const Complex c = b.half[k] * scale;
    power[idx(k, r)] = c;
    power[idx(-k, r)] = std::conj(c);
  }
  power[idx(0, r)] = b.half[0].real() * scale;
}

namespace {

CouplingEvaluator& thread_evaluator(int radius) {
  thread_local std::map<int, std::unique_ptr<CouplingEvaluator>> cache;
  auto& slot = cache[radius];
  if (!slot) slot = std::make_unique<CouplingEvaluator>(radius);
  return *slot;
}

// Nonlinear (non-diagonal) part of the vector field, forcing included.
void nonlinear_part(CouplingEvaluator& ev, const EvolutionModel& model,
                    std::span<const Complex> u, std::span<const Complex> np,
                    std::span<Complex> du, std::span<Complex> dnp, std::vector<Complex>& power) {
  const int r = ev.radius();
  const double c = model.nonlinearity;
  if (c != 0.0) {
    ev.evaluate(u, np, du, power);
    for (int k = -r; k <= r; ++k) {
      du[idx(k, r)] *= -kI * c;
      dnp[idx(k, r)] = k == 0 ? Complex{} : -kI * (c * std::abs(k)) * power[idx(k, r)];
    }
  } else {
    std::fill(du.begin(), du.end(), Complex{});
    std::fill(dnp.begin(), dnp.end(), Complex{});
  }
  if (!model.forcing.empty()) {
    for (int k = -r; k <= r; ++k) du[idx(k, r)] -= kI * model.forcing.at(k);
  }
}

void check_model(const ZakharovState& state, const EvolutionModel& model) {
  validate_state(state);
  if (!(model.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (model.gamma < 0.0) throw std::invalid_argument("gamma must be nonnegative");
  if (!model.forcing.empty() && model.forcing.radius() > state.radius()) {
    // modes beyond the truncation are invisible to the Galerkin system
    for (int k = state.radius() + 1; k <= model.forcing.radius(); ++k) {
      if (model.forcing[k] != Complex{} || model.forcing[-k] != Complex{}) {
        throw std::invalid_argument("forcing has modes beyond the truncation radius");
      }
    }
  }
}

}  // namespace

StateDerivative rhs(const ZakharovState& state, const EvolutionModel& model) {
  check_model(state, model);
  const int r = state.radius();
  StateDerivative d{FourierField(r), FourierField(r)};
  std::vector<Complex> power(2 * static_cast<std::size_t>(r) + 1);
  nonlinear_part(thread_evaluator(r), model, state.u.coeffs(), state.n_plus.coeffs(),
                 d.du.coeffs(), d.dn_plus.coeffs(), power);
  for (int k = -r; k <= r; ++k) {
    const double kk = static_cast<double>(k);
    d.du[k] += Complex(-model.gamma, -model.alpha * kk * kk) * state.u[k];
    d.dn_plus[k] += Complex(-model.gamma, -std::abs(kk)) * state.n_plus[k];
  }
  d.dn_plus[0] = 0.0;
  return d;
}

StateDerivative rhs(const ZakharovState& state, const ModelParams& params) {
  return rhs(state, EvolutionModel::conservative(params));
}

FourierField linear_flow_schrodinger(const FourierField& u0, double t, double alpha) {
  FourierField out(u0.radius());
  for (int k = -u0.radius(); k <= u0.radius(); ++k) {
    const double kk = static_cast<double>(k);
    out[k] = std::polar(1.0, -alpha * kk * kk * t) * u0[k];
  }
  return out;
}

FourierField linear_flow_wave_plus(const FourierField& n0, double t) {
  FourierField out(n0.radius());
  for (int k = -n0.radius(); k <= n0.radius(); ++k) {
    out[k] = std::polar(1.0, -std::abs(static_cast<double>(k)) * t) * n0[k];
  }
  return out;
}

double default_time_step(int radius) {
  const double n = std::max(radius, 1);
  return 0.5 / (n * n);
}

namespace {

class LawsonStepper {
 public:
  LawsonStepper(const EvolutionModel& model, int radius, double h)
      : model_(model), radius_(radius), ev_(thread_evaluator(radius)) {
    const std::size_t n = 2 * static_cast<std::size_t>(radius) + 1;
    eu_half_.resize(n);
    eu_full_.resize(n);
    en_half_.resize(n);
    en_full_.resize(n);
    for (int k = -radius; k <= radius; ++k) {
      const double kk = static_cast<double>(k);
      const Complex lu(-model.gamma, -model.alpha * kk * kk);
      const Complex ln(-model.gamma, -std::abs(kk));
      eu_half_[idx(k, radius)] = std::exp(lu * (h / 2));
      eu_full_[idx(k, radius)] = std::exp(lu * h);
      en_half_[idx(k, radius)] = std::exp(ln * (h / 2));
      en_full_[idx(k, radius)] = std::exp(ln * h);
    }
    for (auto* v : {&k1u_, &k1n_, &k2u_, &k2n_, &k3u_, &k3n_, &k4u_, &k4n_, &tu_, &tn_, &power_}) {
      v->resize(n);
    }
    h_ = h;
  }

  void step(std::vector<Complex>& u, std::vector<Complex>& np) {
    const std::size_t n = u.size();
    const double h = h_;
    nonlinear_part(ev_, model_, u, np, k1u_, k1n_, power_);
    for (std::size_t i = 0; i < n; ++i) {
      tu_[i] = eu_half_[i] * (u[i] + (h / 2) * k1u_[i]);
      tn_[i] = en_half_[i] * (np[i] + (h / 2) * k1n_[i]);
    }
    nonlinear_part(ev_, model_, tu_, tn_, k2u_, k2n_, power_);
    for (std::size_t i = 0; i < n; ++i) {
      tu_[i] = eu_half_[i] * u[i] + (h / 2) * k2u_[i];
      tn_[i] = en_half_[i] * np[i] + (h / 2) * k2n_[i];
    }
    nonlinear_part(ev_, model_, tu_, tn_, k3u_, k3n_, power_);
    for (std::size_t i = 0; i < n; ++i) {
      tu_[i] = eu_full_[i] * u[i] + h * eu_half_[i] * k3u_[i];
      tn_[i] = en_full_[i] * np[i] + h * en_half_[i] * k3n_[i];
    }
    nonlinear_part(ev_, model_, tu_, tn_, k4u_, k4n_, power_);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = eu_full_[i] * u[i] +
             (h / 6) * (eu_full_[i] * k1u_[i] + 2.0 * eu_half_[i] * (k2u_[i] + k3u_[i]) + k4u_[i]);
      np[i] = en_full_[i] * np[i] +
              (h / 6) * (en_full_[i] * k1n_[i] + 2.0 * en_half_[i] * (k2n_[i] + k3n_[i]) + k4n_[i]);
    }
    np[idx(0, radius_)] = 0.0;
  }

 private:
  const EvolutionModel& model_;
  int radius_;
  CouplingEvaluator& ev_;
  double h_ = 0.0;
  std::vector<Complex> eu_half_, eu_full_, en_half_, en_full_;
  std::vector<Complex> k1u_, k1n_, k2u_, k2n_, k3u_, k3n_, k4u_, k4n_, tu_, tn_, power_;
};

bool healthy(const std::vector<Complex>& v, double threshold) {
  double sum = 0.0;
  for (const auto& c : v) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    sum += std::norm(c);
  }
  return std::sqrt(sum) <= threshold;
}

}  // namespace

void integrate(const ZakharovState& initial, const EvolutionModel& model,
               const IntegrationOptions& options, const SampleObserver& observer) {
  check_model(initial, model);
  const double t0 = initial.t;
  const double span = options.t_end - t0;
  if (!(span > 0.0)) throw std::invalid_argument("integrate: t_end must exceed the initial time");
  const int r = initial.radius();
  const double dt = options.dt > 0.0 ? options.dt : default_time_step(r);
  const double stride = options.sample_stride > 0.0 ? std::min(options.sample_stride, span) : span;

  std::vector<Complex> u(initial.u.coeffs().begin(), initial.u.coeffs().end());
  std::vector<Complex> np(initial.n_plus.coeffs().begin(), initial.n_plus.coeffs().end());
  ZakharovState snapshot{initial.u, initial.n_plus, t0};
  observer(snapshot);

  auto emit = [&](double t) {
    std::copy(u.begin(), u.end(), snapshot.u.coeffs().begin());
    std::copy(np.begin(), np.end(), snapshot.n_plus.coeffs().begin());
    snapshot.t = t;
    observer(snapshot);
  };

  // Steps are sized so every sample time is hit exactly.
  auto run = [&](double interval, long samples, double t_start, double& t_good) {
    if (samples <= 0) return;
    const long steps = std::max(1L, static_cast<long>(std::ceil(interval / dt - 1e-9)));
    LawsonStepper stepper(model, r, interval / static_cast<double>(steps));
    for (long s = 1; s <= samples; ++s) {
      for (long i = 0; i < steps; ++i) {
        stepper.step(u, np);
        const double t_now = t_start + interval * (static_cast<double>(s - 1) +
                                                    static_cast<double>(i + 1) / steps);
        if (!healthy(u, options.blowup_threshold) || !healthy(np, options.blowup_threshold)) {
          throw BlowUpError("integration blow-up near t = " + std::to_string(t_now), t_good);
        }
        t_good = t_now;
      }
      t_good = t_start + interval * static_cast<double>(s);
      emit(t_good);
    }
  };

  const long full = static_cast<long>(std::floor(span / stride + 1e-9));
  double t_good = t0;
  run(stride, full, t0, t_good);
  const double rest = span - static_cast<double>(full) * stride;
  if (rest > 1e-12 * span) run(rest, 1, t0 + static_cast<double>(full) * stride, t_good);
}

Trajectory integrate(const ZakharovState& initial, const EvolutionModel& model,
                     const IntegrationOptions& options) {
  Trajectory out;
  integrate(initial, model, options, [&](const ZakharovState& s) { out.push_back(s); });
  return out;
}

Trajectory integrate(const ZakharovState& initial, const ModelParams& params,
                     const IntegrationOptions& options) {
  return integrate(initial, EvolutionModel::conservative(params), options);
}

double mass(const ZakharovState& state) {
  double sum = 0.0;
  for (const auto& c : state.u.coeffs()) sum += std::norm(c);
  return sum;
}

EnergyParts energy_parts(const ZakharovState& state, double alpha) {
  EnergyParts e;
  const int r = state.radius();
  for (int k = -r; k <= r; ++k) {
    e.kinetic += alpha * static_cast<double>(k) * static_cast<double>(k) * std::norm(state.u[k]);
  }
  // |n_-| = |n_+| mode by mode, so (|n_+|^2 + |n_-|^2)/4 = |n_+|^2/2
  double wave = 0.0;
  for (const auto& c : state.n_plus.coeffs()) wave += std::norm(c);
  e.wave = 0.5 * wave;
  const FourierField n = density(state.n_plus);
  const FourierField p = modulus_squared(state.u);
  Complex coupling{};
  for (int j = -r; j <= r; ++j) coupling += n[j] * p[-j];
  e.coupling = coupling.real();
  e.imaginary_residue = coupling.imag();
  return e;
}

double energy(const ZakharovState& state, const ModelParams& params) {
  return energy_parts(state, params.alpha.value()).total();
}

double mass_rate(const ZakharovState& state, const StateDerivative& d) {
  double sum = 0.0;
  const int r = state.radius();
  for (int k = -r; k <= r; ++k) sum += 2.0 * (std::conj(state.u[k]) * d.du[k]).real();
  return sum;
}

double energy_rate(const ZakharovState& state, const StateDerivative& d, double alpha) {
  const int r = state.radius();
  double rate = 0.0;
  for (int k = -r; k <= r; ++k) {
    const double kk = static_cast<double>(k);
    rate += 2.0 * alpha * kk * kk * (std::conj(state.u[k]) * d.du[k]).real();
    rate += (std::conj(state.n_plus[k]) * d.dn_plus[k]).real();
  }
  const FourierField n = density(state.n_plus);
  const FourierField dn = density(d.dn_plus);
  const FourierField p = modulus_squared(state.u);
  // d|u|^2 = du conj(u) + u conj(du), which is 2 Re of the first term
  const FourierField dp = (convolve(d.du, state.u.conjugate_reflection()) * 2.0).real_part();
  Complex coupling{};
  for (int j = -r; j <= r; ++j) coupling += dn[j] * p[-j] + n[j] * dp[-j];
  return rate + coupling.real();
}

namespace {

void put(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,k,re_u,im_u,re_np,im_np\n";
  for (const auto& s : trajectory) {
    const int r = s.radius();
    for (int k = -r; k <= r; ++k) {
      put(out, s.t);
      out << ',' << k << ',';
      put(out, s.u[k].real());
      out << ',';
      put(out, s.u[k].imag());
      out << ',';
      put(out, s.n_plus[k].real());
      out << ',';
      put(out, s.n_plus[k].imag());
      out << '\n';
    }
  }
}

void write_diagnostics_csv(std::ostream& out, const Trajectory& trajectory, double alpha,
                           std::span<const double> s_list) {
  out << "t,mass,energy";
  for (const double s : s_list) {
    char buf[40];
    std::snprintf(buf, sizeof buf, ",u_H%g", s);
    out << buf;
  }
  for (const double s : s_list) {
    char buf[40];
    std::snprintf(buf, sizeof buf, ",np_H%g", s);
    out << buf;
  }
  out << '\n';
  for (const auto& st : trajectory) {
    put(out, st.t);
    out << ',';
    put(out, mass(st));
    out << ',';
    put(out, energy_parts(st, alpha).total());
    for (const double s : s_list) {
      out << ',';
      put(out, sobolev_norm(st.u, s));
    }
    for (const double s : s_list) {
      out << ',';
      put(out, sobolev_norm(st.n_plus, s));
    }
    out << '\n';
  }
}

}  // namespace zakharov
