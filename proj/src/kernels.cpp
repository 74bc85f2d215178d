#include "fcb/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>

#include "fcb/errors.hpp"
#include "fcb/special_fn.hpp"
#include "power_tail.hpp"

namespace fcb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr long kDirectTerms = 4096;
constexpr long kDirectTermsFallback = 200000;
constexpr int kBandwidthCap = 1 << 15;

using special::detail::sin_pi;

// e^{-iβπ/2} with exact values at integer β.
std::complex<double> phase_factor(double beta) {
  return {sin_pi(0.5 * beta + 0.5), -sin_pi(0.5 * beta)};
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

// --- SmoothnessSeq ---------------------------------------------------------

SmoothnessSeq SmoothnessSeq::power_law(double r) {
  if (!(r > 0.5) || !std::isfinite(r)) {
    throw DomainError("power-law smoothness needs r > 1/2 (square-summable kernel)");
  }
  return SmoothnessSeq(PowerLaw{r});
}

SmoothnessSeq SmoothnessSeq::explicit_values(std::vector<double> values, TailRule tail) {
  if (values.empty()) throw DomainError("explicit smoothness needs at least one value");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("smoothness values must be positive");
  }
  std::visit(Overloaded{[](const GeometricTail& g) {
                          if (!(g.ratio > 0.0) || !(g.ratio < 1.0)) {
                            throw DomainError("geometric tail ratio must lie in (0, 1)");
                          }
                        },
                        [](const PowerTail& p) {
                          if (!(p.r > 1.0) || !std::isfinite(p.r)) {
                            throw DomainError("power tail exponent must exceed 1");
                          }
                        }},
             tail);
  return SmoothnessSeq(Explicit{std::move(values), tail});
}

double SmoothnessSeq::log_value(long k) const {
  if (k < 1) throw DomainError("smoothness index must be >= 1");
  return std::visit(
      Overloaded{[k](const PowerLaw& p) { return -p.r * std::log(static_cast<double>(k)); },
                 [k](const Explicit& e) {
                   const long last = static_cast<long>(e.values.size());
                   if (k <= last) return std::log(e.values[static_cast<std::size_t>(k - 1)]);
                   const double base = std::log(e.values.back());
                   if (const auto* g = std::get_if<GeometricTail>(&e.tail)) {
                     return base + static_cast<double>(k - last) * std::log(g->ratio);
                   }
                   const double r = std::get<PowerTail>(e.tail).r;
                   return base - r * std::log(static_cast<double>(k) / static_cast<double>(last));
                 }},
      kind_);
}

double SmoothnessSeq::operator()(long k) const { return std::exp(log_value(k)); }

bool SmoothnessSeq::summable() const noexcept {
  if (const auto* p = std::get_if<PowerLaw>(&kind_)) return p->r > 1.0;
  return true;
}

bool SmoothnessSeq::square_summable() const noexcept { return true; }

std::optional<double> SmoothnessSeq::power_exponent() const noexcept {
  if (const auto* p = std::get_if<PowerLaw>(&kind_)) return p->r;
  return std::nullopt;
}

double SmoothnessSeq::tail_sum_bound(long m) const {
  if (!summable()) return std::numeric_limits<double>::infinity();
  if (const auto* p = std::get_if<PowerLaw>(&kind_)) {
    const double j = static_cast<double>(m + 1);
    return std::pow(j, -p->r) + std::pow(j, 1.0 - p->r) / (p->r - 1.0);
  }
  const auto& e = std::get<Explicit>(kind_);
  const long last = static_cast<long>(e.values.size());
  double sum = 0.0;
  for (long k = m + 1; k <= last; ++k) sum += e.values[static_cast<std::size_t>(k - 1)];
  const long from = std::max(m, last) + 1;
  if (const auto* g = std::get_if<GeometricTail>(&e.tail)) {
    return sum + std::exp(log_value(from)) / (1.0 - g->ratio);
  }
  const double r = std::get<PowerTail>(e.tail).r;
  const double j = static_cast<double>(from);
  const double c = e.values.back() * std::pow(static_cast<double>(last), r);
  return sum + c * (std::pow(j, -r) + std::pow(j, 1.0 - r) / (r - 1.0));
}

// --- PhaseSeq / Metric / ClassSpec -------------------------------------------

PhaseSeq PhaseSeq::stationary(double beta) {
  if (!std::isfinite(beta)) throw DomainError("phase must be finite");
  return PhaseSeq({}, beta);
}

PhaseSeq PhaseSeq::explicit_values(std::vector<double> values, double default_beta) {
  if (!std::isfinite(default_beta)) throw DomainError("phase must be finite");
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("phase must be finite");
  }
  return PhaseSeq(std::move(values), default_beta);
}

double PhaseSeq::operator()(long k) const {
  if (k < 1) throw DomainError("phase index must be >= 1");
  if (k <= static_cast<long>(values_.size())) return values_[static_cast<std::size_t>(k - 1)];
  return default_;
}

Exponent Metric::target() const {
  if (!target_) throw DomainError("uniform metric has no L_p exponent");
  return *target_;
}

void ClassSpec::validate() const {
  if (!metric.is_uniform() && !(p == Exponent(1.0))) {
    throw DomainError("L_p metric is only supported for the class exponent p = 1");
  }
}

// --- TailKernel ----------------------------------------------------------------

struct TailKernel::Impl {
  SmoothnessSeq psi;
  PhaseSeq phases;
  int n;
  double log_scale;

  long head_start;
  std::vector<std::complex<double>> head;  // scaled weights for k = head_start + i
  double head_abs_sum = 0.0;
  double truncation = 0.0;  // scaled

  enum class Tail { None, Power, Geometric } tail = Tail::None;
  long tail_start = 0;
  std::complex<double> tail_weight;  // scaled coefficient times phase
  std::unique_ptr<detail::UnitCirclePolylog> polylog;
  double ratio = 0.0;

  int bandwidth = 1;
  double sup_bound = 0.0;
  double representative_error = 0.0;

  Impl(SmoothnessSeq p, PhaseSeq b, int n_)
      : psi(std::move(p)), phases(std::move(b)), n(n_), log_scale(psi.log_value(n_)),
        head_start(n_) {}

  // Appends the next head term; callers go through k = head_start, head_start + 1, ...
  void push_head(double log_coeff, double beta) {
    const double w = std::exp(log_coeff - log_scale);
    head.push_back(w * phase_factor(beta));
    head_abs_sum += w;
  }

  // Terms c k^{-s} e^{i(kt - β π/2)} for k >= m; log_c = log c.
  void attach_power_tail(long m, double log_c, double s, double beta) {
    const double first = std::exp(log_c - s * std::log(static_cast<double>(m)) - log_scale);
    long M = -1;
    if (s > 1.0) {
      const double target = first > 0.0 ? 2e-16 / first : std::numeric_limits<double>::infinity();
      M = detail::power_truncation_index(s, m, target, 1L << 40);
    }
    auto go_direct = [&](long last) {
      for (long k = m; k <= last; ++k) {
        push_head(log_c - s * std::log(static_cast<double>(k)), beta);
      }
      truncation = first * detail::relative_power_tail_bound(s, m, last + 1);
    };
    if (M >= 0 && M - m <= kDirectTerms) {
      go_direct(M);
      return;
    }
    const double zeta_mag = s > 1.0 ? special::detail::zeta_real(s) : 1e2;
    const double polylog_rel_error = 8.0 * kEps * zeta_mag * std::exp(log_c - log_scale);
    if (M >= 0 && M - m <= kDirectTermsFallback && polylog_rel_error > 1e-13) {
      go_direct(M);
      return;
    }
    tail = Tail::Power;
    tail_start = m;
    tail_weight = std::exp(log_c - log_scale) * phase_factor(beta);
    polylog = std::make_unique<detail::UnitCirclePolylog>(s);
  }

  KernelValue eval_scaled(double t) const {
    const double tw = wrap_to_period(t);
    std::complex<double> sum(0.0, 0.0);
    const std::complex<double> step = std::polar(1.0, tw);
    std::complex<double> z;
    for (std::size_t i = 0; i < head.size(); ++i) {
      if (i % 32 == 0) {
        z = std::polar(1.0, static_cast<double>(head_start + static_cast<long>(i)) * tw);
      } else {
        z *= step;
      }
      sum += head[i] * z;
    }
    double value = sum.real();
    double error = truncation + 4.0 * kEps * head_abs_sum * (1.0 + 0.01 * static_cast<double>(head.size()));

    if (tail == Tail::Power) {
      const auto part = detail::power_tail_via_polylog(*polylog, static_cast<int>(tail_start), tw);
      value += (tail_weight * part.value).real();
      error += std::abs(tail_weight) * part.error;
    } else if (tail == Tail::Geometric) {
      const std::complex<double> q = std::polar(ratio, tw);
      const std::complex<double> g =
          tail_weight * std::polar(1.0, static_cast<double>(tail_start) * tw) / (1.0 - q);
      value += g.real();
      error += 8.0 * kEps * std::abs(g);
    }
    return {value, error};
  }
};

TailKernel::TailKernel(SmoothnessSeq psi, PhaseSeq phases, int n) {
  if (n < 1) throw DomainError("tail kernel index n must be >= 1");
  auto impl = std::make_shared<Impl>(std::move(psi), std::move(phases), n);
  const long explicit_phases = static_cast<long>(impl->phases.values().size());
  const double default_beta = impl->phases.default_beta();

  std::visit(
      Overloaded{
          [&](const SmoothnessSeq::PowerLaw& p) {
            const long m = std::max<long>(n, explicit_phases + 1);
            for (long k = n; k < m; ++k) {
              impl->push_head(-p.r * std::log(static_cast<double>(k)), impl->phases(k));
            }
            impl->attach_power_tail(m, 0.0, p.r, default_beta);
          },
          [&](const SmoothnessSeq::Explicit& e) {
            const long last = static_cast<long>(e.values.size());
            const long m = std::max<long>({n, last + 1, explicit_phases + 1});
            for (long k = n; k < m; ++k) impl->push_head(impl->psi.log_value(k), impl->phases(k));
            if (const auto* g = std::get_if<SmoothnessSeq::GeometricTail>(&e.tail)) {
              impl->tail = Impl::Tail::Geometric;
              impl->tail_start = m;
              impl->ratio = g->ratio;
              impl->tail_weight =
                  std::exp(impl->psi.log_value(m) - impl->log_scale) * phase_factor(default_beta);
            } else {
              const double r = std::get<SmoothnessSeq::PowerTail>(e.tail).r;
              const double log_c = std::log(e.values.back()) + r * std::log(static_cast<double>(last));
              impl->attach_power_tail(m, log_c, r, default_beta);
            }
          }},
      impl->psi.kind());

  // Bandwidth: last index with ψ(k) > 1e-3 ψ(n).
  const double cutoff = impl->log_scale + std::log(1e-3);
  if (auto r = impl->psi.power_exponent()) {
    const double k = n * std::exp(std::log(1e3) / *r);
    impl->bandwidth = static_cast<int>(std::min<double>(std::ceil(k), kBandwidthCap));
  } else {
    long k = n;
    while (k < kBandwidthCap && impl->psi.log_value(k + 1) > cutoff) ++k;
    impl->bandwidth = static_cast<int>(k);
  }
  impl->bandwidth = std::max(impl->bandwidth, n);

  impl->sup_bound = impl->psi.summable()
                        ? 1.0 + impl->psi.tail_sum_bound(n) / std::exp(impl->log_scale)
                        : std::numeric_limits<double>::infinity();
  if (!std::isfinite(impl->sup_bound) && impl->psi.summable()) {
    // ψ(n) underflowed; fall back on the relative bound.
    impl->sup_bound = 1.0 + std::exp(std::log(impl->psi.tail_sum_bound(n)) - impl->log_scale);
  }

  double worst = 0.0;
  for (int i = 1; i <= 16; ++i) {
    worst = std::max(worst, impl->eval_scaled(kPi * i / 16.0).error);
    worst = std::max(worst, impl->eval_scaled(-kPi * i / 16.0 + 1e-3).error);
  }
  impl->representative_error = 2.0 * worst;
  impl_ = std::move(impl);
}

KernelValue TailKernel::evaluate_scaled(double t) const { return impl_->eval_scaled(t); }

KernelValue TailKernel::evaluate(double t) const {
  const KernelValue v = impl_->eval_scaled(t);
  const double s = scale();
  return {v.value * s, v.error * s};
}

int TailKernel::n() const noexcept { return impl_->n; }
double TailKernel::scale() const noexcept { return std::exp(impl_->log_scale); }
double TailKernel::log_scale() const noexcept { return impl_->log_scale; }
int TailKernel::bandwidth() const noexcept { return impl_->bandwidth; }
double TailKernel::scaled_sup_bound() const noexcept { return impl_->sup_bound; }
bool TailKernel::uses_polylog() const noexcept { return impl_->tail == Impl::Tail::Power; }
const SmoothnessSeq& TailKernel::psi() const noexcept { return impl_->psi; }
const PhaseSeq& TailKernel::phases() const noexcept { return impl_->phases; }

PeriodicFunction TailKernel::scaled_function() const {
  auto impl = impl_;
  PeriodicFunction f;
  f.eval = [impl](double t) { return impl->eval_scaled(t).value; };
  f.breakpoints = {0.0};
  f.frequency_hint = impl->bandwidth;
  f.pointwise_error = impl->representative_error;
  return f;
}

double eval_tail_kernel(const TailKernel& kernel, double t, double tol) {
  if (!(tol > 0.0)) throw DomainError("eval_tail_kernel: tol must be positive");
  if (!kernel.psi().summable()) {
    throw DomainError("eval_tail_kernel: pointwise evaluation needs a summable sequence");
  }
  const KernelValue v = kernel.evaluate(t);
  if (v.error > tol) throw ToleranceError("eval_tail_kernel: tolerance not met", v.value, v.error);
  return v.value;
}

// --- Spectra and convolution ---------------------------------------------------

double fourier_partial_sum(const Spectrum& f, int n, double t) {
  if (n < 1) throw DomainError("fourier_partial_sum: n must be >= 1");
  double sum = 0.5 * f.a0;
  const std::size_t top = static_cast<std::size_t>(n - 1);
  for (std::size_t k = 1; k <= top; ++k) {
    const double ak = k <= f.a.size() ? f.a[k - 1] : 0.0;
    const double bk = k <= f.b.size() ? f.b[k - 1] : 0.0;
    if (ak == 0.0 && bk == 0.0) continue;
    const double kt = static_cast<double>(k) * t;
    sum += ak * std::cos(kt) + bk * std::sin(kt);
  }
  return sum;
}

Spectrum kernel_spectrum(const SmoothnessSeq& psi, const PhaseSeq& phases, int max_k) {
  Spectrum s;
  s.a.resize(static_cast<std::size_t>(std::max(max_k, 0)));
  s.b.resize(s.a.size());
  for (int k = 1; k <= max_k; ++k) {
    const double beta = phases(k);
    const double c = psi(k);
    s.a[static_cast<std::size_t>(k - 1)] = c * sin_pi(0.5 * beta + 0.5);
    s.b[static_cast<std::size_t>(k - 1)] = c * sin_pi(0.5 * beta);
  }
  return s;
}

Spectrum convolve_spectra(const Spectrum& kernel, const Spectrum& phi) {
  Spectrum out;
  out.a0 = kernel.a0 * phi.a0;
  const std::size_t n = std::min(std::max(kernel.a.size(), kernel.b.size()),
                                 std::max(phi.a.size(), phi.b.size()));
  out.a.resize(n);
  out.b.resize(n);
  auto at = [](const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
  for (std::size_t i = 0; i < n; ++i) {
    const double a = at(kernel.a, i), b = at(kernel.b, i);
    const double c = at(phi.a, i), d = at(phi.b, i);
    out.a[i] = c * a - d * b;
    out.b[i] = c * b + d * a;
  }
  return out;
}

NormResult convolve_with_phi(const TailKernel& kernel, const Density& phi, double x, double tol,
                             QuadratureConfig cfg) {
  if (!(tol > 0.0)) throw DomainError("convolve_with_phi: tol must be positive");
  const PeriodicFunction g = kernel.scaled_function();
  const double scale = kernel.scale();

  PeriodicFunction integrand;
  integrand.eval = [&](double t) { return phi.f.eval(wrap_to_period(x - t)) * g.eval(t); };
  integrand.breakpoints = g.breakpoints;
  for (double b : phi.f.breakpoints) integrand.breakpoints.push_back(x - b);
  integrand.frequency_hint = std::max(g.frequency_hint, phi.f.frequency_hint);

  // Work relative to ψ(n): the scaled integral needs absolute accuracy π tol / (2 ψ(n)).
  const double scaled_tol = 0.5 * kPi * tol / scale;
  if (std::isfinite(scaled_tol)) cfg.abs_tol = std::min(cfg.abs_tol, scaled_tol);
  // Refining below the kernel's evaluation noise cannot converge; that noise is
  // charged to the error separately.
  cfg.abs_tol = std::max(cfg.abs_tol, 4.0 * phi.l1_bound * g.pointwise_error);

  const NormResult I = integrate(integrand, cfg);
  const double value = scale * I.value / kPi;
  double err = scale * I.error_estimate / kPi;
  err += phi.l1_bound * g.pointwise_error * scale / kPi;
  if (phi.f.pointwise_error > 0.0) {
    // (1/π)∫|δφ||Ψ_n| <= δφ ‖Ψ_n‖_1 / π, with ‖Ψ_n‖_1 <= 2π sup|Ψ_n| when that is finite.
    double l1 = 2.0 * kPi * kernel.scaled_sup_bound();
    if (!std::isfinite(l1)) {
      const NormResult n1 = lq_norm(g, Exponent(1.0), cfg);
      l1 = n1.value + n1.error_estimate;
    }
    err += phi.f.pointwise_error * l1 * scale / kPi;
  }
  if (!(err <= tol)) {
    throw ToleranceError("convolve_with_phi: tolerance not met", value, err);
  }
  return {value, err, I.evaluations};
}

}  // namespace fcb
