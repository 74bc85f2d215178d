#include "fcb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "fcb/errors.hpp"
#include "fcb/special_fn.hpp"

namespace fcb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_n(int n) {
  if (n < 1) throw DomainError("n must be >= 1");
}

void check_kernel_scope(const ClassSpec& spec, const Exponent& q) {
  spec.validate();
  if (!(q == Exponent(2.0)) && !spec.psi.summable()) {
    throw DomainError("this exponent needs a summable sequence (power law with r > 1)");
  }
}

int scan_points(const TailKernel& kernel) {
  return std::clamp(16 * kernel.bandwidth(), 4096, 1 << 17);
}

// Location of the maximum of sign·g: dense scan, then Brent on the best bracket.
double locate_extremum(const RealFunction& g, int samples, double sign) {
  const double h = kTwoPi / samples;
  double best_t = -kPi;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double t = -kPi + h * i;
    const double v = sign * g(t);
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  }
  auto neg = [&](double t) { return -sign * g(t); };
  const auto [t, v] = boost::math::tools::brent_find_minima(neg, best_t - h, best_t + h, 52);
  return -v > best_v ? t : best_t;
}

// Index past which ψ(k) <= 1e-8 ψ(n); sets the width of the dipole bumps.
long dipole_index(const TailKernel& kernel) {
  const double cutoff = kernel.log_scale() + std::log(1e-8);
  if (auto r = kernel.psi().power_exponent()) {
    return std::min<long>(std::ceil(kernel.n() * std::exp(std::log(1e8) / *r)), 1L << 20);
  }
  long k = kernel.n();
  while (k < (1L << 20) && kernel.psi().log_value(k + 1) > cutoff) ++k;
  return k;
}

// cos²(π u / 2w) / w on |u| < w: unit mass, half-width w.
double bump(double u, double w) {
  if (std::abs(u) >= w) return 0.0;
  const double c = std::cos(kPi * u / (2.0 * w));
  return c * c / w;
}

ErrorReport make_report(const ClassSpec& spec, int n, const Exponent& q, Method method,
                        double scale, double scaled, double scaled_err) {
  return ErrorReport{scale * scaled, method, scale * scaled_err, n, spec, q, scaled, std::nullopt};
}

// Dipole φ = (bump(· + a) - bump(· + b))/2, a and b the maximiser and minimiser
// of Ψ_n. (1/π)∫φ(x - t)Ψ_n(t) dt reduces to integrals over the bump supports.
ErrorReport dipole_oracle(const ClassSpec& spec, int n, const TailKernel& kernel, const Exponent& q,
                          const QuadratureConfig& cfg) {
  const PeriodicFunction g = kernel.scaled_function();
  const int samples = scan_points(kernel);
  const double t_max = locate_extremum(g.eval, samples, 1.0);
  const double t_min = locate_extremum(g.eval, samples, -1.0);
  double w = kPi / (8.0 * static_cast<double>(dipole_index(kernel)));
  w = std::min(w, 0.25 * std::abs(wrap_to_period(t_max - t_min)));

  QuadratureConfig inner = cfg;
  inner.base_panels = 8;
  auto response = [&](double x, double* err) {
    auto integrand = [&](double u) {
      return bump(u, w) * (g.eval(x + t_max + u) - g.eval(x + t_min + u));
    };
    const NormResult I = integrate_interval(integrand, -w, w, inner, {-w, w});
    if (err != nullptr) *err = I.error_estimate / kTwoPi + g.pointwise_error / kPi;
    return I.value / kTwoPi;
  };

  double scaled = 0.0;
  double scaled_err = 0.0;
  if (spec.metric.is_uniform()) {
    scaled = std::abs(response(0.0, &scaled_err));
  } else {
    double worst_inner = 0.0;
    PeriodicFunction f;
    f.eval = [&](double x) {
      double e = 0.0;
      const double v = response(x, &e);
      worst_inner = std::max(worst_inner, e);
      return v;
    };
    f.frequency_hint = kernel.bandwidth();
    QuadratureConfig outer = cfg;
    outer.rel_tol = std::max(cfg.rel_tol, 1e-9);
    const NormResult norm = lq_norm(f, q, outer);
    scaled = norm.value;
    scaled_err = norm.error_estimate + std::pow(kTwoPi, 1.0 / q.value()) * worst_inner;
  }
  return make_report(spec, n, q, Method::ExtremalOracle, kernel.scale(), scaled, scaled_err);
}

// D(λ) = ∫ |g - λ|^{q-1} sgn(g - λ): the derivative of -‖g - λ‖_q^q / q, decreasing in λ.
struct ShiftedPower {
  const PeriodicFunction& g;
  double q;
  int scan;

  std::vector<double> roots(double lambda) const {
    auto shifted = [&](double t) { return g.eval(t) - lambda; };
    return find_sign_changes(shifted, -kPi, kPi, scan);
  }

  double h(double t, double lambda) const {
    const double d = g.eval(t) - lambda;
    if (q == 1.0) return d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    if (q == 2.0) return d;
    return std::copysign(std::pow(std::abs(d), q - 1.0), d);
  }

  double derivative(double lambda, const QuadratureConfig& cfg) const {
    const std::vector<double> zs = roots(lambda);
    if (q == 1.0) {
      // Measure of {g > λ} minus measure of {g < λ}, from the sign pattern between roots.
      std::vector<double> cuts = {-kPi};
      cuts.insert(cuts.end(), zs.begin(), zs.end());
      cuts.push_back(kPi);
      double d = 0.0;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        d += (g.eval(mid) > lambda ? 1.0 : -1.0) * (cuts[i + 1] - cuts[i]);
      }
      return d;
    }
    PeriodicFunction f{[&](double t) { return h(t, lambda); }, zs, g.frequency_hint, 0.0};
    return integrate(f, cfg).value;
  }
};

ErrorReport holder_oracle(const ClassSpec& spec, int n, const TailKernel& kernel, const Exponent& q,
                          const QuadratureConfig& cfg) {
  const PeriodicFunction g = kernel.scaled_function();
  const double qv = q.value();
  const int scan = std::clamp(8 * g.frequency_hint, 1024, 1 << 17);
  const ShiftedPower shifted{g, qv, scan};

  // The optimal constant shift λ*. At q = 2 it is the mean of Ψ_n, which is 0.
  double lambda = 0.0;
  if (qv != 2.0) {
    QuadratureConfig loose = cfg;
    loose.rel_tol = std::max(cfg.rel_tol, 1e-9);
    const double lo = g.eval(locate_extremum(g.eval, scan, -1.0));
    const double hi = g.eval(locate_extremum(g.eval, scan, 1.0));
    auto d = [&](double l) { return shifted.derivative(l, loose); };
    const double da = d(lo);
    const double db = d(hi);
    if (da * db < 0.0) {
      std::uintmax_t iters = 60;
      const auto [l0, l1] = boost::math::tools::toms748_solve(
          d, lo, hi, da, db, boost::math::tools::eps_tolerance<double>(40), iters);
      lambda = 0.5 * (l0 + l1);
    }
  }

  // Noise in h inherited from g: |x|^{q-1} is Lipschitz on the range of g for
  // q >= 2 and (q-1)-Hölder for q < 2. Sign flips at q = 1 only matter within the
  // noise of a root and are ignored.
  const double range = kernel.scaled_sup_bound() + std::abs(lambda);
  double h_noise = 0.0;
  if (qv >= 2.0) {
    h_noise = (qv - 1.0) * std::pow(range, qv - 2.0) * g.pointwise_error;
  } else if (qv > 1.0) {
    h_noise = std::pow(g.pointwise_error, qv - 1.0);
  }
  const std::vector<double> zs = shifted.roots(lambda);
  PeriodicFunction hf{[&](double t) { return shifted.h(t, lambda); }, zs, g.frequency_hint, h_noise};
  hf.breakpoints.push_back(0.0);
  // The mean is near zero, so its accuracy is limited by the noise in h.
  QuadratureConfig mean_cfg = cfg;
  mean_cfg.abs_tol = std::max(cfg.abs_tol, 4.0 * kTwoPi * h_noise);
  const double mean = integrate(hf, mean_cfg).value / kTwoPi;

  // Projection onto zero mean and the unit ball of L_p, p = q'.
  PeriodicFunction projected{[&](double t) { return shifted.h(t, lambda) - mean; }, hf.breakpoints,
                             g.frequency_hint, h_noise};
  const Exponent p = q.conjugate();
  const NormResult norm = lq_norm(projected, p, cfg);
  if (!(norm.value > 0.0)) throw ToleranceError("extremal_oracle: degenerate extremizer", 0.0, 0.0);

  Density phi;
  phi.f.eval = [&](double s) { return (shifted.h(-s, lambda) - mean) / norm.value; };
  for (double z : hf.breakpoints) phi.f.breakpoints.push_back(-z);
  phi.f.frequency_hint = g.frequency_hint;
  phi.f.pointwise_error = h_noise / norm.value;
  // Hölder: ‖φ‖_1 <= (2π)^{1/q} ‖φ‖_p = (2π)^{1/q}.
  phi.l1_bound = std::pow(kTwoPi, 1.0 / qv);

  const double scale = kernel.scale();
  const NormResult value = convolve_with_phi(kernel, phi, 0.0, std::numeric_limits<double>::max(), cfg);
  // The normalisation is only known to its quadrature error.
  const double rel = norm.error_estimate / norm.value;
  const double scaled = std::abs(value.value) / scale;
  const double scaled_err = value.error_estimate / scale + rel * scaled;
  return make_report(spec, n, q, Method::ExtremalOracle, scale, scaled, scaled_err);
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::DualityQuadrature:
      return "DualityQuadrature";
    case Method::ClosedFormL2:
      return "ClosedFormL2";
    case Method::ExtremalOracle:
      return "ExtremalOracle";
  }
  return "?";
}

std::optional<double> ErrorReport::gap() const {
  if (!reference) return std::nullopt;
  return *reference - value;
}

Exponent kernel_exponent(const ClassSpec& spec) {
  spec.validate();
  return spec.metric.is_uniform() ? spec.p.conjugate() : spec.metric.target();
}

ErrorReport eps_exact(const ClassSpec& spec, int n, const QuadratureConfig& cfg) {
  check_n(n);
  const Exponent q = kernel_exponent(spec);
  check_kernel_scope(spec, q);
  const TailKernel kernel(spec.psi, spec.phases, n);
  const NormResult norm = lq_norm(kernel.scaled_function(), q, cfg);
  return make_report(spec, n, q, Method::DualityQuadrature, kernel.scale(), norm.value / kPi,
                     norm.error_estimate / kPi);
}

double eps_l2_closed_form(double r, int n) {
  if (!(r > 0.5)) throw DomainError("eps_l2_closed_form requires r > 1/2");
  check_n(n);
  return std::sqrt(special::hurwitz_zeta(special::ZetaArgs(2.0 * r, n)) / kPi);
}

double eps_l2_integral_form(double r, int n, double tol) {
  if (!(r > 0.5)) throw DomainError("eps_l2_integral_form requires r > 1/2");
  check_n(n);
  if (!(tol > 0.0)) throw DomainError("eps_l2_integral_form: tol must be positive");
  // d sqrt(Z/π) = dZ / (2 sqrt(π Z)) and Z >= n^{-2r}.
  const double floor_z = std::exp(-2.0 * r * std::log(static_cast<double>(n)));
  const double z_tol = std::max(tol * 2.0 * std::sqrt(kPi * floor_z), 1e-300);
  return std::sqrt(special::hurwitz_zeta_integral(special::ZetaArgs(2.0 * r, n), z_tol) / kPi);
}

ErrorReport eps_l2_report(const ClassSpec& spec, int n) {
  check_n(n);
  const Exponent q = kernel_exponent(spec);
  const auto r = spec.psi.power_exponent();
  if (!r || !(q == Exponent(2.0))) {
    throw DomainError("closed form needs a power-law class with kernel exponent 2");
  }
  const double value = eps_l2_closed_form(*r, n);
  const double scale = std::exp(-*r * std::log(static_cast<double>(n)));
  return ErrorReport{value, Method::ClosedFormL2, 1e-12, n, spec, q, value / scale, std::nullopt};
}

ErrorReport extremal_oracle(const ClassSpec& spec, int n, const QuadratureConfig& cfg) {
  check_n(n);
  const Exponent q = kernel_exponent(spec);
  check_kernel_scope(spec, q);
  const TailKernel kernel(spec.psi, spec.phases, n);
  const bool class_p1 = spec.p == Exponent(1.0);
  ErrorReport report = class_p1 ? dipole_oracle(spec, n, kernel, q, cfg)
                                : holder_oracle(spec, n, kernel, q, cfg);
  report.reference = eps_exact(spec, n, cfg).value;
  return report;
}

ErrorReport achieved_error(const ClassSpec& spec, int n, const Density& phi,
                           const QuadratureConfig& cfg) {
  check_n(n);
  const Exponent q = kernel_exponent(spec);
  check_kernel_scope(spec, q);
  const TailKernel kernel(spec.psi, spec.phases, n);
  if (phi.l1_bound == 0.0) {
    return make_report(spec, n, q, Method::ExtremalOracle, kernel.scale(), 0.0, 0.0);
  }
  const double scale = kernel.scale();
  QuadratureConfig inner = cfg;
  inner.rel_tol = std::max(cfg.rel_tol, 1e-9);
  double worst_inner = 0.0;
  PeriodicFunction f;
  f.eval = [&](double x) {
    const NormResult v = convolve_with_phi(kernel, phi, x, std::numeric_limits<double>::max(), inner);
    worst_inner = std::max(worst_inner, v.error_estimate / scale);
    return v.value / scale;
  };
  f.frequency_hint = std::max(kernel.bandwidth(), phi.f.frequency_hint);
  const Exponent target = spec.metric.is_uniform() ? Exponent::infinity() : spec.metric.target();
  const NormResult norm = lq_norm(f, target, inner);
  const double err = norm.error_estimate +
                     (target.is_infinite() ? 1.0 : std::pow(kTwoPi, 1.0 / target.value())) * worst_inner;
  return make_report(spec, n, q, Method::ExtremalOracle, scale, norm.value, err);
}

double tail_sum_power(double r, int n, double tol) {
  if (!(r > 1.0)) throw DomainError("tail_sum_power requires r > 1");
  check_n(n);
  return special::hurwitz_zeta(special::ZetaArgs(r, n + 1.0), tol);
}

double cos_norm(Exponent q) {
  if (q.is_infinite()) return 1.0;
  const double qv = q.value();
  if (qv == 1.0) return 4.0;
  if (qv == 2.0) return std::sqrt(kPi);

  static std::mutex mutex;
  static std::map<double, double> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(qv); it != cache.end()) return it->second;
  }
  PeriodicFunction c{[](double t) { return std::cos(t); }, {-0.5 * kPi, 0.5 * kPi}, 1, 0.0};
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-14;
  cfg.abs_tol = 1e-15;
  const double value = lq_norm(c, q, cfg).value;
  std::lock_guard lock(mutex);
  cache.emplace(qv, value);
  return value;
}

double single_harmonic_witness(const ClassSpec& spec, int n) {
  check_n(n);
  return spec.psi(n) * cos_norm(kernel_exponent(spec)) / kPi;
}

}  // namespace fcb
