#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fcb/asymptotics.hpp"
#include "fcb/bounds.hpp"
#include "fcb/errors.hpp"
#include "fcb/kernels.hpp"
#include "fcb/special_fn.hpp"

namespace fcb::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct Tolerances {
  double special = special::kDefaultTol;
  QuadratureConfig quad;
  // Integrals of a zero-mean kernel are limited by its evaluation noise.
  QuadratureConfig mean;
};

Tolerances make_tolerances(double tol) {
  Tolerances t;
  t.mean.abs_tol = 1e-10;
  if (tol > 0.0) {
    t.special = tol;
    t.quad.rel_tol = tol;
    t.quad.abs_tol = tol;
    t.mean = t.quad;
  }
  return t;
}

std::string label(std::initializer_list<std::pair<const char*, double>> parts) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, v] : parts) {
    os << (first ? "" : " ") << key << '=' << v;
    first = false;
  }
  return os.str();
}

CheckRow at_most(const std::string& suite, std::string name, double measured, double threshold) {
  return {suite, std::move(name), measured, threshold, measured <= threshold};
}

std::vector<CheckRow> special_suite(const Tolerances& t) {
  const std::string s = "special";
  std::vector<CheckRow> rows;
  QuadratureConfig tight = t.quad;
  tight.rel_tol = std::min(tight.rel_tol, 1e-14);
  tight.abs_tol = std::min(tight.abs_tol, 0.1 * t.special);

  double worst = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double q = i < 10 ? 0.1 * i : 0.99;
    const double agm = special::elliptic_k(special::EllipticModulus(q), t.special);
    auto integrand = [q](double x) {
      const double sn = std::sin(x);
      return 1.0 / std::sqrt(1.0 - q * q * sn * sn);
    };
    const double quad = integrate_interval(integrand, 0.0, 0.5 * kPi, tight).value;
    worst = std::max(worst, std::abs(agm - quad));
  }
  rows.push_back(at_most(s, "elliptic_k AGM vs quadrature", worst, 10.0 * t.special));

  worst = 0.0;
  double telescoping = 0.0;
  for (double z : {1.5, 2.0, 4.0, 10.0, 40.0}) {
    for (double l : {1.0, 2.0, 4.0, 8.0, 16.0}) {
      const double series = special::hurwitz_zeta(special::ZetaArgs(z, l), t.special);
      const double integral = special::hurwitz_zeta_integral(special::ZetaArgs(z, l), t.special);
      const double next = special::hurwitz_zeta(special::ZetaArgs(z, l + 1.0), t.special);
      worst = std::max(worst, std::abs(series - integral));
      telescoping = std::max(telescoping, std::abs(series - next - std::pow(l, -z)));
    }
  }
  rows.push_back(at_most(s, "hurwitz_zeta series vs integral", worst, 2.0 * t.special));
  rows.push_back(at_most(s, "hurwitz_zeta telescoping", telescoping, 2.0 * t.special));

  const double z2 = special::hurwitz_zeta(special::ZetaArgs(2.0, 1.0), t.special);
  const double z4 = special::hurwitz_zeta(special::ZetaArgs(4.0, 1.0), t.special);
  rows.push_back(at_most(s, "zeta(2) = pi^2/6", std::abs(z2 - kPi * kPi / 6.0), 1e-12));
  rows.push_back(at_most(s, "zeta(4) = pi^4/90", std::abs(z4 - std::pow(kPi, 4) / 90.0), 1e-12));

  worst = 0.0;
  for (double x = 0.5; x <= 30.0; x += 0.25) {
    worst = std::max(worst, std::abs(special::gamma_fn(x + 1.0) / (x * special::gamma_fn(x)) - 1.0));
  }
  rows.push_back(at_most(s, "gamma recurrence (relative)", worst, 1e-12));
  return rows;
}

std::vector<CheckRow> kernels_suite(const Tolerances& t) {
  const std::string s = "kernels";
  std::vector<CheckRow> rows;
  double mean = 0.0;
  double even = 0.0;
  double odd = 0.0;
  double additivity = 0.0;
  for (double r : {2.0, 4.0}) {
    for (int n : {1, 3}) {
      for (double beta : {0.0, 0.5, 1.0}) {
        const TailKernel k(SmoothnessSeq::power_law(r), PhaseSeq::stationary(beta), n);
        mean = std::max(mean, std::abs(integrate(k.scaled_function(), t.mean).value) * k.scale());
        const TailKernel full(SmoothnessSeq::power_law(r), PhaseSeq::stationary(beta), 1);
        const Spectrum head = kernel_spectrum(k.psi(), k.phases(), n - 1);
        for (int i = 1; i <= 64; ++i) {
          const double x = kPi * i / 64.0;
          const double a = k.evaluate(x).value;
          const double b = k.evaluate(-x).value;
          if (beta == 0.0) even = std::max(even, std::abs(a - b));
          if (beta == 1.0) odd = std::max(odd, std::abs(a + b));
          additivity =
              std::max(additivity, std::abs(fourier_partial_sum(head, n, x) + a - full.evaluate(x).value));
        }
      }
    }
  }
  rows.push_back(at_most(s, "zero mean", mean, 1e-9));
  rows.push_back(at_most(s, "beta=0 parity (even)", even, 1e-12));
  rows.push_back(at_most(s, "beta=1 parity (odd)", odd, 1e-12));
  rows.push_back(at_most(s, "series split additivity", additivity, 2e-12));

  const TailKernel z2(SmoothnessSeq::power_law(2.0), PhaseSeq::stationary(0.0), 1);
  rows.push_back(at_most(s, "r=2 n=1 t=0 equals zeta(2)",
                         std::abs(eval_tail_kernel(z2, 0.0, 1e-12) - kPi * kPi / 6.0), 1e-12));
  const TailKernel alt(SmoothnessSeq::power_law(3.0), PhaseSeq::stationary(0.0), 2);
  const double zeta3 = special::hurwitz_zeta(special::ZetaArgs(3.0, 1.0));
  rows.push_back(at_most(s, "r=3 n=2 t=pi alternating sum",
                         std::abs(eval_tail_kernel(alt, kPi, 1e-12) - (1.0 - 0.75 * zeta3)), 1e-12));

  double reproduce = 0.0;
  for (double beta : {0.0, 0.7}) {
    const TailKernel full(SmoothnessSeq::power_law(3.0), PhaseSeq::stationary(beta), 1);
    for (int k = 1; k <= 4; ++k) {
      Density phi;
      phi.f = PeriodicFunction{[k](double u) { return std::cos(k * u); }, {}, k, 0.0};
      phi.l1_bound = 4.0;
      for (double x : {0.0, 0.9, -2.1}) {
        const double v = convolve_with_phi(full, phi, x, 1e-10, t.quad).value;
        const double expect = std::pow(k, -3.0) * std::cos(k * x - beta * kPi / 2.0);
        reproduce = std::max(reproduce, std::abs(v - expect));
      }
    }
  }
  rows.push_back(at_most(s, "convolution reproduces coefficients", reproduce, 1e-10));
  return rows;
}

std::vector<CheckRow> l2_suite(const Tolerances& t) {
  const std::string s = "l2";
  std::vector<CheckRow> rows;
  for (double r : {1.0, 1.5, 2.0, 4.0, 8.0, 20.0}) {
    double worst = 0.0;
    double phase = 0.0;
    for (int n = 1; n <= 8; ++n) {
      const auto beta = PhaseSeq::stationary(0.0);
      const ClassSpec uni{SmoothnessSeq::power_law(r), beta, Exponent(2.0), Metric::uniform()};
      const ClassSpec lp{SmoothnessSeq::power_law(r), beta, Exponent(1.0), Metric::lp(Exponent(2.0))};
      const double values[] = {eps_exact(uni, n, t.quad).value, eps_exact(lp, n, t.quad).value,
                               eps_l2_closed_form(r, n), eps_l2_integral_form(r, n, t.special)};
      for (double a : values) {
        for (double b : values) worst = std::max(worst, std::abs(a - b));
      }
      const ClassSpec shifted{SmoothnessSeq::power_law(r), PhaseSeq::explicit_values({0.3, 1.0, -0.4}, 1.0),
                              Exponent(2.0), Metric::uniform()};
      phase = std::max(phase, std::abs(eps_exact(shifted, n, t.quad).value - values[0]));
    }
    rows.push_back(at_most(s, label({{"routes r", r}}), worst, 1e-9));
    rows.push_back(at_most(s, label({{"phase invariance r", r}}), phase, 1e-10));
  }
  return rows;
}

std::vector<CheckRow> t1d6_suite() {
  const std::string s = "t1d6";
  std::vector<CheckRow> rows;
  for (int n = 1; n <= 10; ++n) {
    for (double r : {n + 1.0, n + 2.0, 2.0 * n + 2.0, 5.0 * n}) {
      if (r < n + 1.0) continue;
      const TailBoundCheck c = tail_bound_check(n, r);
      rows.push_back({s, label({{"n", n}, {"r", r}}), c.lhs / c.rhs, 1.0, c.chain_holds && c.holds});
    }
  }
  return rows;
}

std::vector<CheckRow> regime_suite() {
  const std::string s = "1z2";
  std::vector<CheckRow> rows;
  for (double r : {1.0, 2.0, 5.0, 10.0, 100.0}) {
    double worst = 0.0;
    bool ok = true;
    for (int n = 1; n <= 50; ++n) {
      const RegimeCheck c = convergence_regime_check(n, r);
      worst = std::max(worst, c.lhs / c.rhs);
      ok = ok && c.holds;
    }
    rows.push_back({s, label({{"n=1..50 r", r}}), worst, 1.0, ok});
  }
  return rows;
}

std::vector<CheckRow> thm1_suite(const Tolerances& t, int threads) {
  const std::string s = "thm1";
  std::vector<CheckRow> rows;
  const auto beta = PhaseSeq::stationary(0.0);
  const std::vector<int> ns = {1, 2, 3, 4, 5, 6};
  const auto high = remainder_sweep(SweepKind::Thm1, Setting::UniformOnWp, multiple_grid(ns, {10.0}),
                                    Exponent::infinity(), beta, t.quad, threads);
  rows.push_back(at_most(s, "p=inf r=10(n+1) bracket 3", high.max_abs_O1, 3.0));
  const auto l2 = remainder_sweep(SweepKind::Thm1, Setting::UniformOnWp,
                                  multiple_grid(ns, {1.0, 2.0, 5.0, 10.0}), Exponent(2.0), beta, t.quad,
                                  threads);
  rows.push_back(at_most(s, "p=2 r=c(n+1) bracket 3", l2.max_abs_O1, 3.0));
  const auto l1 = remainder_sweep(SweepKind::Thm1, Setting::LpOnW1, multiple_grid(ns, {10.0}),
                                  Exponent(1.0), beta, t.quad, threads);
  rows.push_back(at_most(s, "L1 metric r=10(n+1) bracket 3", l1.max_abs_O1, 3.0));
  return rows;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"special", "kernels", "l2", "t1d6", "1z2", "thm1"};
  return names;
}

std::vector<CheckRow> run_suite(const std::string& name, double tol, int threads) {
  const Tolerances t = make_tolerances(tol);
  if (name == "special") return special_suite(t);
  if (name == "kernels") return kernels_suite(t);
  if (name == "l2") return l2_suite(t);
  if (name == "t1d6") return t1d6_suite();
  if (name == "1z2") return regime_suite();
  if (name == "thm1") return thm1_suite(t, threads);
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace fcb::cli
