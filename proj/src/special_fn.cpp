#include "fcb/special_fn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "fcb/errors.hpp"
#include "fcb/quadrature.hpp"

namespace fcb::special {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_series(double x) {  // x = s - 1
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (x + static_cast<double>(i));
  return a;
}

// B_{2j} for j = 0..12.
constexpr std::array<double, 13> kBernoulliEven = {
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0};

constexpr int kZetaCorrections = 4;
constexpr double kSeriesCut = 1e-2;

}  // namespace

EllipticModulus::EllipticModulus(double q) : q_(q) {
  if (!(q >= 0.0) || !(q < 1.0)) throw DomainError("elliptic modulus must satisfy 0 <= q < 1");
}

ZetaArgs::ZetaArgs(double s, double l) : s_(s), l_(l) {
  if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("hurwitz zeta requires s > 1");
  if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("hurwitz zeta requires l > 0");
}

namespace detail {

double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  if (r == std::floor(r)) return 0.0;
  if (r <= 0.5) return std::sin(kPi * r);
  if (r <= 1.5) return -std::sin(kPi * (r - 1.0));
  return std::sin(kPi * (r - 2.0));
}

double bernoulli_even(int j) {
  if (j < 0 || j >= static_cast<int>(kBernoulliEven.size())) {
    throw DomainError("bernoulli_even: index out of table range");
  }
  return kBernoulliEven[static_cast<std::size_t>(j)];
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
  if (x < 0.5) return std::log(kPi / std::abs(sin_pi(x))) - log_gamma(1.0 - x);
  const double y = x - 1.0;
  const double t = y + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (y + 0.5) * std::log(t) - t + std::log(lanczos_series(y));
}

double gamma_real(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("gamma has poles at non-positive integers");
  if (x < 0.5) return kPi / (sin_pi(x) * gamma_real(1.0 - x));
  const double y = x - 1.0;
  const double t = y + kLanczosG + 0.5;
  if (x > 140.0) return std::exp(log_gamma(x));
  return std::sqrt(2.0 * kPi) * std::pow(t, y + 0.5) * std::exp(-t) * lanczos_series(y);
}

double hurwitz_em(double s, double a, int block, int corrections, double* bound) {
  double head = 0.0;
  // Smallest terms first.
  for (int k = block - 1; k >= 0; --k) head += std::pow(a + k, -s);
  const double x = a + block;
  const double xs = std::pow(x, -s);
  double sum = head + x * xs / (s - 1.0) + 0.5 * xs;

  // T_j = B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1}
  double rising = s;          // (s)_{1}
  double factorial = 2.0;     // (2j)!
  double power = xs / x;      // x^{-s-1}
  double term = 0.0;
  for (int j = 1; j <= corrections + 1; ++j) {
    term = bernoulli_even(j) / factorial * rising * power;
    if (j <= corrections) sum += term;
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    power /= x * x;
  }
  if (bound != nullptr) *bound = std::abs(term);
  return sum;
}

double zeta_real(double x) {
  if (x == 1.0) throw DomainError("zeta has a pole at 1");
  if (x == 0.0) return -0.5;
  if (x > 0.0) return hurwitz_em(x, 1.0, 20, 10);
  if (x == std::floor(x) && std::fmod(x, 2.0) == 0.0) return 0.0;
  // ζ(x) = 2^x π^{x-1} sin(πx/2) Γ(1-x) ζ(1-x)
  const double one_minus = 1.0 - x;
  const double log_mag = x * std::log(2.0) + (x - 1.0) * std::log(kPi) + log_gamma(one_minus);
  return std::exp(log_mag) * sin_pi(0.5 * x) * zeta_real(one_minus);
}

}  // namespace detail

double gamma_fn(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("gamma_fn requires s > 0");
  return detail::gamma_real(s);
}

double elliptic_k(EllipticModulus q, double tol) {
  if (!(tol > 0.0)) throw DomainError("elliptic_k: tol must be positive");
  const double m = q.value();
  double a = 1.0;
  double b = std::sqrt((1.0 - m) * (1.0 + m));
  for (int iter = 0; iter < 64 && std::abs(a - b) > 2.0 * kEps * a; ++iter) {
    const double next_a = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next_a;
  }
  const double k = kPi / (2.0 * a);
  const double achievable = 8.0 * kEps * k;
  if (tol < achievable) throw ToleranceError("elliptic_k: tolerance below double precision", k, achievable);
  return k;
}

double hurwitz_zeta(ZetaArgs args, double tol) {
  if (!(tol > 0.0)) throw DomainError("hurwitz_zeta: tol must be positive");
  const double s = args.s();
  const double l = args.l();
  int block = std::max(20, static_cast<int>(std::ceil(s)));
  double bound = 0.0;
  double value = detail::hurwitz_em(s, l, block, kZetaCorrections, &bound);
  // Rounding in the direct block limits what can be certified.
  const double rounding = 4.0 * kEps * std::abs(value);
  while (bound > tol || rounding > tol) {
    if (rounding > tol || block > (1 << 22)) {
      throw ToleranceError("hurwitz_zeta: remainder bound cannot meet tolerance", value,
                           std::max(bound, rounding));
    }
    block *= 2;
    value = detail::hurwitz_em(s, l, block, kZetaCorrections, &bound);
  }
  return value;
}

double hurwitz_zeta_integral(ZetaArgs args, double tol) {
  if (!(tol > 0.0)) throw DomainError("hurwitz_zeta_integral: tol must be positive");
  const double s = args.s();
  const double l = args.l();
  const double log_gamma_s = detail::log_gamma(s);

  // [0, c]: t^{s-2} · e^{-lt} t/(1 - e^{-t}) = Σ c_k t^{k+s-2}, integrated termwise.
  std::array<double, 41> bern{};  // coefficients of t/(1 - e^{-t})
  bern[0] = 1.0;
  bern[1] = 0.5;
  double fact = 2.0;
  for (int j = 1; 2 * j < static_cast<int>(bern.size()); ++j) {
    if (j > 1) fact *= (2.0 * j - 1.0) * (2.0 * j);
    bern[2 * j] = j <= 12 ? detail::bernoulli_even(j) / fact : 0.0;
  }
  double near = 0.0;
  for (int k = 0; k < static_cast<int>(bern.size()); ++k) {
    double ck = 0.0;
    double e = 1.0;  // (-l)^{k-j}/(k-j)!
    for (int i = 0; i <= k; ++i) {
      ck += bern[k - i] * e;
      e *= -l / (i + 1.0);
    }
    const double expo = s - 1.0 + k;
    const double term = ck * std::exp(expo * std::log(kSeriesCut) - log_gamma_s) / expo;
    near += term;
    if (k > 4 && std::abs(term) < 1e-18 * std::abs(near)) break;
  }

  auto integrand = [s, l, log_gamma_s](double t) {
    return std::exp((s - 1.0) * std::log(t) - l * t - log_gamma_s) / -std::expm1(-t);
  };

  // Upper cut T with ∫_T^∞ ≤ T^{s-1} e^{-lT} / ((l - (s-1)/T)(1 - e^{-T})) / Γ(s) ≤ tol/10.
  double upper = std::max(1.0, 2.0 * (s - 1.0) / l);
  auto log_tail = [&](double T) {
    return (s - 1.0) * std::log(T) - l * T - std::log(l - (s - 1.0) / T) -
           std::log(-std::expm1(-T)) - log_gamma_s;
  };
  while (log_tail(upper) > std::log(0.1 * tol)) upper *= 1.5;
  const double tail_bound = std::exp(log_tail(upper));

  QuadratureConfig cfg;
  cfg.abs_tol = 0.25 * tol;
  cfg.rel_tol = 1e-15;
  cfg.max_depth = 40;
  NormResult mid;
  try {
    mid = integrate_interval(integrand, kSeriesCut, upper, cfg);
  } catch (const ToleranceError& e) {
    throw ToleranceError("hurwitz_zeta_integral: quadrature did not converge",
                         near + e.best_value(), e.best_error() + tail_bound);
  }
  return near + mid.value;
}

}  // namespace fcb::special
