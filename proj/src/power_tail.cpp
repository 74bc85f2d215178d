#include "power_tail.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fcb/errors.hpp"
#include "fcb/special_fn.hpp"

namespace fcb::detail {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

using special::detail::log_gamma;
using special::detail::sin_pi;
using special::detail::zeta_real;

// ζ(x)/k! with x = s - k, kept finite for large k through log-gamma.
double zeta_over_factorial(double x, int k) {
  const double log_inv_fact = -log_gamma(k + 1.0);
  if (x == 0.0) return -0.5 * std::exp(log_inv_fact);
  if (x > 0.0) return zeta_real(x) * std::exp(log_inv_fact);
  if (x == std::floor(x) && std::fmod(x, 2.0) == 0.0) return 0.0;
  const double one_minus = 1.0 - x;
  const double log_mag =
      x * std::log(2.0) + (x - 1.0) * std::log(kPi) + log_gamma(one_minus) + log_inv_fact;
  return std::exp(log_mag) * sin_pi(0.5 * x) * zeta_real(one_minus);
}

}  // namespace

UnitCirclePolylog::UnitCirclePolylog(double s) : s_(s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("polylog order must be positive");
  integer_ = s == std::floor(s);
  if (integer_) {
    integer_order_ = static_cast<int>(s);
    singular_coeff_ = std::exp(-log_gamma(s));  // 1/(n-1)!
    for (int j = 1; j < integer_order_; ++j) harmonic_ += 1.0 / j;
  } else {
    singular_coeff_ = special::detail::gamma_real(1.0 - s);
  }
  const int terms = std::max(100, static_cast<int>(std::ceil(s)) + 60);
  coeffs_.resize(static_cast<std::size_t>(terms));
  for (int k = 0; k < terms; ++k) {
    const double x = s - k;
    coeffs_[static_cast<std::size_t>(k)] = (x == 1.0) ? 0.0 : zeta_over_factorial(x, k);
  }
}

ComplexEstimate UnitCirclePolylog::operator()(double t) const {
  using C = std::complex<double>;
  const double at = std::abs(t);
  if (at > kPi * (1.0 + 4.0 * kEps)) throw DomainError("polylog: t must lie in [-pi, pi]");

  if (t == 0.0) {
    if (s_ <= 1.0) return {C(std::numeric_limits<double>::infinity(), 0.0), 0.0};
    return {C(coeffs_[0], 0.0), 4.0 * kEps * coeffs_[0]};
  }

  // Regular part Σ c_k (it)^k by Horner; magnitude sum for the rounding bound.
  const C mu(0.0, t);
  C regular(0.0, 0.0);
  double magnitude = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    regular = regular * mu + *it;
    magnitude = magnitude * at + std::abs(*it);
  }
  const double truncation =
      2.0 * std::abs(coeffs_.back()) * std::pow(at, static_cast<double>(coeffs_.size()));

  const double sign = t > 0.0 ? 1.0 : -1.0;
  C singular;
  if (integer_) {
    // (it)^{n-1}/(n-1)! [H_{n-1} - log(-it)],  log(-it) = log|t| - i sgn(t) π/2
    C mu_power(1.0, 0.0);
    for (int j = 1; j < integer_order_; ++j) mu_power *= mu;
    singular = mu_power * singular_coeff_ * C(harmonic_ - std::log(at), sign * kPi / 2.0);
  } else {
    // Γ(1-s) |t|^{s-1} e^{-i sgn(t) π (s-1)/2}
    const double half = 0.5 * (s_ - 1.0);
    const C phase(sin_pi(half + 0.5), -sign * sin_pi(half));
    singular = singular_coeff_ * std::pow(at, s_ - 1.0) * phase;
  }
  const double rounding = 8.0 * kEps * (magnitude + std::abs(singular));
  return {regular + singular, rounding + truncation};
}

ComplexEstimate power_tail_via_polylog(const UnitCirclePolylog& li, int m, double t) {
  ComplexEstimate full = li(t);
  if (m <= 1) return full;
  std::complex<double> head(0.0, 0.0);
  double head_mag = 0.0;
  for (int k = m - 1; k >= 1; --k) {
    const double w = std::pow(static_cast<double>(k), -li.order());
    head += std::polar(w, k * t);
    head_mag += w;
  }
  full.value -= head;
  full.error += 4.0 * kEps * (head_mag + std::abs(full.value));
  return full;
}

double relative_power_tail_bound(double s, long m, long j) {
  const double x = static_cast<double>(j) / static_cast<double>(m);
  return std::pow(x, -s) + static_cast<double>(m) / (s - 1.0) * std::pow(x, 1.0 - s);
}

long power_truncation_index(double s, long m, double rel_target, long cap) {
  if (!(s > 1.0)) return -1;
  auto ok = [&](long M) { return relative_power_tail_bound(s, m, M + 1) <= rel_target; };
  long hi = m;
  while (!ok(hi)) {
    if (hi > cap / 2) return -1;
    hi *= 2;
  }
  long lo = std::max(m, hi / 2);
  if (ok(lo)) return lo;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace fcb::detail
