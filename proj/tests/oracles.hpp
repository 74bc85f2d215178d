#pragma once

// Reference computations that share no code with the library: adaptive
// Simpson quadrature and brute-force partial sums with integral-test brackets.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

/// Adaptive Simpson with Richardson correction.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 50) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Simpson over [a, b] split into `pieces` equal parts (keeps kinks near part edges tame).
inline double simpson_pieces(const std::function<double(double)>& f, double a, double b, int pieces,
                             double tol) {
  double sum = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + (b - a) * i / pieces;
    const double hi = a + (b - a) * (i + 1) / pieces;
    sum += simpson(f, lo, hi, tol / pieces);
  }
  return sum;
}

struct Bracket {
  double lo;
  double hi;
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

/// Σ_{k=from}^{∞} k^{-s}: Kahan-summed partial sum to `last` (smallest terms first)
/// plus the integral-test bracket [∫_{last+1}^∞, ∫_{last}^∞] for the rest.
inline Bracket power_sum(double s, long from, long last) {
  double sum = 0.0;
  double comp = 0.0;
  for (long k = last; k >= from; --k) {
    const double y = std::pow(static_cast<double>(k), -s) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const double lo = std::pow(last + 1.0, 1.0 - s) / (s - 1.0);
  const double hi = std::pow(static_cast<double>(last), 1.0 - s) / (s - 1.0);
  return {sum + lo, sum + hi};
}

/// Σ_{k=n}^{last} k^{-r} cos(kt - βπ/2), Kahan-summed. The omitted tail is
/// bounded by Σ_{k>last} k^{-r} <= last^{1-r}/(r-1), and away from t = 0 by
/// Abel summation: (last+1)^{-r} / |sin(t/2)|.
inline Bracket tail_kernel(double r, double beta, long n, double t, long last) {
  double sum = 0.0;
  double comp = 0.0;
  for (long k = last; k >= n; --k) {
    const double y = std::pow(static_cast<double>(k), -r) * std::cos(k * t - beta * kPi / 2.0) - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  double rest = std::pow(static_cast<double>(last), 1.0 - r) / (r - 1.0);
  const double half_sin = std::abs(std::sin(0.5 * t));
  if (half_sin > 0.0) rest = std::min(rest, std::pow(last + 1.0, -r) / half_sin);
  return {sum - rest, sum + rest};
}

/// Σ_{k>=2} (-1)^k k^{-3} from pairs summed to `last` plus the alternating-series bound.
inline Bracket alternating_cubes(long last) {
  double sum = 0.0;
  for (long k = last; k >= 2; --k) {
    const double term = std::pow(static_cast<double>(k), -3.0);
    sum += (k % 2 == 0) ? term : -term;
  }
  const double next = std::pow(last + 1.0, -3.0);
  return {sum - next, sum + next};
}

/// (1/π) ∫ sgn(cos(n(x - t))) Ψ_n(t) dt at x = 0, β = 0, ψ(k) = k^{-r}, from the
/// expansion sgn(cos u) = (4/π) Σ_j (-1)^j cos((2j+1)u)/(2j+1).
inline Bracket sgn_cos_convolution(double r, int n, long terms) {
  double sum = 0.0;
  for (long j = terms - 1; j >= 0; --j) {
    const double k = static_cast<double>((2 * j + 1) * n);
    sum += (j % 2 == 0 ? 1.0 : -1.0) * std::pow(k, -r) / (2.0 * j + 1.0);
  }
  sum *= 4.0 / kPi;
  const double next = 4.0 / kPi * std::pow((2.0 * terms + 1.0) * n, -r) / (2.0 * terms + 1.0);
  return {sum - next, sum + next};
}

}  // namespace oracle
