#pragma once

// Special functions used by the closed forms: complete elliptic integral of
// the first kind, Hurwitz zeta (Euler–Maclaurin series and integral
// representation) and Gamma.

namespace fcb::special {

inline constexpr double kDefaultTol = 1e-12;

/// Elliptic modulus q with 0 <= q < 1.
class EllipticModulus {
 public:
  explicit EllipticModulus(double q);
  double value() const noexcept { return q_; }

 private:
  double q_;
};

/// Real arguments of ζ(s, l): s > 1, l > 0.
class ZetaArgs {
 public:
  ZetaArgs(double s, double l);
  double s() const noexcept { return s_; }
  double l() const noexcept { return l_; }

 private:
  double s_;
  double l_;
};

/// K(q) = ∫_0^{π/2} dt / sqrt(1 - q² sin² t) by the arithmetic–geometric mean.
double elliptic_k(EllipticModulus q, double tol = kDefaultTol);

/// ζ(s, l) = Σ_{m>=0} (l + m)^{-s}: a direct block followed by four
/// Euler–Maclaurin corrections. The block grows until the remainder bound
/// (the first omitted correction) is <= tol.
double hurwitz_zeta(ZetaArgs args, double tol = kDefaultTol);

/// ζ(s, l) = Γ(s)^{-1} ∫_0^∞ t^{s-1} e^{-lt} / (1 - e^{-t}) dt, with a series
/// on [0, 1e-2], adaptive quadrature beyond and a bounded exponential tail.
double hurwitz_zeta_integral(ZetaArgs args, double tol = kDefaultTol);

/// Γ(s) for s > 0 (Lanczos, g = 7).
double gamma_fn(double s);

namespace detail {

/// Γ(x) for any real x that is not a non-positive integer (reflection below 1/2).
double gamma_real(double x);

/// log|Γ(x)| for x > 0.
double log_gamma(double x);

/// Riemann ζ(x) for real x != 1, analytically continued.
double zeta_real(double x);

/// Σ_{m>=0} (a + m)^{-s} by Euler–Maclaurin for any real s > 0, s != 1, a > 0.
/// `corrections` Bernoulli terms after a block of `block` direct terms.
/// Returns the value; `bound` receives the magnitude of the first omitted term.
double hurwitz_em(double s, double a, int block, int corrections, double* bound = nullptr);

/// sin(πx) with exact zeros at the integers.
double sin_pi(double x);

/// Even-index Bernoulli number B_{2j}, 0 <= j <= 30.
double bernoulli_even(int j);

}  // namespace detail

}  // namespace fcb::special
