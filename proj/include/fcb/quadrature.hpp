#pragma once

// Integrals and L_q norms of 2π-periodic functions over [-π, π] with error
// control. Finite q uses adaptive Gauss–Legendre panels; panels touching a
// declared breakpoint or a located sign change of f are integrated after a
// cubic grading substitution, which absorbs kinks and integrable endpoint
// singularities. q = ∞ uses a dense scan plus golden-section refinement.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fcb {

/// Norm exponent q in [1, ∞].
class Exponent {
 public:
  explicit Exponent(double q);
  static Exponent infinity();
  static Exponent parse(std::string_view text);  // a number >= 1, or "inf"

  bool is_infinite() const noexcept { return infinite_; }
  /// The finite value, or +inf.
  double value() const noexcept;
  /// 1/q + 1/q' = 1 with 1' = ∞ and ∞' = 1.
  Exponent conjugate() const;
  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.q_ == b.q_);
  }

 private:
  Exponent() = default;
  double q_ = 1.0;
  bool infinite_ = false;
};

struct QuadratureConfig {
  double rel_tol = 1e-11;
  double abs_tol = 1e-12;
  int max_depth = 30;
  int base_panels = 64;

  void validate() const;  // throws DomainError
};

struct NormResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

using RealFunction = std::function<double(double)>;

/// A 2π-periodic function sampled on [-π, π].
struct PeriodicFunction {
  RealFunction eval;
  /// Points (any real, reduced mod 2π) where f or its derivatives may be singular.
  std::vector<double> breakpoints;
  /// Highest frequency that carries appreciable energy; drives scan resolution.
  int frequency_hint = 1;
  /// Bound on |eval(t) - f(t)|.
  double pointwise_error = 0.0;
};

/// ‖f‖_q on [-π, π]; throws ToleranceError when the tolerance is not met.
NormResult lq_norm(const PeriodicFunction& f, Exponent q, const QuadratureConfig& cfg = {});

/// Signed integral of f over [-π, π].
NormResult integrate(const PeriodicFunction& f, const QuadratureConfig& cfg = {});

/// Integral of f over [a, b]. Grading is applied at every point of `singular`
/// that lies in [a, b], endpoints included.
NormResult integrate_interval(const RealFunction& f, double a, double b,
                              const QuadratureConfig& cfg,
                              const std::vector<double>& singular = {});

/// Sign changes of f on [a, b], located by a uniform scan of `scan_points`
/// samples followed by bisection to machine precision.
std::vector<double> find_sign_changes(const RealFunction& f, double a, double b,
                                      int scan_points);

/// Reduces t into [-π, π).
double wrap_to_period(double t);

}  // namespace fcb
