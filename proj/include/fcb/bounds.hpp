#pragma once

// Worst-case error ε_n = sup_{f in class} ‖f - S_{n-1}(f)‖_X of Fourier partial
// sums. The duality evaluator returns (1/π)‖Ψ_n‖_q; the oracle builds an
// admissible φ and measures the error it actually attains, which is a lower
// bound on ε_n.

#include <optional>
#include <string_view>

#include "fcb/kernels.hpp"
#include "fcb/quadrature.hpp"

namespace fcb {

enum class Method { DualityQuadrature, ClosedFormL2, ExtremalOracle };

std::string_view to_string(Method m);

struct ErrorReport {
  double value = 0.0;
  Method method = Method::DualityQuadrature;
  double quadrature_error = 0.0;
  int n = 1;
  ClassSpec class_spec;
  Exponent q;  // norm applied to the tail kernel
  /// value / ψ(n); equals n^r·value for power-law classes.
  double scaled_value = 0.0;
  /// Oracle reports carry the duality value they are measured against.
  std::optional<double> reference;

  /// reference - value, or empty.
  std::optional<double> gap() const;
};

/// q = p' for the uniform metric, q = p_target for L_p on the p = 1 class.
Exponent kernel_exponent(const ClassSpec& spec);

/// (1/π)‖Ψ_n‖_q by quadrature. p = 2 classes accept any r > 1/2; every other
/// exponent needs a summable ψ.
ErrorReport eps_exact(const ClassSpec& spec, int n, const QuadratureConfig& cfg = {});

/// (ζ(2r, n)/π)^{1/2}.
double eps_l2_closed_form(double r, int n);
/// The same quantity through the integral representation of ζ(2r, n).
double eps_l2_integral_form(double r, int n, double tol = 1e-12);
/// Closed-form report for a power-law class whose kernel exponent is 2.
ErrorReport eps_l2_report(const ClassSpec& spec, int n);

/// Near-extremal admissible φ (zero mean, ‖φ‖_p <= 1) and the error it attains.
/// q = 2 and finite q use the Hölder extremizer of Ψ_n - λ* with the optimal
/// constant λ*; the p = 1 class uses a dipole of narrow bumps at the extrema of Ψ_n.
ErrorReport extremal_oracle(const ClassSpec& spec, int n, const QuadratureConfig& cfg = {});

/// Error attained by a caller-supplied φ (assumed admissible). A density with
/// l1_bound == 0 is treated as φ ≡ 0 and yields 0 without quadrature.
ErrorReport achieved_error(const ClassSpec& spec, int n, const Density& phi,
                           const QuadratureConfig& cfg = {});

/// Σ_{k>n} k^{-r} = ζ(r, n+1).
double tail_sum_power(double r, int n, double tol = 1e-12);

/// ‖cos‖_q over one period. Exact at q = 1, 2, ∞; otherwise computed by
/// quadrature once per exponent and cached.
double cos_norm(Exponent q);

/// ψ(n)‖cos‖_q/π: the leading term of ε_n in the high-smoothness regime.
double single_harmonic_witness(const ClassSpec& spec, int n);

}  // namespace fcb
