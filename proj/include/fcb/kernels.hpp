#pragma once

// Coefficient and phase data of Stepanets kernels
//   Ψ(t) = Σ_{k>=1} ψ(k) cos(kt - β_k π/2),
// pointwise evaluation of the tail Ψ_n(t) = Σ_{k>=n} ψ(k) cos(kt - β_k π/2) with a
// certified error, Fourier partial sums and convolution with a density φ.

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "fcb/quadrature.hpp"

namespace fcb {

/// Positive coefficient sequence ψ(k), k >= 1.
class SmoothnessSeq {
 public:
  struct PowerLaw {
    double r;
  };
  /// Continuation ψ(k) = ψ(K) ρ^{k-K} past the last explicit value ψ(K).
  struct GeometricTail {
    double ratio;
  };
  /// Continuation ψ(k) = ψ(K) (k/K)^{-r} past the last explicit value ψ(K).
  struct PowerTail {
    double r;
  };
  using TailRule = std::variant<GeometricTail, PowerTail>;
  struct Explicit {
    std::vector<double> values;  // ψ(1), ..., ψ(K)
    TailRule tail;
  };

  /// ψ(k) = k^{-r}. Requires r > 1/2; the sequence is summable only for r > 1.
  static SmoothnessSeq power_law(double r);
  static SmoothnessSeq explicit_values(std::vector<double> values, TailRule tail);

  double operator()(long k) const;
  double log_value(long k) const;

  /// Σ ψ(k) < ∞ (kernel continuous).
  bool summable() const noexcept;
  /// Σ ψ(k)² < ∞ (kernel in L_2).
  bool square_summable() const noexcept;
  /// r for PowerLaw, empty otherwise.
  std::optional<double> power_exponent() const noexcept;
  /// Certified upper bound on Σ_{k>m} ψ(k); +inf if not summable.
  double tail_sum_bound(long m) const;

  const std::variant<PowerLaw, Explicit>& kind() const noexcept { return kind_; }

 private:
  explicit SmoothnessSeq(std::variant<PowerLaw, Explicit> kind) : kind_(std::move(kind)) {}
  std::variant<PowerLaw, Explicit> kind_;
};

/// Phase sequence β̄ = {β_k}.
class PhaseSeq {
 public:
  static PhaseSeq stationary(double beta);
  /// β_k = values[k-1] for k <= values.size(), `default_beta` afterwards.
  static PhaseSeq explicit_values(std::vector<double> values, double default_beta);

  double operator()(long k) const;
  bool is_stationary() const noexcept { return values_.empty(); }
  const std::vector<double>& values() const noexcept { return values_; }
  double default_beta() const noexcept { return default_; }

 private:
  PhaseSeq(std::vector<double> values, double default_beta)
      : values_(std::move(values)), default_(default_beta) {}
  std::vector<double> values_;
  double default_;
};

/// Target metric of the approximation error.
class Metric {
 public:
  static Metric uniform() { return Metric(std::nullopt); }
  static Metric lp(Exponent target) { return Metric(target); }

  bool is_uniform() const noexcept { return !target_.has_value(); }
  /// L_p target exponent; throws for the uniform metric.
  Exponent target() const;

 private:
  explicit Metric(std::optional<Exponent> target) : target_(target) {}
  std::optional<Exponent> target_;
};

/// A class C^ψ_{β̄,p} together with the metric in which ε_n is measured.
struct ClassSpec {
  SmoothnessSeq psi;
  PhaseSeq phases;
  Exponent p;
  Metric metric;

  /// Throws DomainError unless the metric is uniform, or L_p with class exponent p = 1.
  void validate() const;
};

struct KernelValue {
  double value = 0.0;
  double error = 0.0;
};

/// Ψ_{β̄,n}(t) = Σ_{k>=n} ψ(k) cos(kt - β_k π/2). Immutable and cheap to copy.
///
/// Internally every value is computed relative to ψ(n). Power-law tails are
/// summed directly when the integral-test truncation index is small, and
/// otherwise through the polylogarithm expansion about t = 0.
class TailKernel {
 public:
  TailKernel(SmoothnessSeq psi, PhaseSeq phases, int n);

  KernelValue evaluate(double t) const;
  /// Ψ_n(t) / ψ(n).
  KernelValue evaluate_scaled(double t) const;

  int n() const noexcept;
  double scale() const noexcept;  // ψ(n)
  double log_scale() const noexcept;
  /// Largest k whose coefficient exceeds 1e-3 ψ(n) (capped).
  int bandwidth() const noexcept;
  /// Upper bound on |Ψ_n(t)| / ψ(n) valid for all t (+inf if not summable).
  double scaled_sup_bound() const noexcept;
  bool uses_polylog() const noexcept;

  const SmoothnessSeq& psi() const noexcept;
  const PhaseSeq& phases() const noexcept;

  /// Ψ_n / ψ(n) as a quadrature integrand (breakpoint at t = 0).
  PeriodicFunction scaled_function() const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

/// Ψ_n(t) with |error| <= tol; throws ToleranceError otherwise.
double eval_tail_kernel(const TailKernel& kernel, double t, double tol);

/// Cosine/sine coefficients: f(t) = a0/2 + Σ_{k>=1} (a_k cos kt + b_k sin kt),
/// with a[k-1] = a_k and b[k-1] = b_k.
struct Spectrum {
  double a0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;
};

/// S_{n-1}(f; t) = a0/2 + Σ_{k<n} (a_k cos kt + b_k sin kt).
double fourier_partial_sum(const Spectrum& f, int n, double t);

/// Coefficients of Σ_{k=1}^{max_k} ψ(k) cos(kt - β_k π/2).
Spectrum kernel_spectrum(const SmoothnessSeq& psi, const PhaseSeq& phases, int max_k);

/// Coefficients of (1/π) ∫ φ(x - t) K(t) dt from those of K and φ.
Spectrum convolve_spectra(const Spectrum& kernel, const Spectrum& phi);

/// A density φ: its evaluation handle plus a bound on ‖φ‖_1 (used in the error bound).
struct Density {
  PeriodicFunction f;
  double l1_bound = 2.0 * 3.141592653589793;
};

/// (1/π) ∫_{-π}^{π} φ(x - t) Ψ_n(t) dt with absolute error <= tol.
/// The full kernel is the tail kernel with n = 1.
NormResult convolve_with_phi(const TailKernel& kernel, const Density& phi, double x, double tol,
                             QuadratureConfig cfg = {});

}  // namespace fcb
