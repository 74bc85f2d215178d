#pragma once

#include <complex>
#include <vector>

namespace fcb::detail {

struct ComplexEstimate {
  std::complex<double> value;
  double error = 0.0;
};

/// Li_s(e^{it}) = Σ_{k>=1} k^{-s} e^{ikt} for real s > 0 and t in [-π, π],
/// from the expansion about t = 0 (radius 2π):
///   Li_s(e^μ) = Γ(1-s)(-μ)^{s-1} + Σ_k ζ(s-k) μ^k / k!,
/// with the harmonic-number/log form at integer s.
class UnitCirclePolylog {
 public:
  explicit UnitCirclePolylog(double s);

  ComplexEstimate operator()(double t) const;
  double order() const noexcept { return s_; }

 private:
  double s_;
  bool integer_ = false;
  int integer_order_ = 0;
  double singular_coeff_ = 0.0;  // Γ(1-s), or 1/(n-1)! at integer n
  double harmonic_ = 0.0;        // H_{n-1} at integer n
  std::vector<double> coeffs_;   // ζ(s-k)/k!, zero at the log term
};

/// Σ_{k>=m} k^{-s} e^{ikt} as Li_s(e^{it}) minus the first m-1 terms.
ComplexEstimate power_tail_via_polylog(const UnitCirclePolylog& li, int m, double t);

/// Integral-test bound on Σ_{k>=j} (k/m)^{-s}, i.e. the tail relative to m^{-s}:
///   (j/m)^{-s} + (m/(s-1)) (j/m)^{1-s}.   Requires s > 1.
double relative_power_tail_bound(double s, long m, long j);

/// Smallest M >= m with Σ_{k>M} (k/m)^{-s} <= rel_target; -1 if M would exceed `cap`.
long power_truncation_index(double s, long m, double rel_target, long cap);

}  // namespace fcb::detail
