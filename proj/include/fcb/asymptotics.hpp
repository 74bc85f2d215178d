#pragma once

// Leading terms of the classical and high-smoothness asymptotics of ε_n, the
// tail-sum inequality chain behind the (1 + 1/n)^{-r} remainder, and sweeps
// that measure the implied O(1) constants against exact values.

#include <array>
#include <functional>
#include <string_view>
#include <vector>

#include "fcb/bounds.hpp"

namespace fcb {

enum class FormulaId {
  Kolmogorov4,
  Nikolskii5,
  Stechkin6,
  Stechkin8,
  Stechkin9,
  Stechkin10,
  Thm1_uniform,
  Thm1_L1,
  Corollary1
};

std::string_view to_string(FormulaId id);

/// leading and remainder_scale are absolute (both include the n^{-r} factor).
struct AsymptoticEstimate {
  FormulaId formula_id;
  double leading = 0.0;
  double remainder_scale = 0.0;
  /// False when the formula is evaluated outside its hypothesis (r < n + 1 for Theorem 1).
  bool in_hypothesis = true;
};

/// (4/π²) ln n / n^r with remainder scale n^{-r}. Requires n >= 2, r > 0.
AsymptoticEstimate leading_kolmogorov(int n, double r);
/// The L_1-metric twin of leading_kolmogorov (same leading term).
AsymptoticEstimate leading_nikolskii(int n, double r);

/// n^{-r} (8/π²) K(e^{-r/n}) with remainder scale n^{-r}/r. Requires r >= 1.
/// `id` selects the uniform (Stechkin6) or L_1 (Stechkin9) reading.
AsymptoticEstimate leading_stechkin_elliptic(int n, double r, FormulaId id = FormulaId::Stechkin6);

enum class Setting { UniformOnWp, LpOnW1 };

std::string_view to_string(Setting s);

/// n^{-r} ‖cos‖_q / π with q = p' (UniformOnWp) or q = p (LpOnW1), remainder
/// scale n^{-r} (1 + 1/n)^{-r}. r < n + 1 is allowed but flagged.
AsymptoticEstimate leading_thm1(int n, double r, Exponent p, Setting setting);

/// lhs = Σ_{k>n} k^{-r} against rhs = 3 n^{-r} (1 + 1/n)^{-r}, with the chain
///   lhs < (n+1)^{-r}(r+n)/(r-1) <= n^{-r}(1+1/n)^{-r}(2r-1)/(r-1)
///       <= n^{-r}(1+1/n)^{-r}(2+1/n) <= rhs.
struct TailBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs followed by the four upper expressions, in chain order.
  std::array<double, 5> chain{};
  bool chain_holds = false;
  /// lhs < rhs.
  bool holds = false;
};

/// Requires n >= 1 and r >= n + 1.
TailBoundCheck tail_bound_check(int n, double r);

struct RegimeCheck {
  double lhs = 0.0;  // (1 + 1/n)^{-r}
  double rhs = 0.0;  // e^{-r/(n+1)}
  bool holds = false;
};

RegimeCheck convergence_regime_check(int n, double r);

enum class SweepKind {
  Thm1,      // ‖cos‖/π leading term, (1 + 1/n)^{-r} remainder; needs r >= n + 1
  Stechkin,  // (8/π²)K(e^{-r/n}) leading term, 1/r remainder; uniform metric, p = ∞
};

struct RemainderDiagnostic {
  Setting setting;
  int n;
  double r;
  Exponent p;
  Exponent q;
  double exact;
  double leading;
  double remainder_scale;
  /// (exact - leading) / remainder_scale.
  double implied_O1;
  /// The same difference divided by n^{-r} (1 + 2/n)^{-r}.
  double telyakovskii_O1;
  double quadrature_error;
};

struct SweepPoint {
  int n;
  double r;
};

struct SweepResult {
  std::vector<RemainderDiagnostic> rows;  // sorted by (n, r)
  double max_abs_O1 = 0.0;
  double max_abs_telyakovskii = 0.0;
};

/// Exact values via eps_exact, evaluated on up to `threads` worker threads.
/// Rows come back in (n, r) order regardless of scheduling.
/// The class at each point is C^ψ_{β̄,p} with ψ(k) = k^{-r} (UniformOnWp), or
/// the p = 1 class measured in L_p (LpOnW1).
SweepResult remainder_sweep(SweepKind kind, Setting setting, const std::vector<SweepPoint>& grid,
                            Exponent p, const PhaseSeq& phases, const QuadratureConfig& cfg = {},
                            int threads = 1);

/// The class spec remainder_sweep uses at one grid point.
ClassSpec sweep_class(Setting setting, double r, Exponent p, const PhaseSeq& phases);

/// Grid {(n, c·(n+1)) : n in ns, c in multipliers}.
std::vector<SweepPoint> multiple_grid(const std::vector<int>& ns, const std::vector<double>& multipliers);

}  // namespace fcb
