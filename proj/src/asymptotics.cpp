#include "fcb/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "fcb/errors.hpp"
#include "fcb/special_fn.hpp"

namespace fcb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Slack for the non-strict links of the tail chain, which are equalities at r = n + 1.
constexpr double kChainSlack = 4.0 * kEps;

double n_pow(int n, double r) { return std::exp(-r * std::log(static_cast<double>(n))); }

// (1 + 1/n)^{-r}
double thm1_factor(int n, double r) { return std::exp(-r * std::log1p(1.0 / n)); }

}  // namespace

std::string_view to_string(FormulaId id) {
  switch (id) {
    case FormulaId::Kolmogorov4:
      return "Kolmogorov4";
    case FormulaId::Nikolskii5:
      return "Nikolskii5";
    case FormulaId::Stechkin6:
      return "Stechkin6";
    case FormulaId::Stechkin8:
      return "Stechkin8";
    case FormulaId::Stechkin9:
      return "Stechkin9";
    case FormulaId::Stechkin10:
      return "Stechkin10";
    case FormulaId::Thm1_uniform:
      return "Thm1_uniform";
    case FormulaId::Thm1_L1:
      return "Thm1_L1";
    case FormulaId::Corollary1:
      return "Corollary1";
  }
  return "?";
}

std::string_view to_string(Setting s) {
  return s == Setting::UniformOnWp ? "uniform" : "lp";
}

AsymptoticEstimate leading_kolmogorov(int n, double r) {
  if (n < 2) throw DomainError("the ln n asymptotics need n >= 2");
  if (!(r > 0.0)) throw DomainError("the ln n asymptotics need r > 0");
  const double scale = n_pow(n, r);
  return {FormulaId::Kolmogorov4, 4.0 / (kPi * kPi) * std::log(static_cast<double>(n)) * scale, scale};
}

AsymptoticEstimate leading_nikolskii(int n, double r) {
  AsymptoticEstimate e = leading_kolmogorov(n, r);
  e.formula_id = FormulaId::Nikolskii5;
  return e;
}

AsymptoticEstimate leading_stechkin_elliptic(int n, double r, FormulaId id) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(r >= 1.0)) throw DomainError("the elliptic asymptotics need r >= 1");
  if (id != FormulaId::Stechkin6 && id != FormulaId::Stechkin9) {
    throw DomainError("elliptic leading term is Stechkin6 or Stechkin9");
  }
  const double scale = n_pow(n, r);
  const double k = special::elliptic_k(special::EllipticModulus(std::exp(-r / n)));
  return {id, scale * 8.0 / (kPi * kPi) * k, scale / r};
}

AsymptoticEstimate leading_thm1(int n, double r, Exponent p, Setting setting) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(r > 0.0)) throw DomainError("r must be positive");
  const Exponent q = setting == Setting::UniformOnWp ? p.conjugate() : p;
  const double scale = n_pow(n, r);

  FormulaId id = setting == Setting::UniformOnWp ? FormulaId::Thm1_uniform : FormulaId::Thm1_L1;
  if (q == Exponent(2.0)) {
    id = FormulaId::Corollary1;
  } else if (q == Exponent(1.0) && setting == Setting::UniformOnWp) {
    id = FormulaId::Stechkin8;
  } else if (q == Exponent(1.0)) {
    id = FormulaId::Stechkin10;
  }
  return {id, scale * cos_norm(q) / kPi, scale * thm1_factor(n, r), r >= n + 1.0};
}

TailBoundCheck tail_bound_check(int n, double r) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(r >= n + 1.0)) throw DomainError("the tail chain needs r >= n + 1");
  // n^{-r}(1 + 1/n)^{-r} = (n+1)^{-r}; one common factor keeps the equal links equal.
  const double f = std::exp(-r * std::log(n + 1.0));
  TailBoundCheck c;
  c.lhs = tail_sum_power(r, n);
  c.chain = {c.lhs, f * (r + n) / (r - 1.0), f * (2.0 * r - 1.0) / (r - 1.0), f * (2.0 + 1.0 / n),
             3.0 * f};
  c.rhs = c.chain[4];
  c.chain_holds = c.chain[0] < c.chain[1];
  for (std::size_t i = 1; i + 1 < c.chain.size(); ++i) {
    c.chain_holds = c.chain_holds && c.chain[i] <= c.chain[i + 1] * (1.0 + kChainSlack);
  }
  c.holds = c.lhs < c.rhs;
  return c;
}

RegimeCheck convergence_regime_check(int n, double r) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(r > 0.0)) throw DomainError("r must be positive");
  RegimeCheck c;
  c.lhs = thm1_factor(n, r);
  c.rhs = std::exp(-r / (n + 1.0));
  c.holds = c.lhs <= c.rhs;
  return c;
}

ClassSpec sweep_class(Setting setting, double r, Exponent p, const PhaseSeq& phases) {
  if (setting == Setting::UniformOnWp) {
    return ClassSpec{SmoothnessSeq::power_law(r), phases, p, Metric::uniform()};
  }
  return ClassSpec{SmoothnessSeq::power_law(r), phases, Exponent(1.0), Metric::lp(p)};
}

std::vector<SweepPoint> multiple_grid(const std::vector<int>& ns, const std::vector<double>& multipliers) {
  std::vector<SweepPoint> grid;
  for (int n : ns) {
    for (double c : multipliers) grid.push_back({n, c * (n + 1.0)});
  }
  return grid;
}

SweepResult remainder_sweep(SweepKind kind, Setting setting, const std::vector<SweepPoint>& grid,
                            Exponent p, const PhaseSeq& phases, const QuadratureConfig& cfg,
                            int threads) {
  if (grid.empty()) throw DomainError("remainder_sweep: empty grid");
  if (kind == SweepKind::Stechkin && (setting != Setting::UniformOnWp || !p.is_infinite())) {
    throw DomainError("the elliptic sweep is defined for the uniform metric with p = inf");
  }
  for (const auto& pt : grid) {
    if (pt.n < 1) throw DomainError("remainder_sweep: n must be >= 1");
    if (kind == SweepKind::Thm1 && !(pt.r >= pt.n + 1.0)) {
      throw DomainError("remainder_sweep: Theorem 1 points need r >= n + 1");
    }
  }

  std::vector<SweepPoint> order = grid;
  std::stable_sort(order.begin(), order.end(), [](const SweepPoint& a, const SweepPoint& b) {
    return a.n != b.n ? a.n < b.n : a.r < b.r;
  });

  auto evaluate = [&](const SweepPoint& pt) {
    const ClassSpec spec = sweep_class(setting, pt.r, p, phases);
    const ErrorReport exact = eps_exact(spec, pt.n, cfg);
    const AsymptoticEstimate lead = kind == SweepKind::Thm1
                                        ? leading_thm1(pt.n, pt.r, p, setting)
                                        : leading_stechkin_elliptic(pt.n, pt.r);
    // Differences are formed relative to n^{-r} so large r cannot underflow.
    const double np = n_pow(pt.n, pt.r);
    const double diff = exact.scaled_value - lead.leading / np;
    const double tely = std::exp(-pt.r * std::log1p(2.0 / pt.n));
    return RemainderDiagnostic{setting,          pt.n,
                               pt.r,             p,
                               exact.q,          exact.value,
                               lead.leading,     lead.remainder_scale,
                               diff / (lead.remainder_scale / np),
                               diff / tely,      exact.quadrature_error};
  };

  std::vector<std::optional<RemainderDiagnostic>> slots(order.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < order.size(); i = next++) {
      try {
        slots[i] = evaluate(order[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int count = std::clamp<int>(threads, 1, static_cast<int>(order.size()));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult result;
  for (auto& slot : slots) {
    result.rows.push_back(*slot);
    result.max_abs_O1 = std::max(result.max_abs_O1, std::abs(slot->implied_O1));
    result.max_abs_telyakovskii = std::max(result.max_abs_telyakovskii, std::abs(slot->telyakovskii_O1));
  }
  return result;
}

}  // namespace fcb
