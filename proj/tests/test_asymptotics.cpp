#include <doctest.h>

#include <cmath>

#include "fcb/asymptotics.hpp"
#include "fcb/errors.hpp"
#include "oracles.hpp"

using namespace fcb;
using oracle::kPi;

namespace {

// K(e^{-1}) by adaptive Simpson of ∫_0^{π/2} (1 - q² sin² x)^{-1/2} dx.
constexpr double kEllipticKInvE = 1.6284126784495678;

}  // namespace

TEST_CASE("logarithmic leading terms") {
  const auto k = leading_kolmogorov(2, 1.0);
  CHECK(k.formula_id == FormulaId::Kolmogorov4);
  CHECK(k.leading == doctest::Approx(4.0 / (kPi * kPi) * std::log(2.0) / 2.0).epsilon(1e-15));
  CHECK(k.remainder_scale == doctest::Approx(0.5));
  CHECK(leading_kolmogorov(3, 2.0).leading == doctest::Approx(4.0 / (kPi * kPi) * std::log(3.0) / 9.0));
  const auto nik = leading_nikolskii(3, 2.0);
  CHECK(nik.formula_id == FormulaId::Nikolskii5);
  CHECK(nik.leading == leading_kolmogorov(3, 2.0).leading);
  CHECK_THROWS_AS(leading_kolmogorov(1, 2.0), DomainError);
  CHECK_THROWS_AS(leading_kolmogorov(2, 0.0), DomainError);
}

TEST_CASE("elliptic leading term") {
  const auto e = leading_stechkin_elliptic(2, 2.0);
  CHECK(e.formula_id == FormulaId::Stechkin6);
  CHECK(e.leading == doctest::Approx(0.25 * 8.0 / (kPi * kPi) * kEllipticKInvE).epsilon(1e-13));
  CHECK(e.remainder_scale == doctest::Approx(0.125));
  CHECK(leading_stechkin_elliptic(2, 2.0, FormulaId::Stechkin9).formula_id == FormulaId::Stechkin9);
  CHECK_THROWS_AS(leading_stechkin_elliptic(2, 2.0, FormulaId::Kolmogorov4), DomainError);
  CHECK_THROWS_AS(leading_stechkin_elliptic(2, 0.9), DomainError);

  // Large r/n recovers 4/π; the scaled estimate grows as r/n shrinks.
  const auto far = leading_stechkin_elliptic(1, 60.0);
  CHECK(far.leading * 1.0 == doctest::Approx(4.0 / kPi).epsilon(1e-12));
  double prev = 0.0;
  for (double r : {40.0, 20.0, 10.0, 5.0, 2.0, 1.0}) {
    const double scaled = leading_stechkin_elliptic(4, r).leading * std::pow(4.0, r);
    CHECK(scaled > prev);
    prev = scaled;
  }
}

TEST_CASE("Theorem 1 leading terms") {
  const auto inf = leading_thm1(3, 12.0, Exponent::infinity(), Setting::UniformOnWp);
  CHECK(inf.formula_id == FormulaId::Stechkin8);
  CHECK(inf.leading * std::pow(3.0, 12.0) == doctest::Approx(4.0 / kPi).epsilon(1e-14));
  CHECK(inf.remainder_scale == doctest::Approx(std::pow(3.0, -12.0) * std::pow(4.0 / 3.0, -12.0)));
  CHECK(inf.in_hypothesis);

  const auto two = leading_thm1(2, 3.0, Exponent(2.0), Setting::UniformOnWp);
  CHECK(two.formula_id == FormulaId::Corollary1);
  CHECK(two.leading * 8.0 == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));

  const auto one = leading_thm1(1, 2.0, Exponent(1.0), Setting::UniformOnWp);
  CHECK(one.formula_id == FormulaId::Thm1_uniform);
  CHECK(one.leading == doctest::Approx(1.0 / kPi));

  CHECK(leading_thm1(1, 2.0, Exponent(1.0), Setting::LpOnW1).formula_id == FormulaId::Stechkin10);
  CHECK(leading_thm1(1, 2.0, Exponent(3.0), Setting::LpOnW1).formula_id == FormulaId::Thm1_L1);
  CHECK(leading_thm1(1, 2.0, Exponent(2.0), Setting::LpOnW1).formula_id == FormulaId::Corollary1);

  const auto outside = leading_thm1(3, 2.0, Exponent::infinity(), Setting::UniformOnWp);
  CHECK_FALSE(outside.in_hypothesis);
  CHECK_THROWS_AS(leading_thm1(0, 2.0, Exponent(2.0), Setting::UniformOnWp), DomainError);
  CHECK(to_string(FormulaId::Thm1_L1) == "Thm1_L1");
}

TEST_CASE("tail bound chain") {
  const auto c = tail_bound_check(1, 2.0);
  CHECK(c.lhs == doctest::Approx(kPi * kPi / 6.0 - 1.0).epsilon(1e-14));
  CHECK(c.rhs == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(c.holds);
  CHECK(c.chain_holds);
  CHECK(tail_bound_check(2, 3.0).holds);

  for (int n = 1; n <= 10; ++n) {
    for (double r : {n + 1.0, n + 2.0, 2.0 * n + 2.0, 5.0 * n}) {
      if (r < n + 1.0) continue;
      const auto t = tail_bound_check(n, r);
      CHECK(t.chain_holds);
      CHECK(t.holds);
      // Independent lhs from a brute-force bracket.
      const auto ref = oracle::power_sum(r, n + 1, 20000);
      CHECK(t.lhs >= ref.lo * (1 - 1e-13));
      CHECK(t.lhs <= ref.hi * (1 + 1e-13));
    }
  }
  CHECK_THROWS_AS(tail_bound_check(3, 3.5), DomainError);
  CHECK_THROWS_AS(tail_bound_check(0, 3.0), DomainError);
}

TEST_CASE("regime inequality") {
  const auto a = convergence_regime_check(1, 2.0);
  CHECK(a.lhs == doctest::Approx(0.25));
  CHECK(a.rhs == doctest::Approx(std::exp(-1.0)));
  CHECK(a.holds);
  const auto b = convergence_regime_check(3, 12.0);
  CHECK(b.lhs == doctest::Approx(std::pow(4.0 / 3.0, -12.0)));
  CHECK(b.holds);
  // Ratio tends to 1 as n grows with r/n fixed.
  double prev = 0.0;
  for (int n : {1, 4, 16, 64, 256, 1024}) {
    const auto c = convergence_regime_check(n, 2.0 * n);
    const double ratio = c.lhs / c.rhs;
    CHECK(ratio > prev);
    CHECK(ratio <= 1.0);
    prev = ratio;
  }
  CHECK(prev > 0.999);
  CHECK_THROWS_AS(convergence_regime_check(1, 0.0), DomainError);
}

TEST_CASE("remainder sweep") {
  const auto beta = PhaseSeq::stationary(0.0);
  const auto grid = multiple_grid({3, 1, 2}, {1.0, 5.0});
  REQUIRE(grid.size() == 6);
  CHECK(grid[0].n == 3);
  CHECK(grid[0].r == 4.0);

  const auto single = remainder_sweep(SweepKind::Thm1, Setting::UniformOnWp, grid, Exponent(2.0), beta, {}, 1);
  const auto multi = remainder_sweep(SweepKind::Thm1, Setting::UniformOnWp, grid, Exponent(2.0), beta, {}, 4);
  REQUIRE(single.rows.size() == 6);
  for (std::size_t i = 0; i < single.rows.size(); ++i) {
    CHECK(single.rows[i].n == multi.rows[i].n);
    CHECK(single.rows[i].r == multi.rows[i].r);
    CHECK(single.rows[i].exact == multi.rows[i].exact);
    CHECK(single.rows[i].implied_O1 == multi.rows[i].implied_O1);
    if (i > 0) {
      const auto& a = single.rows[i - 1];
      const auto& b = single.rows[i];
      CHECK((a.n < b.n || (a.n == b.n && a.r < b.r)));
    }
  }
  CHECK(single.max_abs_O1 == multi.max_abs_O1);
  CHECK(single.max_abs_O1 <= 3.0);

  for (const auto& row : single.rows) {
    CHECK(row.q == Exponent(2.0));
    CHECK(row.leading == doctest::Approx(std::pow(row.n, -row.r) / std::sqrt(kPi)).epsilon(1e-14));
    const double expect = (row.exact - row.leading) / row.remainder_scale;
    CHECK(row.implied_O1 == doctest::Approx(expect).epsilon(1e-9));
    CHECK(std::isfinite(row.telyakovskii_O1));
  }

  const auto lp = remainder_sweep(SweepKind::Thm1, Setting::LpOnW1, multiple_grid({1, 2}, {10.0}),
                                  Exponent::infinity(), beta);
  CHECK(lp.rows[0].q == Exponent::infinity());
  CHECK(lp.max_abs_O1 <= 3.0);

  const auto st = remainder_sweep(SweepKind::Stechkin, Setting::UniformOnWp, {{2, 1.25}, {2, 3.0}},
                                  Exponent::infinity(), beta);
  CHECK(st.rows.size() == 2);
  CHECK(st.max_abs_O1 < 10.0);

  CHECK_THROWS_AS(remainder_sweep(SweepKind::Thm1, Setting::UniformOnWp, {}, Exponent(2.0), beta),
                  DomainError);
  CHECK_THROWS_AS(remainder_sweep(SweepKind::Thm1, Setting::UniformOnWp, {{3, 3.0}}, Exponent(2.0), beta),
                  DomainError);
  CHECK_THROWS_AS(remainder_sweep(SweepKind::Stechkin, Setting::UniformOnWp, {{2, 3.0}}, Exponent(2.0), beta),
                  DomainError);
  // Failures inside workers surface to the caller.
  CHECK_THROWS_AS(remainder_sweep(SweepKind::Stechkin, Setting::UniformOnWp, {{2, 3.0}, {2, 1.0}},
                                  Exponent::infinity(), beta, {}, 2),
                  DomainError);
}
