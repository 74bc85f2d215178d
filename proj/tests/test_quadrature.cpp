#include <doctest.h>

#include <cmath>

#include "fcb/errors.hpp"
#include "fcb/quadrature.hpp"
#include "oracles.hpp"

using namespace fcb;
using oracle::kPi;

namespace {

PeriodicFunction fn(RealFunction f, int freq = 1) {
  PeriodicFunction p;
  p.eval = std::move(f);
  p.frequency_hint = freq;
  return p;
}

const Exponent kOne(1.0);
const Exponent kTwo(2.0);
const Exponent kInf = Exponent::infinity();

}  // namespace

TEST_CASE("norms of shifted cosines") {
  for (int n : {1, 2, 5, 9}) {
    for (double beta : {0.0, 0.5, 1.0, 1.7}) {
      auto f = fn([=](double t) { return std::cos(n * t - beta * kPi / 2); }, n);
      CHECK(std::abs(lq_norm(f, kOne).value - 4.0) <= 1e-10);
      CHECK(std::abs(lq_norm(f, kTwo).value - std::sqrt(kPi)) <= 1e-11);
      CHECK(std::abs(lq_norm(f, kInf).value - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("signed integrals") {
  CHECK(std::abs(integrate(fn([](double t) { return std::sin(t); })).value) <= 1e-13);
  CHECK(std::abs(integrate(fn([](double t) { return std::cos(t) * std::cos(t); })).value - kPi) <= 1e-12);
}

TEST_CASE("norm of |t|^{-1/3}: graded breakpoint handles an integrable singularity") {
  PeriodicFunction f = fn([](double t) { return t == 0.0 ? 0.0 : std::pow(std::abs(t), -1.0 / 3.0); });
  f.breakpoints = {0.0};
  // ∫_{-π}^{π} |t|^{-1/3} dt = 3 π^{2/3}
  CHECK(std::abs(lq_norm(f, kOne).value - 3.0 * std::pow(kPi, 2.0 / 3.0)) <= 1e-10);
}

TEST_CASE("Hölder monotonicity of normalised norms") {
  const std::vector<RealFunction> fs = {
      [](double t) { return std::cos(t) + 0.3 * std::sin(3 * t); },
      [](double t) { return std::exp(std::cos(t)) - 1.2; },
      [](double t) { return std::abs(std::sin(2 * t)) - 0.5; }};
  for (const auto& f : fs) {
    double prev = 0.0;
    for (double q : {1.0, 1.5, 2.0, 3.0, 4.0, 7.5}) {
      const double v = lq_norm(fn(f, 3), Exponent(q)).value * std::pow(2 * kPi, -1.0 / q);
      CHECK(v >= prev - 1e-10);
      prev = v;
    }
    CHECK(lq_norm(fn(f, 3), kInf).value >= prev - 1e-10);
  }
}

TEST_CASE("scaling and translation invariance") {
  auto base = [](double t) { return std::cos(2 * t) - 0.4 * std::sin(5 * t) + 0.1; };
  for (double q : {1.0, 1.5, 2.0, 3.0}) {
    const double ref = lq_norm(fn(base, 5), Exponent(q)).value;
    for (double c : {-2.0, 0.5}) {
      CHECK(std::abs(lq_norm(fn([=](double t) { return c * base(t); }, 5), Exponent(q)).value -
                     std::abs(c) * ref) <= 1e-10 * ref);
    }
    for (double s : {0.3, 1.7}) {
      CHECK(std::abs(lq_norm(fn([=](double t) { return base(t + s); }, 5), Exponent(q)).value - ref) <=
            1e-10 * ref);
    }
  }
}

TEST_CASE("Parseval for trigonometric polynomials") {
  const double a0 = 0.7;
  const double a[] = {1.0, -0.5, 0.0, 0.25};
  const double b[] = {0.3, 0.0, -0.8, 0.1};
  auto f = [&](double t) {
    double v = a0 / 2;
    for (int k = 1; k <= 4; ++k) v += a[k - 1] * std::cos(k * t) + b[k - 1] * std::sin(k * t);
    return v;
  };
  double energy = 2 * kPi * a0 * a0 / 4;
  for (int k = 0; k < 4; ++k) energy += kPi * (a[k] * a[k] + b[k] * b[k]);
  CHECK(std::abs(lq_norm(fn(f, 4), kTwo).value - std::sqrt(energy)) <= 1e-12);
}

TEST_CASE("L1 norm of a kinked function agrees with Simpson over exact pieces") {
  auto f = [](double t) { return std::cos(3 * t) + 0.2; };
  const double z = std::acos(-0.2) / 3;  // first positive root
  const double ref = 2 * 3 *
                     (oracle::simpson([&](double t) { return std::abs(f(t)); }, 0, z, 1e-14) +
                      oracle::simpson([&](double t) { return std::abs(f(t)); }, z, kPi / 3, 1e-14));
  CHECK(std::abs(lq_norm(fn(f, 3), kOne).value - ref) <= 1e-10);
}

TEST_CASE("sup norm finds a narrow peak between samples") {
  auto f = [](double t) { return 1.0 / (1.0 + 1e6 * (t - 0.123456) * (t - 0.123456)); };
  CHECK(std::abs(lq_norm(fn(f, 1), kInf).value - 1.0) <= 1e-10);
}

TEST_CASE("exponent handling") {
  CHECK(Exponent(1.0).conjugate().is_infinite());
  CHECK(Exponent::infinity().conjugate() == Exponent(1.0));
  CHECK(Exponent(4.0).conjugate().value() == doctest::Approx(4.0 / 3.0));
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("2.5").value() == 2.5);
  CHECK_THROWS_AS(Exponent(0.5), DomainError);
  CHECK_THROWS_AS(Exponent::parse("abc"), DomainError);
  CHECK_THROWS_AS(Exponent::parse("2x"), DomainError);
}

TEST_CASE("configuration validation and tolerance failures") {
  QuadratureConfig bad;
  bad.base_panels = 4;
  CHECK_THROWS_AS(lq_norm(fn([](double t) { return std::cos(t); }), kOne, bad), DomainError);
  bad = {};
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate(fn([](double t) { return std::cos(t); }), bad), DomainError);

  QuadratureConfig tiny;
  tiny.rel_tol = 1e-30;
  tiny.abs_tol = 1e-30;
  CHECK_THROWS_AS(integrate(fn([](double t) { return 2.0 + std::cos(t); }), tiny), ToleranceError);

  // Non-convergent within the depth budget: a jump not declared as a breakpoint.
  QuadratureConfig shallow;
  shallow.max_depth = 2;
  shallow.rel_tol = 1e-14;
  shallow.abs_tol = 1e-14;
  try {
    integrate(fn([](double t) { return t < 0.1 ? 1.0 : 0.0; }), shallow);
    FAIL("expected ToleranceError");
  } catch (const ToleranceError& e) {
    CHECK(e.best_error() > 0.0);
    CHECK(std::abs(e.best_value() - (0.1 + kPi)) < 1e-2);
  }
}

TEST_CASE("wrap_to_period and sign changes") {
  CHECK(wrap_to_period(0.001) == 0.001);
  CHECK(std::abs(wrap_to_period(3 * kPi + 0.5) - (-kPi + 0.5)) <= 1e-14);
  CHECK(wrap_to_period(kPi) == -kPi);
  const auto roots = find_sign_changes([](double t) { return std::cos(2 * t); }, -kPi, kPi, 100);
  REQUIRE(roots.size() == 4);
  CHECK(std::abs(roots[0] + 3 * kPi / 4) <= 1e-14);
  CHECK(std::abs(roots[3] - 3 * kPi / 4) <= 1e-14);
}

TEST_CASE("tolerance below the evaluation noise") {
  PeriodicFunction noisy{[](double t) { return std::sin(t); }, {}, 1, 1e-8};
  QuadratureConfig cfg;
  CHECK_THROWS_AS(integrate(noisy, cfg), ToleranceError);
  cfg.abs_tol = 1e-6;
  const NormResult r = integrate(noisy, cfg);
  CHECK(std::abs(r.value) <= 1e-12);
  CHECK(r.error_estimate >= 2.0 * 3.141592653589793 * 1e-8);
}
