#include <doctest.h>

#include <cmath>

#include "fcb/errors.hpp"
#include "fcb/kernels.hpp"
#include "oracles.hpp"

using namespace fcb;
using oracle::kPi;

namespace {

// Brute-force alternating sum Σ_{k>=2} (-1)^k k^{-3} to 10^6 terms, bracket < 1e-18.
constexpr double kAlternatingCubes = 0.098457322630304295;
// (4/π) Σ_j (-1)^j ((2j+1)n)^{-r}/(2j+1): sgn(cos nt) convolved with the tail at n, β = 0.
constexpr double kSgnCosR2N1 = 1.23370055013617;
constexpr double kSgnCosR4N2 = 0.079271721219077509;
constexpr double kSgnCosR4N3 = 0.015658611598830124;

TailKernel power_kernel(double r, double beta, int n) {
  return TailKernel(SmoothnessSeq::power_law(r), PhaseSeq::stationary(beta), n);
}

}  // namespace

TEST_CASE("sequence construction and validation") {
  CHECK_THROWS_AS(SmoothnessSeq::power_law(0.5), DomainError);
  CHECK_THROWS_AS(SmoothnessSeq::power_law(std::nan("")), DomainError);
  CHECK_FALSE(SmoothnessSeq::power_law(1.0).summable());
  CHECK(SmoothnessSeq::power_law(1.01).summable());
  CHECK_THROWS_AS(SmoothnessSeq::explicit_values({}, SmoothnessSeq::GeometricTail{0.5}), DomainError);
  CHECK_THROWS_AS(SmoothnessSeq::explicit_values({1.0, -0.1}, SmoothnessSeq::GeometricTail{0.5}),
                  DomainError);
  CHECK_THROWS_AS(SmoothnessSeq::explicit_values({1.0}, SmoothnessSeq::GeometricTail{1.0}), DomainError);
  CHECK_THROWS_AS(SmoothnessSeq::explicit_values({1.0}, SmoothnessSeq::PowerTail{1.0}), DomainError);

  const auto geo = SmoothnessSeq::explicit_values({1.0, 0.5, 0.2}, SmoothnessSeq::GeometricTail{0.5});
  CHECK(geo(2) == 0.5);
  CHECK(geo(5) == doctest::Approx(0.05));
  CHECK(geo.tail_sum_bound(1) == doctest::Approx(0.5 + 0.2 + 0.2));
  const auto pow_tail = SmoothnessSeq::explicit_values({1.0, 0.25}, SmoothnessSeq::PowerTail{2.0});
  CHECK(pow_tail(4) == doctest::Approx(0.0625));
  CHECK_THROWS_AS(geo(0), DomainError);

  const auto phases = PhaseSeq::explicit_values({0.5, 1.0}, 2.0);
  CHECK(phases(1) == 0.5);
  CHECK(phases(3) == 2.0);
  CHECK_THROWS_AS(PhaseSeq::stationary(INFINITY), DomainError);
  CHECK_THROWS_AS(power_kernel(2.0, 0.0, 0), DomainError);
}

TEST_CASE("class spec validation") {
  const auto psi = SmoothnessSeq::power_law(2.0);
  const auto beta = PhaseSeq::stationary(0.0);
  const ClassSpec sup{psi, beta, Exponent(3.0), Metric::uniform()};
  const ClassSpec l2{psi, beta, Exponent(1.0), Metric::lp(Exponent(2.0))};
  const ClassSpec outside{psi, beta, Exponent(2.0), Metric::lp(Exponent(2.0))};
  CHECK_NOTHROW(sup.validate());
  CHECK_NOTHROW(l2.validate());
  CHECK_THROWS_AS(outside.validate(), DomainError);
  CHECK_THROWS_AS(Metric::uniform().target(), DomainError);
}

TEST_CASE("pointwise examples") {
  CHECK(std::abs(eval_tail_kernel(power_kernel(2.0, 0.0, 1), 0.0, 1e-12) - kPi * kPi / 6) <= 1e-12);
  CHECK(std::abs(eval_tail_kernel(power_kernel(4.0, 1.0, 1), 0.0, 1e-12)) <= 1e-14);
  CHECK(std::abs(eval_tail_kernel(power_kernel(3.0, 0.0, 2), kPi, 1e-12) - kAlternatingCubes) <= 1e-12);
  CHECK_THROWS_AS(eval_tail_kernel(power_kernel(1.0, 0.0, 1), 0.5, 1e-12), DomainError);
  CHECK_THROWS_AS(eval_tail_kernel(power_kernel(2.0, 0.0, 1), 0.5, 1e-30), ToleranceError);
}

TEST_CASE("tail kernel matches brute-force sums across routes") {
  // Small r goes through the polylogarithm, large r through direct summation.
  for (double r : {1.1, 1.5, 2.0, 3.0, 4.0, 7.0, 12.0}) {
    for (int n : {1, 2, 5}) {
      for (double beta : {0.0, 0.5, -0.3}) {
        const TailKernel k = power_kernel(r, beta, n);
        for (double t : {0.05, 0.7, 2.0, -1.3, 3.1}) {
          const auto ref = oracle::tail_kernel(r, beta, n, t, 100000);
          const KernelValue v = k.evaluate(t);
          CHECK_MESSAGE(v.value >= ref.lo - v.error - 1e-13, "r=" << r << " n=" << n << " t=" << t);
          CHECK_MESSAGE(v.value <= ref.hi + v.error + 1e-13, "r=" << r << " n=" << n << " t=" << t);
        }
      }
    }
  }
}

TEST_CASE("explicit sequences with geometric and power tails") {
  const auto geo = SmoothnessSeq::explicit_values({1.0, 0.3, 0.2}, SmoothnessSeq::GeometricTail{0.6});
  const TailKernel k(geo, PhaseSeq::stationary(0.0), 2);
  for (double t : {0.0, 0.4, 2.2}) {
    double sum = 0.0;
    for (int j = 2000; j >= 2; --j) sum += geo(j) * std::cos(j * t);
    CHECK(std::abs(k.evaluate(t).value - sum) <= 1e-13);
  }
  const auto pw = SmoothnessSeq::explicit_values({1.0, 0.3}, SmoothnessSeq::PowerTail{3.0});
  const TailKernel kp(pw, PhaseSeq::explicit_values({0.0, 1.0, 0.5}, 0.0), 1);
  for (double t : {0.3, 1.9}) {
    // ψ(k) = 0.3 (k/2)^{-3} for k >= 2; explicit phases for k <= 3.
    double sum = std::cos(t) + 0.3 * std::cos(2 * t - kPi / 2) + 0.3 * std::pow(1.5, -3) * std::cos(3 * t - kPi / 4);
    const auto rest = oracle::tail_kernel(3.0, 0.0, 4, t, 400000);
    sum += 0.3 * 8.0 * rest.mid();
    CHECK(std::abs(kp.evaluate(t).value - sum) <= 0.3 * 8.0 * rest.width() + 1e-12);
  }
}

TEST_CASE("zero mean, parity and monotonicity in n") {
  for (double r : {1.5, 3.0}) {
    for (int n : {1, 4}) {
      const TailKernel k0 = power_kernel(r, 0.0, n);
      const TailKernel k1 = power_kernel(r, 1.0, n);
      // The polylogarithm route carries ~1e-12 evaluation noise; ask for what it can deliver.
      QuadratureConfig cfg;
      cfg.abs_tol = 1e-10;
      CHECK(std::abs(integrate(k0.scaled_function(), cfg).value) <= 1e-9);
      CHECK(std::abs(integrate(k1.scaled_function(), cfg).value) <= 1e-9);
      CHECK_THROWS_AS(integrate(k0.scaled_function(), QuadratureConfig{1e-11, 1e-16}), ToleranceError);
      for (int i = 1; i < 40; ++i) {
        const double t = kPi * i / 40;
        CHECK(std::abs(k0.evaluate(t).value - k0.evaluate(-t).value) <= 1e-12);
        CHECK(std::abs(k1.evaluate(t).value + k1.evaluate(-t).value) <= 1e-12);
      }
    }
  }
  for (Exponent q : {Exponent(1.0), Exponent(2.0), Exponent::infinity()}) {
    double prev = INFINITY;
    for (int n = 1; n <= 5; ++n) {
      const TailKernel k = power_kernel(3.0, 0.0, n);
      const double norm = lq_norm(k.scaled_function(), q).value * k.scale();
      CHECK(norm < prev);
      prev = norm;
    }
  }
}

TEST_CASE("Fourier partial sums") {
  Spectrum mean_free;
  mean_free.a = {1.0, 2.0};
  CHECK(fourier_partial_sum(mean_free, 1, 0.7) == 0.0);
  Spectrum cosine;
  cosine.a = {1.0};
  CHECK(fourier_partial_sum(cosine, 2, 0.0) == 1.0);
  CHECK_THROWS_AS(fourier_partial_sum(cosine, 0, 0.0), DomainError);

  // φ = cos(n·) convolved with the full kernel lies entirely in frequency n,
  // so its partial sum of order n - 1 vanishes.
  for (int n : {1, 3}) {
    Spectrum phi;
    phi.a.assign(static_cast<std::size_t>(n), 0.0);
    phi.a.back() = 1.0;
    const Spectrum kernel = kernel_spectrum(SmoothnessSeq::power_law(2.0), PhaseSeq::stationary(0.3), 8);
    const Spectrum f = convolve_spectra(kernel, phi);
    for (double t : {0.0, 1.1}) CHECK(fourier_partial_sum(f, n, t) == doctest::Approx(0.0).scale(1e-15));
    CHECK(f.a[static_cast<std::size_t>(n - 1)] == doctest::Approx(std::pow(n, -2.0) * std::cos(0.15 * kPi)));
  }
}

TEST_CASE("series split additivity") {
  for (double beta : {0.0, 0.4, 1.0}) {
    const TailKernel full = power_kernel(2.5, beta, 1);
    for (int n : {2, 4, 7}) {
      const TailKernel tail = power_kernel(2.5, beta, n);
      const Spectrum head = kernel_spectrum(SmoothnessSeq::power_law(2.5), PhaseSeq::stationary(beta), n - 1);
      for (double t : {0.2, 1.4, -2.9}) {
        CHECK(std::abs(fourier_partial_sum(head, n, t) + tail.evaluate(t).value - full.evaluate(t).value) <=
              2e-12);
      }
    }
  }
}

TEST_CASE("convolution examples") {
  const TailKernel full = power_kernel(3.0, 0.0, 1);
  Density zero;
  zero.f = PeriodicFunction{[](double) { return 0.0; }, {}, 1, 0.0};
  CHECK(convolve_with_phi(full, zero, 0.3, 1e-12).value == 0.0);

  for (double beta : {0.0, 0.5, 1.0}) {
    const TailKernel k = power_kernel(3.0, beta, 1);
    for (int m = 1; m <= 3; ++m) {
      Density phi;
      phi.f = PeriodicFunction{[m](double u) { return std::cos(m * u); }, {}, m, 0.0};
      phi.l1_bound = 4.0;
      for (double x : {0.0, 1.2}) {
        const double v = convolve_with_phi(k, phi, x, 1e-10).value;
        CHECK(std::abs(v - std::pow(m, -3.0) * std::cos(m * x - beta * kPi / 2)) <= 1e-10);
      }
    }
  }

  const struct {
    double r;
    int n;
    double expect;
  } cases[] = {{2.0, 1, kSgnCosR2N1}, {4.0, 2, kSgnCosR4N2}, {4.0, 3, kSgnCosR4N3}};
  for (const auto& c : cases) {
    const TailKernel k = power_kernel(c.r, 0.0, c.n);
    Density phi;
    const int n = c.n;
    phi.f.eval = [n](double u) { return std::cos(n * u) >= 0.0 ? 1.0 : -1.0; };
    for (int j = 0; j < 2 * n; ++j) phi.f.breakpoints.push_back((j + 0.5) * kPi / n);
    phi.f.frequency_hint = n;
    CHECK(std::abs(convolve_with_phi(k, phi, 0.0, 1e-10).value - c.expect) <= 1e-10);
  }
}
