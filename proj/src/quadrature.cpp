#include "fcb/quadrature.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "fcb/errors.hpp"

namespace fcb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kGaussOrder = 10;
constexpr std::size_t kMaxSegments = 400000;

struct GaussRule {
  std::array<double, kGaussOrder> x{};
  std::array<double, kGaussOrder> w{};
};

// Newton iteration on P_n from the Chebyshev initial guesses.
GaussRule make_gauss_rule() {
  GaussRule rule;
  constexpr int n = kGaussOrder;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.x[i] = x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

enum class Grade { None, Left, Right };

struct Panel {
  double a;
  double b;
  Grade grade;
};

struct Segment {
  std::size_t panel;
  double u0;
  double u1;
  int depth;
  double left;   // Gauss value on [u0, mid]
  double right;  // Gauss value on [mid, u1]
  double error;
  bool alive;
};

class AdaptiveIntegrator {
 public:
  /// `noise_floor` bounds the integral's error from inexact evaluations of f;
  /// asking for less than that fails immediately.
  AdaptiveIntegrator(const RealFunction& f, const QuadratureConfig& cfg, double noise_floor = 0.0)
      : f_(f), cfg_(cfg), noise_floor_(noise_floor) {}

  NormResult run(const std::vector<Panel>& panels) {
    panels_ = &panels;
    segments_.clear();
    segments_.reserve(panels.size() * 4);
    for (std::size_t p = 0; p < panels.size(); ++p) {
      const double whole = gauss(p, 0.0, 1.0);
      push_segment(p, 0.0, 1.0, 0, whole);
    }

    auto cmp = [this](std::size_t i, std::size_t j) {
      return segments_[i].error < segments_[j].error;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);
    for (std::size_t i = 0; i < segments_.size(); ++i) heap.push(i);

    double total = 0.0;
    double total_err = 0.0;
    recompute(total, total_err);
    long since_recompute = 0;

    while (total_err > tolerance(total)) {
      if (tolerance(total) < 4.0 * std::numeric_limits<double>::epsilon() * std::abs(total)) {
        throw ToleranceError("quadrature: tolerance below double precision", total, total_err);
      }
      if (tolerance(total) < noise_floor_) {
        throw ToleranceError("quadrature: tolerance below the evaluation noise", total, total_err + noise_floor_);
      }
      if (heap.empty()) {
        throw ToleranceError("quadrature: maximum subdivision depth reached", total, total_err);
      }
      if (segments_.size() > kMaxSegments) {
        throw ToleranceError("quadrature: segment budget exhausted", total, total_err);
      }
      const std::size_t idx = heap.top();
      heap.pop();
      Segment s = segments_[idx];
      if (s.depth >= cfg_.max_depth) continue;  // frozen; its error stays in the total
      segments_[idx].alive = false;
      const double mid = 0.5 * (s.u0 + s.u1);
      const std::size_t first = push_segment(s.panel, s.u0, mid, s.depth + 1, s.left);
      const std::size_t second = push_segment(s.panel, mid, s.u1, s.depth + 1, s.right);
      heap.push(first);
      heap.push(second);

      total += segments_[first].left + segments_[first].right + segments_[second].left +
               segments_[second].right - s.left - s.right;
      total_err += segments_[first].error + segments_[second].error - s.error;
      if (++since_recompute == 256) {
        recompute(total, total_err);
        since_recompute = 0;
      }
    }
    recompute(total, total_err);
    if (tolerance(total) < noise_floor_) {
      throw ToleranceError("quadrature: tolerance below the evaluation noise", total, total_err + noise_floor_);
    }
    return NormResult{total, total_err, evaluations_};
  }

 private:
  double tolerance(double total) const {
    return std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(total));
  }

  std::size_t push_segment(std::size_t panel, double u0, double u1, int depth, double whole) {
    const double mid = 0.5 * (u0 + u1);
    const double left = gauss(panel, u0, mid);
    const double right = gauss(panel, mid, u1);
    segments_.push_back({panel, u0, u1, depth, left, right, std::abs(whole - left - right), true});
    return segments_.size() - 1;
  }

  double gauss(std::size_t panel, double u0, double u1) {
    const Panel& p = (*panels_)[panel];
    const GaussRule& rule = gauss_rule();
    const double half = 0.5 * (u1 - u0);
    const double centre = 0.5 * (u1 + u0);
    const double width = p.b - p.a;
    double sum = 0.0;
    for (int i = 0; i < kGaussOrder; ++i) {
      const double u = centre + half * rule.x[i];
      double t = 0.0;
      double jac = width;
      switch (p.grade) {
        case Grade::None:
          t = p.a + width * u;
          break;
        case Grade::Left:
          t = p.a + width * u * u * u;
          jac = 3.0 * width * u * u;
          break;
        case Grade::Right:
          t = p.b - width * u * u * u;
          jac = 3.0 * width * u * u;
          break;
      }
      sum += rule.w[i] * jac * f_(t);
    }
    evaluations_ += kGaussOrder;
    return sum * half;
  }

  // Compensated summation in panel order keeps the result independent of the
  // refinement history.
  void recompute(double& total, double& total_err) const {
    std::vector<const Segment*> live;
    live.reserve(segments_.size());
    for (const auto& s : segments_)
      if (s.alive) live.push_back(&s);
    std::sort(live.begin(), live.end(), [](const Segment* x, const Segment* y) {
      return x->panel != y->panel ? x->panel < y->panel : x->u0 < y->u0;
    });
    double sum = 0.0;
    double comp = 0.0;
    double err = 0.0;
    for (const Segment* s : live) {
      for (double v : {s->left, s->right}) {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
      }
      err += s->error;
    }
    total = sum + comp;
    total_err = err;
  }

  const RealFunction& f_;
  QuadratureConfig cfg_;
  double noise_floor_;
  const std::vector<Panel>* panels_ = nullptr;
  std::vector<Segment> segments_;
  long evaluations_ = 0;
};

// Uniform partition of [a, b] merged with the breakpoints; panels touching a
// graded point get the cubic substitution toward that point.
std::vector<Panel> build_panels(double a, double b, int base_panels,
                                std::vector<std::pair<double, bool>> points) {
  for (int i = 0; i <= base_panels; ++i) {
    points.emplace_back(a + (b - a) * i / base_panels, false);
  }
  std::sort(points.begin(), points.end());
  std::vector<std::pair<double, bool>> merged;
  const double min_gap = 1e-14 * (b - a);
  for (const auto& [x, graded] : points) {
    if (x < a || x > b) continue;
    if (!merged.empty() && x - merged.back().first <= min_gap) {
      merged.back().second = merged.back().second || graded;
      continue;
    }
    merged.emplace_back(x, graded);
  }
  merged.front().first = a;
  merged.back().first = b;

  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    const auto [x0, g0] = merged[i];
    const auto [x1, g1] = merged[i + 1];
    if (g0 && g1) {
      const double mid = 0.5 * (x0 + x1);
      panels.push_back({x0, mid, Grade::Left});
      panels.push_back({mid, x1, Grade::Right});
    } else if (g0) {
      panels.push_back({x0, x1, Grade::Left});
    } else if (g1) {
      panels.push_back({x0, x1, Grade::Right});
    } else {
      panels.push_back({x0, x1, Grade::None});
    }
  }
  return panels;
}

std::vector<std::pair<double, bool>> periodic_points(const std::vector<double>& breakpoints) {
  std::vector<std::pair<double, bool>> points;
  for (double t : breakpoints) {
    const double w = wrap_to_period(t);
    if (std::abs(w + kPi) < 1e-14) {
      points.emplace_back(-kPi, true);
      points.emplace_back(kPi, true);
    } else {
      points.emplace_back(w, true);
    }
  }
  return points;
}

int scan_resolution(int frequency_hint, int floor_points) {
  const long wanted = 8L * std::max(frequency_hint, 1);
  return static_cast<int>(std::clamp<long>(wanted, floor_points, 1L << 17));
}

double bisect_root(const RealFunction& f, double lo, double hi, double flo) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

NormResult sup_norm(const PeriodicFunction& f) {
  const int n = scan_resolution(2 * f.frequency_hint, 4096);
  std::vector<double> ts(n);
  std::vector<double> vs(n);
  long evals = 0;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    ts[i] = -kPi + kTwoPi * i / n;
    vs[i] = std::abs(f.eval(ts[i]));
    ++evals;
    if (std::isnan(vs[i])) throw DomainError("lq_norm: function returned NaN");
    best = std::max(best, vs[i]);
  }
  for (double t : f.breakpoints) {
    best = std::max(best, std::abs(f.eval(wrap_to_period(t))));
    ++evals;
  }
  if (std::isinf(best)) return {best, 0.0, evals};

  // Local maxima of the cyclic sample sequence, largest first.
  std::vector<int> peaks;
  for (int i = 0; i < n; ++i) {
    const double prev = vs[(i + n - 1) % n];
    const double next = vs[(i + 1) % n];
    if (vs[i] >= prev && vs[i] >= next) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
    return vs[a] != vs[b] ? vs[a] > vs[b] : a < b;
  });
  if (peaks.size() > 5) peaks.resize(5);

  const double h = kTwoPi / n;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i : peaks) {
    double lo = ts[i] - h;
    double hi = ts[i] + h;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = std::abs(f.eval(x1));
    double f2 = std::abs(f.eval(x2));
    evals += 2;
    while (hi - lo > 1e-13) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = std::abs(f.eval(x2));
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = std::abs(f.eval(x1));
      }
      ++evals;
    }
    best = std::max({best, f1, f2});
  }
  return {best, f.pointwise_error + 4.0 * std::numeric_limits<double>::epsilon() * best, evals};
}

bool is_even_integer(double q) {
  return std::floor(q) == q && std::fmod(q, 2.0) == 0.0;
}

}  // namespace

Exponent::Exponent(double q) {
  if (std::isinf(q) && q > 0) {
    infinite_ = true;
    q_ = 0.0;
    return;
  }
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("exponent must lie in [1, inf]");
  q_ = q;
}

Exponent Exponent::infinity() {
  Exponent e;
  e.infinite_ = true;
  e.q_ = 0.0;
  return e;
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return infinity();
  double q = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, q);
  if (ec != std::errc() || ptr != end) {
    throw DomainError("cannot parse exponent '" + std::string(text) + "'");
  }
  return Exponent(q);
}

double Exponent::value() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : q_;
}

Exponent Exponent::conjugate() const {
  if (infinite_) return Exponent(1.0);
  if (q_ == 1.0) return infinity();
  return Exponent(q_ / (q_ - 1.0));
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), q_);
  return std::string(buf.data(), ptr);
}

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
  if (max_depth < 1) throw DomainError("max_depth must be at least 1");
  if (base_panels < 8) throw DomainError("base_panels must be at least 8");
}

double wrap_to_period(double t) {
  // Leave in-range arguments untouched: small t must keep its relative accuracy.
  if (t >= -kPi && t < kPi) return t;
  double w = std::fmod(t + kPi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  w -= kPi;
  return w >= kPi ? -kPi : w;
}

std::vector<double> find_sign_changes(const RealFunction& f, double a, double b, int scan_points) {
  std::vector<double> roots;
  if (scan_points < 2 || !(b > a)) return roots;
  double t_prev = a;
  double f_prev = f(a);
  if (f_prev == 0.0) roots.push_back(a);
  for (int i = 1; i <= scan_points; ++i) {
    const double t = i == scan_points ? b : a + (b - a) * i / scan_points;
    const double ft = f(t);
    if (ft == 0.0) {
      roots.push_back(t);
    } else if (std::isfinite(ft) && std::isfinite(f_prev) && f_prev != 0.0 &&
               (ft > 0.0) != (f_prev > 0.0)) {
      roots.push_back(bisect_root(f, t_prev, t, f_prev));
    }
    t_prev = t;
    f_prev = ft;
  }
  return roots;
}

NormResult integrate_interval(const RealFunction& f, double a, double b, const QuadratureConfig& cfg,
                              const std::vector<double>& singular) {
  cfg.validate();
  if (!(b > a)) throw DomainError("integrate_interval: empty interval");
  std::vector<std::pair<double, bool>> points;
  for (double s : singular) {
    if (s >= a && s <= b) points.emplace_back(s, true);
  }
  AdaptiveIntegrator integrator(f, cfg);
  return integrator.run(build_panels(a, b, cfg.base_panels, std::move(points)));
}

NormResult integrate(const PeriodicFunction& f, const QuadratureConfig& cfg) {
  cfg.validate();
  AdaptiveIntegrator integrator(f.eval, cfg, kTwoPi * f.pointwise_error);
  NormResult r = integrator.run(build_panels(-kPi, kPi, cfg.base_panels, periodic_points(f.breakpoints)));
  r.error_estimate += kTwoPi * f.pointwise_error;
  return r;
}

NormResult lq_norm(const PeriodicFunction& f, Exponent q, const QuadratureConfig& cfg) {
  cfg.validate();
  if (q.is_infinite()) return sup_norm(f);

  const double qv = q.value();
  auto points = periodic_points(f.breakpoints);
  long scan_evals = 0;
  if (!is_even_integer(qv)) {
    const int scan = scan_resolution(f.frequency_hint, 1024);
    for (double root : find_sign_changes(f.eval, -kPi, kPi, scan)) {
      points.emplace_back(root, true);
    }
    scan_evals = scan + 1;
  }

  RealFunction power;
  if (qv == 1.0) {
    power = [&f](double t) { return std::abs(f.eval(t)); };
  } else if (qv == 2.0) {
    power = [&f](double t) {
      const double v = f.eval(t);
      return v * v;
    };
  } else {
    power = [&f, qv](double t) { return std::pow(std::abs(f.eval(t)), qv); };
  }

  AdaptiveIntegrator integrator(power, cfg);
  const NormResult integral = integrator.run(build_panels(-kPi, kPi, cfg.base_panels, std::move(points)));
  const double value = std::pow(std::max(integral.value, 0.0), 1.0 / qv);
  double err = value > 0.0 ? std::pow(value, 1.0 - qv) / qv * integral.error_estimate
                           : std::pow(integral.error_estimate, 1.0 / qv);
  err += std::pow(kTwoPi, 1.0 / qv) * f.pointwise_error;
  return {value, err, integral.evaluations + scan_evals};
}

}  // namespace fcb
