#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "fcb/asymptotics.hpp"
#include "fcb/bounds.hpp"
#include "fcb/class_spec_json.hpp"
#include "fcb/csv.hpp"
#include "fcb/errors.hpp"
#include "verify.hpp"

namespace fcb::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct Options {
  std::string r;
  std::string n = "1";
  std::string p = "inf";
  std::string metric = "uniform";
  double beta = 0.0;
  std::string beta_seq;
  std::string psi;
  std::optional<double> tol;
  std::string out = "csv";
  std::vector<std::string> suites;
  std::string formula = "thm1";
};

double parse_number(std::string_view text, const char* what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw DomainError(std::string("cannot parse ") + what + " '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view text, const char* what) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw DomainError(std::string("cannot parse ") + what + " '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

/// "3" or "1..6".
std::vector<int> parse_n(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {parse_int(text, "n")};
  const int lo = parse_int(std::string_view(text).substr(0, dots), "n");
  const int hi = parse_int(std::string_view(text).substr(dots + 2), "n");
  if (hi < lo) throw DomainError("empty n range '" + text + "'");
  std::vector<int> ns;
  for (int n = lo; n <= hi; ++n) ns.push_back(n);
  return ns;
}

/// One r item: a value, a range "a..b" (unit step) or "a..b:count" (linear),
/// or a rule "c*(n+1)".
struct RSpec {
  std::vector<double> values;
  std::optional<double> multiplier;
};

RSpec parse_r_item(const std::string& text) {
  RSpec spec;
  if (const auto star = text.find("*(n+1)"); star != std::string::npos) {
    if (star + 6 != text.size()) throw DomainError("malformed r rule '" + text + "'");
    const double c = parse_number(std::string_view(text).substr(0, star), "r multiplier");
    if (!(c >= 1.0)) throw DomainError("r rule multiplier must be >= 1");
    spec.multiplier = c;
    return spec;
  }
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    spec.values.push_back(parse_number(text, "r"));
    return spec;
  }
  const std::string rest = text.substr(dots + 2);
  const auto colon = rest.find(':');
  const double lo = parse_number(std::string_view(text).substr(0, dots), "r");
  const double hi = parse_number(std::string_view(rest).substr(0, colon), "r");
  if (hi < lo) throw DomainError("empty r range '" + text + "'");
  if (colon == std::string::npos) {
    for (double r = lo; r <= hi + 1e-12; r += 1.0) spec.values.push_back(r);
  } else {
    const int count = parse_int(std::string_view(rest).substr(colon + 1), "r count");
    if (count < 1) throw DomainError("empty r range '" + text + "'");
    for (int i = 0; i < count; ++i) {
      spec.values.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    }
  }
  return spec;
}

std::vector<SweepPoint> build_grid(const std::vector<int>& ns, const std::string& r_text) {
  if (r_text.empty()) throw DomainError("--r is required");
  std::vector<SweepPoint> grid;
  for (const auto& item : split(r_text, ',')) {
    const RSpec spec = parse_r_item(item);
    for (int n : ns) {
      if (spec.multiplier) grid.push_back({n, *spec.multiplier * (n + 1.0)});
      for (double r : spec.values) grid.push_back({n, r});
    }
  }
  if (grid.empty()) throw DomainError("empty parameter grid");
  return grid;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PhaseSeq phases_from(const Options& o) {
  if (!o.beta_seq.empty()) return phases_from_json(read_file(o.beta_seq));
  return PhaseSeq::stationary(o.beta);
}

Metric metric_from(const std::string& text) {
  if (text == "uniform") return Metric::uniform();
  if (text.rfind("lp:", 0) == 0) return Metric::lp(Exponent::parse(text.substr(3)));
  throw DomainError("--metric must be 'uniform' or 'lp:<q>'");
}

QuadratureConfig quad_from(const Options& o) {
  QuadratureConfig cfg;
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw DomainError("--tol must be positive");
    cfg.rel_tol = *o.tol;
    cfg.abs_tol = *o.tol;
  }
  return cfg;
}

int thread_budget() {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("FCB_THREADS"); env != nullptr && *env != '\0') {
    const int cap = parse_int(env, "FCB_THREADS");
    if (cap < 1) throw DomainError("FCB_THREADS must be >= 1");
    threads = std::min(threads, cap);
  }
  return threads;
}

void check_out(const std::string& out) {
  if (out != "csv" && out != "json" && out != "pretty") {
    throw DomainError("--out must be csv, json or pretty");
  }
}

int cmd_compute(const Options& o, std::ostream& out) {
  check_out(o.out);
  const std::vector<int> ns = parse_n(o.n);
  if (ns.size() != 1) throw DomainError("compute takes a single n");
  const int n = ns.front();

  std::optional<SmoothnessSeq> psi;
  if (!o.psi.empty()) {
    if (!o.r.empty()) throw DomainError("give either --r or --psi, not both");
    if (o.psi.rfind("power:", 0) == 0) {
      psi = SmoothnessSeq::power_law(parse_number(o.psi.substr(6), "psi power"));
    } else if (o.psi.rfind("file:", 0) == 0) {
      psi = smoothness_from_json(read_file(o.psi.substr(5)));
    } else {
      throw DomainError("--psi must be 'power:<r>' or 'file:<path>'");
    }
  } else {
    if (o.r.empty()) throw DomainError("--r or --psi is required");
    const RSpec r = parse_r_item(o.r);
    if (r.multiplier) {
      psi = SmoothnessSeq::power_law(*r.multiplier * (n + 1.0));
    } else if (r.values.size() == 1) {
      psi = SmoothnessSeq::power_law(r.values.front());
    } else {
      throw DomainError("compute takes a single r");
    }
  }

  const ClassSpec spec{*psi, phases_from(o), Exponent::parse(o.p), metric_from(o.metric)};
  spec.validate();
  const ErrorReport report = eps_exact(spec, n, quad_from(o));

  // Leading term ψ(n)‖cos‖_q/π; the remainder scale is (1 + 1/n)^{-r} for power
  // laws and Σ_{k>n} ψ(k)/ψ(n) otherwise.
  const double lead_scaled = cos_norm(report.q) / kPi;
  double scale = 0.0;
  if (auto r = spec.psi.power_exponent()) {
    scale = std::exp(-*r * std::log1p(1.0 / n));
  } else {
    scale = spec.psi.tail_sum_bound(n) / spec.psi(n);
  }
  const double implied = (report.scaled_value - lead_scaled) / scale;
  const double leading = lead_scaled * spec.psi(n);

  if (o.out == "csv") {
    out << csv::report_header() << ",leading,implied_O1\n";
    out << csv::report_row(report) << ',' << csv::format_double(leading) << ','
        << csv::format_double(implied) << '\n';
  } else if (o.out == "json") {
    nlohmann::json j;
    j["class"] = nlohmann::json::parse(class_spec_to_json(spec));
    j["n"] = n;
    j["q"] = report.q.to_string();
    j["value"] = report.value;
    j["scaled_value"] = report.scaled_value;
    j["leading"] = leading;
    j["implied_O1"] = implied;
    j["method"] = std::string(to_string(report.method));
    j["quad_error"] = report.quadrature_error;
    out << j.dump(2) << '\n';
  } else {
    out << "class       " << class_spec_to_json(spec) << '\n'
        << "n           " << n << '\n'
        << "q           " << report.q.to_string() << '\n'
        << "value       " << csv::format_double(report.value) << '\n'
        << "n^r*value   " << csv::format_double(report.scaled_value) << '\n'
        << "leading     " << csv::format_double(leading) << '\n'
        << "implied O1  " << csv::format_double(implied) << '\n'
        << "quad error  " << csv::format_double(report.quadrature_error) << '\n';
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  check_out(o.out);
  if (o.tol && !(*o.tol > 0.0)) throw DomainError("--tol must be positive");
  std::vector<std::string> suites = o.suites.empty() ? suite_names() : o.suites;
  for (const auto& s : suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw DomainError("unknown suite '" + s + "'");
    }
  }
  const int threads = thread_budget();
  bool all = true;
  if (o.out == "csv") out << "suite,check,measured,threshold,result\n";
  for (const auto& s : suites) {
    for (const CheckRow& row : run_suite(s, o.tol.value_or(-1.0), threads)) {
      all = all && row.pass;
      const char* verdict = row.pass ? "PASS" : "FAIL";
      if (o.out == "csv") {
        out << row.suite << ',' << row.name << ',' << csv::format_double(row.measured) << ','
            << csv::format_double(row.threshold) << ',' << verdict << '\n';
      } else {
        out << std::left << std::setw(8) << row.suite << std::setw(40) << row.name << std::setw(24)
            << csv::format_double(row.measured) << std::setw(24) << csv::format_double(row.threshold)
            << verdict << '\n';
      }
      if (!row.pass) err << "failed: " << row.suite << ": " << row.name << '\n';
    }
  }
  return all ? kOk : kCheckFailed;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const std::vector<SweepPoint> grid = build_grid(parse_n(o.n), o.r);
  const Metric metric = metric_from(o.metric);
  Setting setting = Setting::UniformOnWp;
  Exponent p = Exponent::parse(o.p);
  if (!metric.is_uniform()) {
    if (!(p == Exponent(1.0))) throw DomainError("the L_p metric is only supported for the class p = 1");
    setting = Setting::LpOnW1;
    p = metric.target();
  }
  SweepKind kind = SweepKind::Thm1;
  if (o.formula == "stechkin") {
    kind = SweepKind::Stechkin;
  } else if (o.formula != "thm1") {
    throw DomainError("--formula must be thm1 or stechkin");
  }

  const QuadratureConfig cfg = quad_from(o);
  const SweepResult result = remainder_sweep(kind, setting, grid, p, phases_from(o), cfg, thread_budget());
  out << csv::diagnostic_header() << '\n';
  for (const auto& row : result.rows) out << csv::diagnostic_row(row) << '\n';
  out << "# max_abs_implied_O1," << csv::format_double(result.max_abs_O1) << '\n';
  out << "# max_abs_telyakovskii_O1," << csv::format_double(result.max_abs_telyakovskii) << '\n';

  if (result.rows.front().q == Exponent(2.0)) {
    double worst = 0.0;
    for (const auto& row : result.rows) {
      worst = std::max(worst, std::abs(row.exact - eps_l2_closed_form(row.r, row.n)));
    }
    out << "# max_l2_route_discrepancy," << csv::format_double(worst) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Worst-case errors of Fourier partial sums on convolution classes"};
  app.require_subcommand(1);
  Options o;

  auto add_class_flags = [&o](CLI::App* cmd) {
    cmd->add_option("--r", o.r, "smoothness: value, range a..b[:count] or rule c*(n+1)");
    cmd->add_option("--n", o.n, "partial-sum index: value or range a..b");
    cmd->add_option("--p", o.p, "class exponent: number >= 1 or inf");
    cmd->add_option("--metric", o.metric, "uniform or lp:<q>");
    cmd->add_option("--beta", o.beta, "stationary phase");
    cmd->add_option("--beta-seq", o.beta_seq, "JSON file with an explicit phase sequence");
    cmd->add_option("--tol", o.tol, "quadrature tolerance override");
  };

  CLI::App* compute = app.add_subcommand("compute", "exact worst-case error at one point");
  add_class_flags(compute);
  compute->add_option("--psi", o.psi, "power:<r> or file:<path>");
  compute->add_option("--out", o.out, "csv, json or pretty");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("--suite", o.suites, "special, kernels, l2, t1d6, 1z2, thm1");
  verify->add_option("--tol", o.tol, "tolerance override");
  verify->add_option("--out", o.out, "csv or pretty")->default_str("pretty");

  CLI::App* sweep = app.add_subcommand("sweep", "remainder constants over a grid");
  add_class_flags(sweep);
  sweep->add_option("--formula", o.formula, "thm1 or stechkin");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }

  try {
    // Under an L_p metric the class exponent defaults to 1 rather than inf.
    if (*compute) {
      if (compute->count("--p") == 0 && o.metric != "uniform") o.p = "1";
      return cmd_compute(o, out);
    }
    if (*verify) {
      if (verify->count("--out") == 0) o.out = "pretty";
      return cmd_verify(o, out, err);
    }
    if (sweep->count("--p") == 0 && o.metric != "uniform") o.p = "1";
    return cmd_sweep(o, out);
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const ToleranceError& e) {
    err << "tolerance not met: " << e.what() << " (best value " << e.best_value() << ", error estimate "
        << e.best_error() << ")\n";
    return kToleranceError;
  }
}

}  // namespace fcb::cli
