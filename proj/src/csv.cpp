#include "fcb/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace fcb::csv {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 40> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                       std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

std::string psi_id(const SmoothnessSeq& psi) {
  if (auto r = psi.power_exponent()) return format_double(*r);
  return "explicit";
}

std::string beta_id(const PhaseSeq& phases) {
  return phases.is_stationary() ? format_double(phases.default_beta()) : "seq";
}

std::string metric_id(const Metric& metric) {
  return metric.is_uniform() ? "uniform" : "lp:" + metric.target().to_string();
}

std::string report_header() {
  return "n,r_or_psi_id,beta_id,p,metric,q,value,nr_value,method,quad_error";
}

std::string report_row(const ErrorReport& report) {
  const ClassSpec& spec = report.class_spec;
  std::string row = std::to_string(report.n);
  row += ',' + psi_id(spec.psi);
  row += ',' + beta_id(spec.phases);
  row += ',' + spec.p.to_string();
  row += ',' + metric_id(spec.metric);
  row += ',' + report.q.to_string();
  row += ',' + format_double(report.value);
  row += ',' + (spec.psi.power_exponent() ? format_double(report.scaled_value) : std::string());
  row += ',' + std::string(to_string(report.method));
  row += ',' + format_double(report.quadrature_error);
  return row;
}

std::string diagnostic_header() {
  return "setting,n,r,p,q,exact,leading,remainder_scale,implied_O1";
}

std::string diagnostic_row(const RemainderDiagnostic& d) {
  std::string row(to_string(d.setting));
  row += ',' + std::to_string(d.n);
  row += ',' + format_double(d.r);
  row += ',' + d.p.to_string();
  row += ',' + d.q.to_string();
  row += ',' + format_double(d.exact);
  row += ',' + format_double(d.leading);
  row += ',' + format_double(d.remainder_scale);
  row += ',' + format_double(d.implied_O1);
  return row;
}

}  // namespace fcb::csv
