#pragma once

// CSV rows for error reports and sweep diagnostics. Numbers use 17
// significant digits and '.' regardless of locale.

#include <string>

#include "fcb/asymptotics.hpp"
#include "fcb/bounds.hpp"

namespace fcb::csv {

std::string format_double(double v);

/// n,r_or_psi_id,beta_id,p,metric,q,value,nr_value,method,quad_error
std::string report_header();
/// nr_value (n^r·value) is left empty for non-power-law classes.
std::string report_row(const ErrorReport& report);

/// setting,n,r,p,q,exact,leading,remainder_scale,implied_O1
std::string diagnostic_header();
std::string diagnostic_row(const RemainderDiagnostic& row);

std::string psi_id(const SmoothnessSeq& psi);
std::string beta_id(const PhaseSeq& phases);
std::string metric_id(const Metric& metric);

}  // namespace fcb::csv
