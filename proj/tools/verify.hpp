#pragma once

#include <string>
#include <vector>

namespace fcb::cli {

struct CheckRow {
  std::string suite;
  std::string name;
  double measured;
  double threshold;
  bool pass;
};

/// Suite names accepted by run_suite, in default execution order.
const std::vector<std::string>& suite_names();

/// Runs one suite. `tol` scales the special-function and quadrature
/// tolerances; a negative value keeps the defaults.
std::vector<CheckRow> run_suite(const std::string& name, double tol, int threads);

}  // namespace fcb::cli
