#pragma once

// JSON form of a function class:
//   {"psi":    {"power": r} | {"explicit": [...], "tail": {"geometric": ρ} | {"power": r}},
//    "beta":   {"stationary": b} | {"explicit": [...], "default": b},
//    "p":      number | "inf",
//    "metric": "uniform" | {"Lp": number | "inf"}}
// Malformed documents raise DomainError.

#include <string>
#include <string_view>

#include "fcb/kernels.hpp"

namespace fcb {

ClassSpec class_spec_from_json(std::string_view text);
std::string class_spec_to_json(const ClassSpec& spec);

/// Accepts either the bare "psi" object or a document containing one.
SmoothnessSeq smoothness_from_json(std::string_view text);
/// Accepts either the bare "beta" object or a document containing one.
PhaseSeq phases_from_json(std::string_view text);

}  // namespace fcb
