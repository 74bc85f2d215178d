#include "fcb/class_spec_json.hpp"

#include <nlohmann/json.hpp>

#include "fcb/errors.hpp"

namespace fcb {

namespace {

using nlohmann::json;

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
}

double number_at(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw DomainError(std::string("expected a number for '") + key + "'");
  }
  return j.at(key).get<double>();
}

std::vector<double> numbers_at(const json& j, const char* key) {
  const json& arr = j.at(key);
  if (!arr.is_array()) throw DomainError(std::string("expected an array for '") + key + "'");
  std::vector<double> out;
  for (const auto& v : arr) {
    if (!v.is_number()) throw DomainError(std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

Exponent exponent_from(const json& j) {
  if (j.is_string()) return Exponent::parse(j.get<std::string>());
  if (j.is_number()) return Exponent(j.get<double>());
  throw DomainError("exponent must be a number or \"inf\"");
}

json exponent_to(const Exponent& e) {
  if (e.is_infinite()) return "inf";
  return e.value();
}

SmoothnessSeq psi_from(const json& j) {
  if (!j.is_object()) throw DomainError("'psi' must be an object");
  if (j.contains("power")) return SmoothnessSeq::power_law(number_at(j, "power"));
  if (!j.contains("explicit")) throw DomainError("'psi' needs \"power\" or \"explicit\"");
  if (!j.contains("tail") || !j.at("tail").is_object()) {
    throw DomainError("explicit 'psi' needs a \"tail\" rule");
  }
  const json& tail = j.at("tail");
  SmoothnessSeq::TailRule rule;
  if (tail.contains("geometric")) {
    rule = SmoothnessSeq::GeometricTail{number_at(tail, "geometric")};
  } else if (tail.contains("power")) {
    rule = SmoothnessSeq::PowerTail{number_at(tail, "power")};
  } else {
    throw DomainError("tail rule needs \"geometric\" or \"power\"");
  }
  return SmoothnessSeq::explicit_values(numbers_at(j, "explicit"), rule);
}

PhaseSeq beta_from(const json& j) {
  if (!j.is_object()) throw DomainError("'beta' must be an object");
  if (j.contains("stationary")) return PhaseSeq::stationary(number_at(j, "stationary"));
  if (!j.contains("explicit")) throw DomainError("'beta' needs \"stationary\" or \"explicit\"");
  return PhaseSeq::explicit_values(numbers_at(j, "explicit"), number_at(j, "default"));
}

Metric metric_from(const json& j) {
  if (j.is_string() && j.get<std::string>() == "uniform") return Metric::uniform();
  if (j.is_object() && j.contains("Lp")) return Metric::lp(exponent_from(j.at("Lp")));
  throw DomainError("'metric' must be \"uniform\" or {\"Lp\": q}");
}

json psi_to(const SmoothnessSeq& psi) {
  if (auto r = psi.power_exponent()) return {{"power", *r}};
  const auto& e = std::get<SmoothnessSeq::Explicit>(psi.kind());
  json tail;
  if (const auto* g = std::get_if<SmoothnessSeq::GeometricTail>(&e.tail)) {
    tail["geometric"] = g->ratio;
  } else {
    tail["power"] = std::get<SmoothnessSeq::PowerTail>(e.tail).r;
  }
  return {{"explicit", e.values}, {"tail", tail}};
}

json beta_to(const PhaseSeq& phases) {
  if (phases.is_stationary()) return {{"stationary", phases.default_beta()}};
  return {{"explicit", phases.values()}, {"default", phases.default_beta()}};
}

const json& member_or_self(const json& doc, const char* key) {
  return doc.is_object() && doc.contains(key) ? doc.at(key) : doc;
}

}  // namespace

ClassSpec class_spec_from_json(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw DomainError("class spec must be a JSON object");
  for (const char* key : {"psi", "beta", "p", "metric"}) {
    if (!doc.contains(key)) throw DomainError(std::string("class spec is missing '") + key + "'");
  }
  try {
    ClassSpec spec{psi_from(doc.at("psi")), beta_from(doc.at("beta")), exponent_from(doc.at("p")),
                   metric_from(doc.at("metric"))};
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed class spec: ") + e.what());
  }
}

std::string class_spec_to_json(const ClassSpec& spec) {
  json doc;
  doc["psi"] = psi_to(spec.psi);
  doc["beta"] = beta_to(spec.phases);
  doc["p"] = exponent_to(spec.p);
  doc["metric"] = spec.metric.is_uniform() ? json("uniform")
                                           : json{{"Lp", exponent_to(spec.metric.target())}};
  return doc.dump();
}

SmoothnessSeq smoothness_from_json(std::string_view text) {
  const json doc = parse_document(text);
  try {
    return psi_from(member_or_self(doc, "psi"));
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed psi: ") + e.what());
  }
}

PhaseSeq phases_from_json(std::string_view text) {
  const json doc = parse_document(text);
  try {
    return beta_from(member_or_self(doc, "beta"));
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed beta: ") + e.what());
  }
}

}  // namespace fcb
