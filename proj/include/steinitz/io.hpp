#pragma once

// JSON encodings of library results and the on-disk class group cache.
// Objects use insertion-ordered keys so output is byte-stable.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "steinitz/classgroup.hpp"
#include "steinitz/realizable.hpp"
#include "steinitz/verify.hpp"
#include "steinitz/wgroups.hpp"

namespace steinitz::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const Form& f) { return Json::array({f.a, f.b, f.c}); }

inline Form form_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw InvalidInput("form must be a JSON array [a, b, c]");
  return {j.at(0).get<Int>(), j.at(1).get<Int>(), j.at(2).get<Int>()};
}

inline Json to_json(const std::vector<Form>& forms) {
  Json out = Json::array();
  for (const auto& f : forms) out.push_back(to_json(f));
  return out;
}

inline Json to_json(const ClassSubgroup& s) {
  Json j;
  j["order"] = s.size();
  j["elements"] = to_json(s.elements());
  j["generators"] = to_json(s.generators());
  return j;
}

inline Json to_json(const ClassGroup& g) {
  Json j;
  j["d"] = g.field().d;
  j["D"] = g.discriminant();
  j["h"] = g.h();
  j["invariants"] = g.invariants();
  j["generators"] = to_json(g.generators());
  j["forms"] = to_json(g.elements());
  return j;
}

inline Json to_json(const Certificate& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  if (c.kind == CertificateKind::Stabilized) {
    j["bound"] = c.bound;
    j["prime_count"] = c.prime_count;
  }
  return j;
}

inline Json to_json(const WComputation& w) {
  Json j;
  j["modulus"] = w.modulus;
  j["extension_degree"] = w.extension_degree;
  j["subgroup"] = to_json(w.result);
  return j;
}

inline Json to_json(const RamDatum& d) {
  Json j;
  j["p"] = d.prime.p;
  j["root"] = d.prime.b;
  j["e"] = d.e;
  return j;
}

inline Json to_json(const RamData& r) {
  Json out = Json::array();
  for (const auto& d : r.data) out.push_back(to_json(d));
  return out;
}

inline Json to_json(const ValidationReport& rep) {
  Json out = Json::array();
  for (const auto& c : rep.checks) {
    Json j = to_json(c.datum);
    j["ok"] = c.ok();
    j["violated"] = c.violated;
    j["messages"] = c.messages;
    out.push_back(j);
  }
  return out;
}

inline Json to_json(const SuiteReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["cases"] = r.total_cases();
  j["violations"] = r.total_violations();
  Json parts = Json::array();
  for (const auto& c : r.cases) {
    Json p;
    p["label"] = c.label;
    p["cases"] = c.cases;
    p["violations"] = c.violations;
    if (!c.failures.empty()) p["failures"] = c.failures;
    parts.push_back(p);
  }
  j["breakdown"] = parts;
  return j;
}

inline Json to_json(const GoodGroupReport& r) {
  Json j;
  j["group"] = r.spec.name();
  j["passed"] = r.passed();
  Json props = Json::array();
  for (const auto& p : r.properties) {
    Json x;
    x["property"] = p.name;
    x["passed"] = p.passed;
    x["checked"] = p.checked;
    if (!p.note.empty()) x["note"] = p.note;
    if (!p.counterexamples.empty()) x["counterexamples"] = p.counterexamples;
    props.push_back(x);
  }
  j["properties"] = props;
  return j;
}

/// Cache file name for a discriminant: "D<|D|>.json".
inline std::string cache_file_name(Int D) { return "D" + std::to_string(D < 0 ? -D : D) + ".json"; }

/// {d, D, h, forms, invariants}
inline Json cache_record(const ClassGroup& g) {
  Json j;
  j["d"] = g.field().d;
  j["D"] = g.discriminant();
  j["h"] = g.h();
  j["forms"] = to_json(g.elements());
  j["invariants"] = g.invariants();
  return j;
}

/// Parses a cache record; nullopt if it does not describe the requested field
/// or is internally inconsistent.
inline std::optional<ClassGroup> class_group_from_record(const Field& k, const Json& j) {
  try {
    if (j.at("d").get<Int>() != k.d || j.at("D").get<Int>() != k.D) return std::nullopt;
    std::vector<Form> forms;
    for (const auto& f : j.at("forms")) forms.push_back(form_from_json(f));
    auto g = ClassGroup::from_forms(k, std::move(forms));
    if (g.h() != j.at("h").get<Int>()) return std::nullopt;
    if (g.invariants() != j.at("invariants").get<std::vector<Int>>()) return std::nullopt;
    return g;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
}

/// Class group of k, read from and written to dir when given.
inline ClassGroup load_or_compute(const Field& k, const std::optional<std::filesystem::path>& dir,
                                  Int cap = kDefaultDiscriminantCap) {
  if (!dir) return ClassGroup::enumerate(k, cap);
  const auto path = *dir / cache_file_name(k.D);
  if (std::ifstream in{path}) {
    try {
      if (auto g = class_group_from_record(k, Json::parse(in))) return *g;
    } catch (const nlohmann::json::exception&) {
    }
  }
  auto g = ClassGroup::enumerate(k, cap);
  std::error_code ec;
  std::filesystem::create_directories(*dir, ec);
  std::ofstream out{path};
  if (out) out << cache_record(g).dump(2) << "\n";
  return g;
}

inline std::optional<std::filesystem::path> cache_dir_from_env() {
  const char* v = std::getenv("STEINITZ_CACHE");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::filesystem::path(v);
}

}  // namespace steinitz::io
