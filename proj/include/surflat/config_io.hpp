#pragma once

// On-disk configuration format:
//
//   {
//     "curves":  [{"id": "C0", "self": -2, "genus": 0}, {"id": "H", "self": 2, "k": 0}, ...],
//     "edges":   [["C0", "C1"], ["C1", "C2", 2], ...],
//     "divisor": {"C0": "1/2", "C1": 1}            (optional)
//   }
//
// Rationals are bare integers or "p/q" strings. Unknown keys are rejected.

#include "surflat/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

namespace surflat {

using ordered_json = nlohmann::ordered_json;

struct ConfigurationFile {
  Configuration configuration;
  std::optional<QDivisor> divisor;
};

namespace detail {

inline Rational rational_from_json(const nlohmann::json& v, const std::string& where) {
  try {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": malformed rational " + v.dump());
}

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
}

}  // namespace detail

inline ordered_json rational_to_json(const Rational& r) {
  if (r.is_integer() && r.is_small()) return r.to_int64();
  return r.str();
}

inline ConfigurationFile parse_configuration_file(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  detail::reject_unknown_keys(doc, {"curves", "edges", "divisor"}, "configuration");
  if (!doc.contains("curves") || !doc["curves"].is_array()) throw ConfigError("configuration: missing 'curves' array");

  std::vector<Curve> curves;
  for (const auto& c : doc["curves"]) {
    if (!c.is_object()) throw ConfigError("curve entries must be objects");
    detail::reject_unknown_keys(c, {"id", "self", "genus", "k"}, "curve");
    if (!c.contains("id") || !c["id"].is_string()) throw ConfigError("curve: missing string 'id'");
    const std::string id = c["id"].get<std::string>();
    if (!c.contains("self")) throw ConfigError("curve '" + id + "': missing 'self'");
    Curve curve;
    curve.label = id;
    curve.self_int = detail::rational_from_json(c["self"], "curve '" + id + "' self");
    const bool has_genus = c.contains("genus"), has_k = c.contains("k");
    if (has_genus == has_k) throw ConfigError("curve '" + id + "': exactly one of 'genus' and 'k' is required");
    if (has_genus) {
      if (!c["genus"].is_number_integer()) throw ConfigError("curve '" + id + "': genus must be an integer");
      curve.genus = c["genus"].get<int>();
    } else {
      curve.k_pairing = detail::rational_from_json(c["k"], "curve '" + id + "' k");
    }
    curves.push_back(std::move(curve));
  }

  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw ConfigError("configuration: 'edges' must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || (e.size() != 2 && e.size() != 3) || !e[0].is_string() || !e[1].is_string())
        throw ConfigError("edge must be [idA, idB] or [idA, idB, mult]: " + e.dump());
      Edge edge{e[0].get<std::string>(), e[1].get<std::string>(), 1};
      if (e.size() == 3) {
        if (!e[2].is_number_integer()) throw ConfigError("edge multiplicity must be an integer: " + e.dump());
        edge.multiplicity = e[2].get<int>();
      }
      edges.push_back(std::move(edge));
    }
  }

  ConfigurationFile out{Configuration(std::move(curves), std::move(edges)), std::nullopt};
  if (doc.contains("divisor")) {
    if (!doc["divisor"].is_object()) throw ConfigError("configuration: 'divisor' must be an object");
    QDivisor d;
    for (const auto& [label, value] : doc["divisor"].items()) {
      if (!out.configuration.find(label)) throw ConfigError("divisor refers to unknown label '" + label + "'");
      d.set(label, detail::rational_from_json(value, "divisor '" + label + "'"));
    }
    out.divisor = std::move(d);
  }
  return out;
}

inline Configuration parse_configuration(const std::string& text) {
  return parse_configuration_file(text).configuration;
}

inline ConfigurationFile load_configuration_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_configuration_file(ss.str());
}

/// Divisor as a JSON object in curve order.
inline ordered_json divisor_to_json(const Configuration& cfg, const QDivisor& d) {
  ordered_json out = ordered_json::object();
  for (const auto& c : cfg.curves()) {
    auto v = d.coeff(c.label);
    if (!v.is_zero()) out[c.label] = rational_to_json(v);
  }
  return out;
}

inline ordered_json configuration_to_json(const Configuration& cfg, const std::optional<QDivisor>& divisor = {}) {
  ordered_json out;
  out["curves"] = ordered_json::array();
  for (const auto& c : cfg.curves()) {
    ordered_json j;
    j["id"] = c.label;
    j["self"] = rational_to_json(c.self_int);
    if (c.genus)
      j["genus"] = *c.genus;
    else
      j["k"] = rational_to_json(*c.k_pairing);
    out["curves"].push_back(std::move(j));
  }
  out["edges"] = ordered_json::array();
  for (const auto& e : cfg.edges()) {
    if (e.multiplicity == 1)
      out["edges"].push_back({e.a, e.b});
    else
      out["edges"].push_back({e.a, e.b, e.multiplicity});
  }
  if (divisor) out["divisor"] = divisor_to_json(cfg, *divisor);
  return out;
}

}  // namespace surflat
