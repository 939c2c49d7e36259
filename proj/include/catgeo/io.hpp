#pragma once

#include <cctype>
#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "pip.hpp"

namespace catgeo {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// 17 significant digits round-trips IEEE doubles exactly.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_quote(const std::string& s) {
  return json(s).dump();
}

inline double parse_decimal(const std::string& s) {
  // strtod accepts hex floats and inf/nan; the file format does not.
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
          c == '-' || c == '+' || c == 'e' || c == 'E'))
      throw ParseError("not a decimal number: " + s);
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("not a decimal number: " + s);
  }
  if (pos != s.size()) throw ParseError("not a decimal number: " + s);
  return v;
}

inline std::vector<std::pair<int, int>> parse_pair_list(
    const json& arr, const Pip& p, const char* what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<std::pair<int, int>> out;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
        !e[1].is_string())
      throw ParseError(std::string(what) + " entries must be pairs of names");
    auto a = p.index.find(e[0].get<std::string>());
    auto b = p.index.find(e[1].get<std::string>());
    if (a == p.index.end())
      throw ValidationError("unknown element: " + e[0].get<std::string>());
    if (b == p.index.end())
      throw ValidationError("unknown element: " + e[1].get<std::string>());
    out.emplace_back(a->second, b->second);
  }
  return out;
}

inline Pip parse_pip(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  for (auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "elements" && key != "covers" && key != "inconsistent")
      throw ParseError("unknown key: " + key);
  }
  if (!doc.contains("elements") || !doc.contains("covers") ||
      !doc.contains("inconsistent"))
    throw ParseError("instance needs keys elements, covers, inconsistent");

  const json& elems = doc["elements"];
  if (!elems.is_array()) throw ParseError("elements must be an array");
  Pip names_only;  // index lookup for the pair lists
  for (const auto& e : elems) {
    if (!e.is_string()) throw ParseError("element names must be strings");
    std::string name = e.get<std::string>();
    if (!names_only.index.emplace(name, names_only.elements.size()).second)
      throw ValidationError("duplicate element: " + name);
    names_only.elements.push_back(std::move(name));
  }
  auto covers = parse_pair_list(doc["covers"], names_only, "covers");
  auto inconsistent =
      parse_pair_list(doc["inconsistent"], names_only, "inconsistent");
  return make_pip(std::move(names_only.elements), std::move(covers),
                  std::move(inconsistent));
}

inline std::string serialize_pip(const Pip& p) {
  ordered_json doc;
  doc["elements"] = p.elements;
  doc["covers"] = json::array();
  for (auto& [a, b] : p.covers)
    doc["covers"].push_back({p.elements[a], p.elements[b]});
  doc["inconsistent"] = json::array();
  for (auto& [a, b] : p.inconsistent_min)
    doc["inconsistent"].push_back({p.elements[a], p.elements[b]});
  return doc.dump();
}

// Point files map element name -> decimal string; omitted elements are 0.
inline std::vector<double> parse_point(const Pip& p, const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("point must be a JSON object");
  std::vector<double> x(p.size(), 0.0);
  for (auto& [key, value] : doc.items()) {
    auto it = p.index.find(key);
    if (it == p.index.end()) throw ValidationError("unknown element: " + key);
    if (!value.is_string())
      throw ParseError("coordinate of " + key + " must be a decimal string");
    x[it->second] = parse_decimal(value.get<std::string>());
  }
  return x;
}

inline std::string serialize_point(const Pip& p, const std::vector<double>& x) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < p.size(); ++i) {
    if (x[i] == 0.0) continue;
    if (!first) out += ",";
    first = false;
    out += json_quote(p.elements[i]) + ":" + json_quote(fmt17(x[i]));
  }
  out += "}";
  return out;
}

inline std::string serialize_ideal(const Pip& p, const Bits& s) {
  std::string out = "[";
  bool first = true;
  for_each_bit(s, [&](int i) {
    if (!first) out += ",";
    first = false;
    out += json_quote(p.elements[i]);
  });
  return out + "]";
}

} // namespace catgeo
