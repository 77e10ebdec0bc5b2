#include "pmetric/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace pmetric::io {

namespace {

Json parse_document(std::string_view text, std::string_view kind) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string(kind) + " document is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ParseError(std::string(kind) + " document must be a JSON object");
  const auto it = doc.find("format");
  if (it == doc.end() || !it->is_number_integer() || it->get<long>() != kFormatVersion) {
    throw ParseError(std::string(kind) + " document needs \"format\": " +
                     std::to_string(kFormatVersion));
  }
  return doc;
}

const Json& require(const Json& doc, const char* key, std::string_view kind) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw ParseError(std::string(kind) + " document is missing \"" + key + "\"");
  }
  return *it;
}

std::vector<std::string> split_label(const std::string& key) {
  std::vector<std::string> out;
  std::string current;
  for (char ch : key) {
    if (ch == ',') {
      out.push_back(std::move(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  out.push_back(std::move(current));
  return out;
}

std::vector<MassEntry> parse_mass_map(const Json& j, std::string_view where) {
  if (!j.is_object()) throw ParseError(std::string(where) + " must be an object of masses");
  std::vector<MassEntry> out;
  for (const auto& [key, value] : j.items()) {
    out.emplace_back(split_label(key), rational_from_json(value, std::string(where) + "." + key));
  }
  return out;
}

Matrix parse_matrix(const Json& j, std::string_view where) {
  if (!j.is_array()) throw ParseError(std::string(where) + " must be an array of rows");
  Matrix out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& row = j[i];
    const std::string at = std::string(where) + "[" + std::to_string(i) + "]";
    if (!row.is_array()) throw ParseError(at + " must be an array");
    std::vector<Rational> values;
    for (std::size_t k = 0; k < row.size(); ++k) {
      values.push_back(rational_from_json(row[k], at + "[" + std::to_string(k) + "]"));
    }
    out.push_back(std::move(values));
  }
  return out;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(rational_json(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json mass_map_json(const std::vector<MassEntry>& entries) {
  Json out = Json::object();
  for (const auto& [labels, mass] : entries) {
    std::string key;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) key += ',';
      key += labels[i];
    }
    out[key] = rational_json(mass);
  }
  return out;
}

bool is_flat(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& v : j) {
    if (v.is_structured()) return false;
  }
  return true;
}

// Like dump(2), but arrays of scalars stay on one line.
void pretty(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      pretty(value, out, indent + 2);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else if (j.is_array() && !j.empty() && !is_flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      pretty(j[i], out, indent + 2);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string to_text(const Json& j) {
  std::string out;
  pretty(j, out, 0);
  return out + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json rational_json(const Rational& r) {
  if (r.is_integer() && r.raw().get_num().fits_slong_p()) return r.raw().get_num().get_si();
  return r.str();
}

Rational rational_from_json(const Json& j, std::string_view where) {
  if (j.is_number_unsigned()) return Rational::parse(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string(where) + ": " + e.what());
    }
  }
  throw ParseError(std::string(where) + " must be an integer or a \"p/q\" string");
}

RawInstance parse_instance(std::string_view text) {
  const Json doc = parse_document(text, "instance");
  RawInstance raw;
  const Json& sites = require(doc, "sites", "instance");
  if (!sites.is_array()) throw ParseError("\"sites\" must be an array");
  for (std::size_t s = 0; s < sites.size(); ++s) {
    const Json& js = sites[s];
    const std::string where = "sites[" + std::to_string(s) + "]";
    if (!js.is_object()) throw ParseError(where + " must be an object");
    Site site;
    const Json& name = require(js, "name", where);
    if (!name.is_string()) throw ParseError(where + ".name must be a string");
    site.name = name.get<std::string>();
    const Json& points = require(js, "points", where);
    if (!points.is_array()) throw ParseError(where + ".points must be an array");
    for (const auto& p : points) {
      if (!p.is_string()) throw ParseError(where + ".points entries must be strings");
      site.points.push_back(p.get<std::string>());
    }
    site.metric = parse_matrix(require(js, "metric", where), where + ".metric");
    raw.sites.push_back(std::move(site));
  }
  raw.mu = parse_mass_map(require(doc, "mu", "instance"), "mu");
  raw.nu = parse_mass_map(require(doc, "nu", "instance"), "nu");
  return raw;
}

Json instance_json(const Instance& instance) {
  const RawInstance raw = to_raw(instance);
  Json doc;
  doc["format"] = kFormatVersion;
  Json sites = Json::array();
  for (const auto& site : raw.sites) {
    Json js;
    js["name"] = site.name;
    js["points"] = site.points;
    js["metric"] = matrix_json(site.metric);
    sites.push_back(std::move(js));
  }
  doc["sites"] = std::move(sites);
  doc["mu"] = mass_map_json(raw.mu);
  doc["nu"] = mass_map_json(raw.nu);
  return doc;
}

std::string write_instance(const Instance& instance) {
  return to_text(instance_json(instance));
}

Instance load_instance(std::string_view text) {
  auto result = validate_instance(parse_instance(text));
  if (!result.ok()) throw InstanceError(std::move(result.violations));
  return std::move(*result.instance);
}

FunctionOnX parse_function(std::string_view text, const SpacePtr& space) {
  const Json doc = parse_document(text, "function");
  const auto entries = parse_mass_map(require(doc, "values", "function"), "values");
  std::vector<Rational> values(space->config_count());
  std::vector<Violation> violations;
  for (const auto& [labels, value] : entries) {
    if (const auto index = space->find_config(labels)) {
      values[*index] = value;
    } else {
      std::string key;
      for (std::size_t i = 0; i < labels.size(); ++i) key += (i ? "," : "") + labels[i];
      violations.push_back({ViolationKind::ShapeMismatch,
                            "function key '" + key + "' is not a configuration"});
    }
  }
  if (!violations.empty()) throw InstanceError(std::move(violations));
  return FunctionOnX(space, std::move(values));
}

Json function_json(const FunctionOnX& f) {
  Json values = Json::object();
  for (std::size_t x = 0; x < f.size(); ++x) {
    values[f.space().config_label(x)] = rational_json(f[x]);
  }
  return values;
}

WeightVector parse_weights(std::string_view text, const ProductSpace& space) {
  const Json doc = parse_document(text, "weights");
  const Json& w = require(doc, "weights", "weights");
  if (!w.is_array()) throw ParseError("\"weights\" must be an array");
  std::vector<Rational> weights;
  for (std::size_t s = 0; s < w.size(); ++s) {
    weights.push_back(rational_from_json(w[s], "weights[" + std::to_string(s) + "]"));
  }
  if (weights.size() != space.site_count()) {
    throw InstanceError({{ViolationKind::ShapeMismatch,
                          "got " + std::to_string(weights.size()) + " weights for " +
                              std::to_string(space.site_count()) + " sites"}});
  }
  return WeightVector(std::move(weights));
}

Json weights_json(const WeightVector& e) {
  Json out = Json::array();
  for (const auto& w : e.weights()) out.push_back(rational_json(w));
  return out;
}

CostOnPairs parse_cost(std::string_view text, const SpacePtr& space) {
  const Json doc = parse_document(text, "cost");
  return CostOnPairs(space, parse_matrix(require(doc, "cost", "cost"), "cost"));
}

Json cost_json(const CostOnPairs& c) { return matrix_json(c.matrix()); }

Json coupling_json(const Coupling& m) {
  Json out = Json::object();
  const auto& space = m.space();
  for (std::size_t x = 0; x < space.config_count(); ++x) {
    for (std::size_t y = 0; y < space.config_count(); ++y) {
      if (m(x, y).is_zero()) continue;
      out[space.config_label(x) + "|" + space.config_label(y)] = rational_json(m(x, y));
    }
  }
  return out;
}

}  // namespace pmetric::io
