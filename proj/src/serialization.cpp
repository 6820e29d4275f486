#include "primstab/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace primstab {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string vertex_name(int index) { return std::string(1, Letter::from_index(index).to_char()); }

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& value) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
    throw ValidationError("complex numbers must be [re, im] pairs");
  }
  return {value[0].get<double>(), value[1].get<double>()};
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string whitehead_dot(const WhiteheadGraph& g, std::string_view source_word) {
  std::ostringstream out;
  out << "graph whitehead {\n";
  out << "  label=\"" << source_word << "\";\n";
  for (int v = 0; v < g.vertex_count(); ++v) out << "  " << vertex_name(v) << ";\n";
  for (const auto& [pair, count] : g.edges) {
    out << "  " << vertex_name(pair.first) << " -- " << vertex_name(pair.second) << " [label=\"" << count
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string whitehead_json(const WhiteheadGraph& g, std::string_view source_word) {
  ordered_json doc;
  doc["word"] = std::string(source_word);
  doc["rank"] = g.rank;
  ordered_json vertices = ordered_json::array();
  for (int v = 0; v < g.vertex_count(); ++v) vertices.push_back(vertex_name(v));
  doc["vertices"] = vertices;
  ordered_json edges = ordered_json::array();
  for (const auto& [pair, count] : g.edges) {
    edges.push_back({{"u", vertex_name(pair.first)}, {"v", vertex_name(pair.second)}, {"multiplicity", count}});
  }
  doc["edges"] = edges;
  ordered_json adjacency = ordered_json::object();
  for (int v = 0; v < g.vertex_count(); ++v) {
    ordered_json row = ordered_json::object();
    for (const auto& [pair, count] : g.edges) {
      if (pair.first == v) row[vertex_name(pair.second)] = count;
      else if (pair.second == v) row[vertex_name(pair.first)] = count;
    }
    adjacency[vertex_name(v)] = row;
  }
  doc["adjacency"] = adjacency;
  return doc.dump(2) + "\n";
}

std::string representation_to_json(const Representation& rho) {
  ordered_json doc;
  doc["rank"] = rho.rank();
  doc["label"] = rho.label();
  ordered_json gens = ordered_json::array();
  for (const auto& m : rho.generators()) {
    gens.push_back(ordered_json::array({ordered_json::array({complex_json(m.a()), complex_json(m.b())}),
                                        ordered_json::array({complex_json(m.c()), complex_json(m.d())})}));
  }
  doc["generators"] = gens;
  return doc.dump(2) + "\n";
}

Representation representation_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("representation file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rank") || !doc["rank"].is_number_integer() ||
      !doc.contains("generators") || !doc["generators"].is_array()) {
    throw ValidationError("representation file needs integer \"rank\" and array \"generators\"");
  }
  const int rank = doc["rank"].get<int>();
  check_rank(rank);
  const auto& gens = doc["generators"];
  if (gens.size() != static_cast<std::size_t>(rank)) {
    throw ValidationError("expected " + std::to_string(rank) + " generator matrices");
  }
  std::vector<MoebiusMap> images;
  for (const auto& m : gens) {
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() ||
        m[1].size() != 2) {
      throw ValidationError("generator matrices must be 2x2 row-major arrays");
    }
    images.push_back(normalize({complex_from_json(m[0][0]), complex_from_json(m[0][1]),
                                complex_from_json(m[1][0]), complex_from_json(m[1][1])}));
  }
  std::string label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw ValidationError("\"label\" must be a string");
    label = doc["label"].get<std::string>();
  }
  return Representation(std::move(images), std::move(label));
}

std::string sphere_point_json(const SpherePoint& p) {
  if (p.infinite) return "\"inf\"";
  return complex_json(p.z).dump();
}

}  // namespace primstab
