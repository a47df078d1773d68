#pragma once

// JSON rendering of manifold specs and decomposition graphs, plus the
// content digest that ties a certificate to its spec.

#include <openssl/evp.h>

#include <cstdio>
#include <string>

#include "json.hpp"
#include "loopcert/covers.hpp"
#include "loopcert/decomposition.hpp"
#include "loopcert/error.hpp"

namespace loopcert {

using Json = nlohmann::json;

namespace detail {

inline const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key + ": missing field");
  return *it;
}

inline std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
  return j.get<std::int64_t>();
}

inline std::size_t as_index(const Json& j, const std::string& path) {
  const auto v = as_int(j, path);
  if (v < 0) throw ParseError(path + ": expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

inline bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw ParseError(path + ": expected true or false");
  return j.get<bool>();
}

inline const std::string& as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a string");
  return j.get_ref<const std::string&>();
}

inline const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  return j;
}

inline void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw ParseError(path + "." + it.key() + ": unknown field");
  }
}

}  // namespace detail

inline Json node_to_json(const Node& n) {
  if (const auto* h = std::get_if<HyperbolicPiece>(&n)) return Json{{"kind", "hyperbolic"}, {"cusps", h->cusps}};
  const auto& s = std::get<SeifertPiece>(n);
  Json fibers = Json::array();
  for (const auto& f : s.fibers) fibers.push_back(Json::array({f.alpha, f.beta}));
  Json j{{"kind", "seifert"},   {"base_orientable", s.base_orientable}, {"genus", s.genus},
         {"boundary", s.boundary}, {"fibers", fibers},                  {"fibration_orientable", s.fibration_orientable}};
  j["deltas"] = s.deltas;
  return j;
}

inline Node node_from_json(const Json& j, const std::string& path) {
  using namespace detail;
  const auto& kind = as_string(field(j, "kind", path), path + ".kind");
  if (kind == "hyperbolic") {
    only_keys(j, {"kind", "cusps"}, path);
    return HyperbolicPiece{as_int(field(j, "cusps", path), path + ".cusps")};
  }
  if (kind != "seifert") throw ParseError(path + ".kind: unknown node kind '" + kind + "'");
  only_keys(j, {"kind", "base_orientable", "genus", "boundary", "fibers", "deltas", "fibration_orientable"}, path);
  SeifertPiece s;
  s.base_orientable = as_bool(field(j, "base_orientable", path), path + ".base_orientable");
  s.genus = as_int(field(j, "genus", path), path + ".genus");
  s.boundary = as_int(field(j, "boundary", path), path + ".boundary");
  const auto& fibers = as_array(field(j, "fibers", path), path + ".fibers");
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    const auto fp = path + ".fibers[" + std::to_string(i) + "]";
    if (!fibers[i].is_array() || fibers[i].size() != 2) throw ParseError(fp + ": expected [alpha, beta]");
    s.fibers.push_back({as_int(fibers[i][0], fp + "[0]"), as_int(fibers[i][1], fp + "[1]")});
  }
  if (j.contains("deltas")) {
    const auto& d = as_array(j["deltas"], path + ".deltas");
    for (std::size_t i = 0; i < d.size(); ++i)
      s.deltas.push_back(static_cast<int>(as_int(d[i], path + ".deltas[" + std::to_string(i) + "]")));
  }
  s.fibration_orientable = j.contains("fibration_orientable")
                               ? as_bool(j["fibration_orientable"], path + ".fibration_orientable")
                               : s.base_orientable;
  return s;
}

inline Json graph_to_json(const DecompositionGraph& g) {
  Json nodes = Json::array(), edges = Json::array();
  for (const auto& n : g.nodes) nodes.push_back(node_to_json(n));
  for (const auto& e : g.edges) edges.push_back(Json::array({e.a, e.slot_a, e.b, e.slot_b}));
  return Json{{"nodes", nodes}, {"edges", edges}};
}

inline DecompositionGraph graph_from_json(const Json& j, const std::string& path) {
  using namespace detail;
  DecompositionGraph g;
  const auto& nodes = as_array(field(j, "nodes", path), path + ".nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) g.nodes.push_back(node_from_json(nodes[i], path + ".nodes[" + std::to_string(i) + "]"));
  const auto& edges = as_array(field(j, "edges", path), path + ".edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto ep = path + ".edges[" + std::to_string(i) + "]";
    if (!edges[i].is_array() || edges[i].size() != 4) throw ParseError(ep + ": expected [node, slot, node, slot]");
    g.edges.push_back({as_index(edges[i][0], ep + "[0]"), as_index(edges[i][1], ep + "[1]"), as_index(edges[i][2], ep + "[2]"),
                       as_index(edges[i][3], ep + "[3]")});
  }
  return g;
}

inline Json summand_to_json(const Summand& s) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, S2xS1>) return Json{{"kind", "s2xs1"}};
        else if constexpr (std::is_same_v<T, FinitePi1>) return Json{{"kind", "finite_pi1"}, {"order", x.order}, {"fake", x.fake}};
        else if constexpr (std::is_same_v<T, ClosedHyperbolic>) return Json{{"kind", "closed_hyperbolic"}};
        else {
          auto j = graph_to_json(x.graph);
          j["kind"] = "irreducible";
          return j;
        }
      },
      s);
}

inline Summand summand_from_json(const Json& j, const std::string& path) {
  using namespace detail;
  const auto& kind = as_string(field(j, "kind", path), path + ".kind");
  if (kind == "s2xs1") {
    only_keys(j, {"kind"}, path);
    return S2xS1{};
  }
  if (kind == "closed_hyperbolic") {
    only_keys(j, {"kind"}, path);
    return ClosedHyperbolic{};
  }
  if (kind == "finite_pi1") {
    only_keys(j, {"kind", "order", "fake"}, path);
    FinitePi1 f;
    f.order = as_int(field(j, "order", path), path + ".order");
    if (j.contains("fake")) f.fake = as_bool(j["fake"], path + ".fake");
    return f;
  }
  if (kind == "irreducible") {
    only_keys(j, {"kind", "nodes", "edges"}, path);
    return Irreducible{graph_from_json(j, path)};
  }
  throw ParseError(path + ".kind: unknown summand kind '" + kind + "'");
}

inline Json spec_to_json(const ManifoldSpec& spec) {
  Json summands = Json::array();
  for (const auto& s : spec.summands) summands.push_back(summand_to_json(s));
  return Json{{"version", "1"}, {"manifold", Json{{"summands", summands}}}};
}

inline ManifoldSpec spec_from_json(const Json& doc) {
  using namespace detail;
  detail::only_keys(doc, {"version", "manifold"}, "$");
  const auto& version = as_string(field(doc, "version", "$"), "$.version");
  if (version != "1") throw ParseError("$.version: unsupported version '" + version + "'");
  const auto& m = field(doc, "manifold", "$");
  only_keys(m, {"summands"}, "$.manifold");
  const auto& summands = as_array(field(m, "summands", "$.manifold"), "$.manifold.summands");
  ManifoldSpec spec;
  for (std::size_t i = 0; i < summands.size(); ++i)
    spec.summands.push_back(summand_from_json(summands[i], "$.manifold.summands[" + std::to_string(i) + "]"));
  return spec;
}

inline ManifoldSpec parse_spec(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("spec is not valid JSON: ") + e.what());
  }
  return spec_from_json(doc);
}

/// Cover bookkeeping next to the cover graph itself.
inline Json cover_to_json(const CoverGraph& c) {
  Json slot_map = Json::array();
  for (const auto& row : c.slot_map) {
    Json r = Json::array();
    for (const auto& sp : row) r.push_back(Json::array({sp.slot, sp.degree}));
    slot_map.push_back(r);
  }
  return Json{{"recipe", construction_name(c.recipe)}, {"output", graph_to_json(c.cover)}, {"node_map", c.node_map},
              {"node_origin", c.node_origin},          {"slot_map", slot_map},             {"edge_map", c.edge_map},
              {"rewritten", c.rewritten}};
}

/// Canonical text: sorted keys, no whitespace, defaults made explicit.
inline std::string canonical_spec_text(const ManifoldSpec& spec) { return spec_to_json(spec).dump(); }

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) throw std::runtime_error("SHA-256 failed");
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

inline std::string spec_digest(const ManifoldSpec& spec) { return "sha256:" + sha256_hex(canonical_spec_text(spec)); }

}  // namespace loopcert
