#pragma once

// Manifold descriptions: prime summands, torus-decomposition graphs of
// Seifert and hyperbolic pieces, validation and graph predicates.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "loopcert/error.hpp"
#include "loopcert/presentations.hpp"

namespace loopcert {

struct HyperbolicPiece {
  std::int64_t cusps = 0;
  friend bool operator==(const HyperbolicPiece&, const HyperbolicPiece&) = default;
};

using Node = std::variant<SeifertPiece, HyperbolicPiece>;

struct Gluing {
  std::size_t a = 0, slot_a = 0, b = 0, slot_b = 0;
  friend bool operator==(const Gluing&, const Gluing&) = default;
};

struct DecompositionGraph {
  std::vector<Node> nodes;
  std::vector<Gluing> edges;

  const SeifertPiece* seifert(std::size_t i) const { return std::get_if<SeifertPiece>(&nodes.at(i)); }
  bool is_hyperbolic(std::size_t i) const { return std::holds_alternative<HyperbolicPiece>(nodes.at(i)); }
  std::int64_t slot_count(std::size_t i) const {
    if (const auto* s = seifert(i)) return s->boundary;
    return std::get<HyperbolicPiece>(nodes.at(i)).cusps;
  }
  /// Edge index attached to (node, slot), if any.
  std::optional<std::size_t> edge_at(std::size_t node, std::size_t slot) const {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].a == node && edges[e].slot_a == slot) return e;
      if (edges[e].b == node && edges[e].slot_b == slot) return e;
    }
    return std::nullopt;
  }
  std::size_t other_end(std::size_t e, std::size_t node) const { return edges[e].a == node ? edges[e].b : edges[e].a; }
  std::vector<std::size_t> neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (const auto& g : edges) {
      if (g.a == i) out.push_back(g.b);
      if (g.b == i) out.push_back(g.a);
    }
    return out;
  }
  bool all_seifert() const {
    return std::all_of(nodes.begin(), nodes.end(), [](const Node& n) { return std::holds_alternative<SeifertPiece>(n); });
  }

  friend bool operator==(const DecompositionGraph&, const DecompositionGraph&) = default;
};

struct S2xS1 {
  friend bool operator==(const S2xS1&, const S2xS1&) = default;
};
struct FinitePi1 {
  std::int64_t order = 1;
  bool fake = false;
  friend bool operator==(const FinitePi1&, const FinitePi1&) = default;
};
struct ClosedHyperbolic {
  friend bool operator==(const ClosedHyperbolic&, const ClosedHyperbolic&) = default;
};
struct Irreducible {
  DecompositionGraph graph;
  friend bool operator==(const Irreducible&, const Irreducible&) = default;
};

using Summand = std::variant<S2xS1, FinitePi1, ClosedHyperbolic, Irreducible>;

struct ManifoldSpec {
  std::vector<Summand> summands;
  friend bool operator==(const ManifoldSpec&, const ManifoldSpec&) = default;
};

/// Summands with trivial fundamental group: S^3 and homotopy spheres.
inline bool is_trivial_pi1(const Summand& s) {
  const auto* f = std::get_if<FinitePi1>(&s);
  return f && f->order == 1;
}

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const {
    std::string out;
    for (const auto& v : violations) out += v.code + ": " + v.message + "\n";
    return out;
  }
};

struct ValidationOptions {
  // Covers may contain product pieces that a minimal decomposition never has.
  bool require_minimal = true;
};

inline void validate_graph(const DecompositionGraph& g, const std::string& where, const ValidationOptions& opt,
                           std::vector<Violation>& out) {
  auto add = [&](std::string code, std::string msg) { out.push_back({std::move(code), where + msg}); };
  if (g.nodes.empty()) {
    add("EmptyGraph", "graph has no nodes");
    return;
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (const auto* s = g.seifert(i)) {
      try {
        check_piece(*s);
      } catch (const InputError& e) {
        add("InvalidPiece", "node " + std::to_string(i) + ": " + e.what());
      }
    } else if (std::get<HyperbolicPiece>(g.nodes[i]).cusps < 0) {
      add("InvalidPiece", "node " + std::to_string(i) + ": negative cusp count");
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> used;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    bool bad = false;
    for (auto [n, s] : {std::pair{ed.a, ed.slot_a}, std::pair{ed.b, ed.slot_b}}) {
      if (n >= g.nodes.size()) {
        add("BadEdge", "edge " + std::to_string(e) + " names missing node " + std::to_string(n));
        bad = true;
        continue;
      }
      if (static_cast<std::int64_t>(s) >= g.slot_count(n)) {
        add("SlotCountMismatch", "edge " + std::to_string(e) + " uses slot " + std::to_string(s) + " of node " +
                                     std::to_string(n) + " which has " + std::to_string(g.slot_count(n)) +
                                     " boundary tori");
        bad = true;
        continue;
      }
      if (!used.insert({n, s}).second) {
        add("SlotReused", "slot " + std::to_string(s) + " of node " + std::to_string(n) + " is glued twice");
        bad = true;
      }
    }
    (void)bad;
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (std::int64_t s = 0; s < g.slot_count(i); ++s)
      if (!used.count({i, static_cast<std::size_t>(s)}))
        add("DanglingBoundary", "slot " + std::to_string(s) + " of node " + std::to_string(i) + " is not glued");
  // Connectivity.
  std::vector<std::size_t> parent(g.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& ed : g.edges)
    if (ed.a < g.nodes.size() && ed.b < g.nodes.size()) parent[find(ed.a)] = find(ed.b);
  for (std::size_t i = 1; i < g.nodes.size(); ++i)
    if (find(i) != find(0)) {
      add("Disconnected", "node " + std::to_string(i) + " is not connected to node 0");
      break;
    }
  if (g.nodes.size() == 1) {
    if (const auto* s = g.seifert(0); s && s->boundary == 0) {
      if (s->base_orientable && s->genus == 0 && s->p() <= 2)
        add("NotIrreducibleSeifert",
            "closed Seifert piece over S^2 with at most two singular fibers has finite or Z fundamental group; "
            "describe it as a finite_pi1 or s2xs1 summand");
      if (!s->base_orientable && s->genus == 1 && s->p() == 0)
        add("NotIrreducibleSeifert",
            "closed Seifert piece over RP^2 without singular fibers is a prism manifold or RP^3#RP^3; describe "
            "it by its prime summands");
    }
  }
  if (opt.require_minimal && g.nodes.size() > 1) {
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const auto* s = g.seifert(i);
      if (s && s->base_orientable && s->genus == 0 && s->boundary + s->p() <= 2)
        add("MinimalityViolation", "node " + std::to_string(i) + " (orientable genus 0, b=" +
                                       std::to_string(s->boundary) + ", p=" + std::to_string(s->p()) +
                                       ") is a solid torus or T^2 x I up to fibration and cannot be a piece of a "
                                       "minimal decomposition");
    }
  }
}

inline ValidationReport validate(const ManifoldSpec& spec, const ValidationOptions& opt = {}) {
  ValidationReport rep;
  if (spec.summands.empty()) rep.violations.push_back({"EmptySpec", "manifold has no summands"});
  for (std::size_t k = 0; k < spec.summands.size(); ++k) {
    const std::string where = "summand " + std::to_string(k) + ": ";
    if (const auto* f = std::get_if<FinitePi1>(&spec.summands[k])) {
      if (f->order < 1) rep.violations.push_back({"InvalidOrder", where + "order must be >= 1"});
      if (f->fake && f->order != 1)
        rep.violations.push_back({"InvalidOrder", where + "a fake sphere has trivial fundamental group"});
    } else if (const auto* irr = std::get_if<Irreducible>(&spec.summands[k])) {
      validate_graph(irr->graph, where, opt, rep.violations);
    }
  }
  return rep;
}

inline void validate_or_throw(const ManifoldSpec& spec, const ValidationOptions& opt = {}) {
  auto rep = validate(spec, opt);
  if (!rep.ok()) throw ValidationError(rep.to_string());
}

inline void validate_graph_or_throw(const DecompositionGraph& g, const ValidationOptions& opt = {}) {
  std::vector<Violation> v;
  validate_graph(g, "", opt, v);
  if (!v.empty()) {
    ValidationReport rep{v};
    throw ValidationError(rep.to_string());
  }
}

struct NonseparatingWitness {
  enum class Kind { CycleEdge, GenusPiece } kind;
  std::size_t index;  // edge index or node index
};

/// Edges lying on a cycle (non-bridges), by DFS low-link; parallel edges and
/// self-loops count as cycles.
inline std::vector<std::size_t> non_bridge_edges(const DecompositionGraph& g) {
  const auto n = g.nodes.size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (neighbor, edge)
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    adj[g.edges[e].a].push_back({g.edges[e].b, e});
    if (g.edges[e].a != g.edges[e].b) adj[g.edges[e].b].push_back({g.edges[e].a, e});
  }
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> bridge(g.edges.size(), false);
  int timer = 0;
  std::function<void(std::size_t, std::optional<std::size_t>)> dfs = [&](std::size_t v, std::optional<std::size_t> via) {
    disc[v] = low[v] = timer++;
    for (auto [w, e] : adj[v]) {
      if (via && e == *via) continue;
      if (disc[w] < 0) {
        dfs(w, e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] > disc[v]) bridge[e] = true;
      } else {
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (disc[v] < 0) dfs(v, std::nullopt);
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (!bridge[e]) out.push_back(e);
  return out;
}

inline std::optional<NonseparatingWitness> has_nonseparating_torus(const DecompositionGraph& g) {
  if (auto nb = non_bridge_edges(g); !nb.empty()) return NonseparatingWitness{NonseparatingWitness::Kind::CycleEdge, nb.front()};
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    if (const auto* s = g.seifert(i); s && s->base_orientable && s->genus >= 1)
      return NonseparatingWitness{NonseparatingWitness::Kind::GenusPiece, i};
  return std::nullopt;
}

/// The base orbifold of a Moebius-band piece with no singular fibers also
/// fibers over a disk with two (2,1) fibers.
inline bool is_moebius_piece(const SeifertPiece& s) {
  return !s.base_orientable && s.genus == 1 && s.p() == 0 && s.boundary == 1;
}

inline SeifertPiece moebius_refibration(const SeifertPiece& s) {
  if (!is_moebius_piece(s)) throw RecipeNotApplicable("piece is not a Moebius-band piece without singular fibers");
  return SeifertPiece{true, 0, 1, {{2, 1}, {2, 1}}, {}, true};
}

enum class PieceCase { BoundaryThree = 1, NonorientableTwoBoundary, TwoCurves, FigureEightNoTwo, AllHaveTwo, NonorientableEnd };

struct PieceClassification {
  PieceCase tag;
  int number() const { return static_cast<int>(tag); }
  std::size_t piece = 0;
  std::int64_t p = 0, p_prime = 0, b = 0;
  std::vector<std::int64_t> multiplicities;
};

/// First case (1..6) of the Seifert-gluing analysis that applies, with the
/// lowest-index piece witnessing it. Input: validated all-Seifert graph, at
/// least two nodes, no nonseparating torus.
inline PieceClassification classify_pieces(const DecompositionGraph& g) {
  if (!g.all_seifert()) throw ClassificationError("classify_pieces needs an all-Seifert graph");
  if (has_nonseparating_torus(g)) throw ClassificationError("classify_pieces needs a graph without nonseparating tori");
  auto make = [&](PieceCase tag, std::size_t i) {
    const auto& s = *g.seifert(i);
    PieceClassification c{tag, i, s.p(), s.p_prime(), s.boundary, {}};
    for (const auto& f : s.fibers) c.multiplicities.push_back(f.alpha);
    return c;
  };
  const auto n = g.nodes.size();
  using Pred = std::function<bool(const SeifertPiece&)>;
  const std::vector<std::pair<PieceCase, Pred>> per_piece = {
      {PieceCase::BoundaryThree, [](const SeifertPiece& s) { return s.base_orientable && s.boundary >= 3; }},
      {PieceCase::NonorientableTwoBoundary, [](const SeifertPiece& s) { return !s.base_orientable && s.boundary >= 2; }},
      {PieceCase::TwoCurves, [](const SeifertPiece& s) { return s.base_orientable && s.p() + s.boundary > 3; }},
      {PieceCase::FigureEightNoTwo,
       [](const SeifertPiece& s) {
         return s.base_orientable && s.p() + s.boundary == 3 && s.boundary >= 1 && s.boundary <= 2 && !s.has_multiplicity(2);
       }},
  };
  for (const auto& [tag, pred] : per_piece)
    for (std::size_t i = 0; i < n; ++i)
      if (pred(*g.seifert(i))) return make(tag, i);
  for (std::size_t i = 0; i < n; ++i)
    if (!g.seifert(i)->base_orientable) return make(PieceCase::NonorientableEnd, i);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = *g.seifert(i);
    if (!(s.p() + s.boundary == 3 && s.boundary >= 1 && s.boundary <= 2 && s.has_multiplicity(2)))
      throw ClassificationError("node " + std::to_string(i) + " fits none of the six gluing cases");
  }
  return make(PieceCase::AllHaveTwo, 0);
}

}  // namespace loopcert
