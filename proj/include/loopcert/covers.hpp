#pragma once

// Double covers of Seifert pieces and of whole decomposition graphs, kept at
// the level of Seifert invariants plus boundary bookkeeping.

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loopcert/decomposition.hpp"
#include "loopcert/error.hpp"

namespace loopcert {

using Rational = boost::rational<std::int64_t>;

inline std::string rational_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Orbifold Euler characteristic of the base.
inline Rational orbifold_euler(const SeifertPiece& s) {
  Rational chi = s.base_orientable ? Rational(2 - 2 * s.genus - s.boundary) : Rational(2 - s.genus - s.boundary);
  for (const auto& f : s.fibers) chi -= Rational(1) - Rational(1, f.alpha);
  return chi;
}

inline Rational orbifold_euler(const DecompositionGraph& g) {
  Rational sum(0);
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    if (const auto* s = g.seifert(i)) sum += orbifold_euler(*s);
  return sum;
}

enum class ConstructionId {
  OrientationCover,
  Construction1,
  Construction2,
  Construction3,
  AssemblyB1,
  AssemblyB2,
  AssemblyB3,
  Case6Recipe,
};

inline std::string construction_name(ConstructionId id) {
  switch (id) {
    case ConstructionId::OrientationCover: return "OrientationCover";
    case ConstructionId::Construction1: return "Construction1";
    case ConstructionId::Construction2: return "Construction2";
    case ConstructionId::Construction3: return "Construction3";
    case ConstructionId::AssemblyB1: return "AssemblyB1";
    case ConstructionId::AssemblyB2: return "AssemblyB2";
    case ConstructionId::AssemblyB3: return "AssemblyB3";
    case ConstructionId::Case6Recipe: return "Case6Recipe";
  }
  return "?";
}

inline ConstructionId parse_construction(const std::string& s) {
  for (auto id : {ConstructionId::OrientationCover, ConstructionId::Construction1, ConstructionId::Construction2,
                  ConstructionId::Construction3, ConstructionId::AssemblyB1, ConstructionId::AssemblyB2,
                  ConstructionId::AssemblyB3, ConstructionId::Case6Recipe})
    if (construction_name(id) == s) return id;
  throw ParseError("unknown construction '" + s + "'");
}

struct SlotPreimage {
  std::size_t slot = 0;
  int degree = 1;
  friend bool operator==(const SlotPreimage&, const SlotPreimage&) = default;
};

struct CoverResult {
  SeifertPiece total_piece;
  ConstructionId id;
  std::string deck_action;
  // boundary_map[base slot] lists cover slots over it; degrees sum to 2.
  std::vector<std::vector<SlotPreimage>> boundary_map;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw RecipeNotApplicable(what);
}

inline CoverResult orientation_double_cover(const SeifertPiece& s) {
  require(!s.base_orientable, "orientation cover: base is already orientable");
  check_piece(s);
  SeifertPiece t{true, s.genus - 1, 2 * s.boundary, {}, {}, true};
  for (int copy = 0; copy < 2; ++copy)
    for (const auto& f : s.fibers) t.fibers.push_back(f);
  CoverResult r{t, ConstructionId::OrientationCover, "fiber-orientation swap", {}};
  for (std::int64_t i = 0; i < s.boundary; ++i)
    r.boundary_map.push_back({{static_cast<std::size_t>(2 * i), 1}, {static_cast<std::size_t>(2 * i + 1), 1}});
  return r;
}

/// Base: disk with two holes and one (2,1) fiber. Cover: disk with three
/// holes; base slot `involution_slot` lifts to a single torus with an
/// involution, the other base slot to two tori.
inline CoverResult construction1(const SeifertPiece& s, std::size_t involution_slot = 0) {
  require(s.base_orientable, "Construction1: base must be orientable");
  require(s.genus == 0, "Construction1: genus must be 0");
  require(s.boundary == 2, "Construction1: need exactly 2 boundary tori");
  require(s.fibers == std::vector<Fiber>{{2, 1}}, "Construction1: fibers must be exactly {(2,1)}");
  require(involution_slot < 2, "Construction1: involution slot must be 0 or 1");
  CoverResult r{SeifertPiece{true, 0, 3, {}, {}, true}, ConstructionId::Construction1,
                "rotation by pi on the base disk and on the fiber", {}};
  r.boundary_map.resize(2);
  r.boundary_map[involution_slot] = {{0, 2}};
  r.boundary_map[1 - involution_slot] = {{1, 1}, {2, 1}};
  return r;
}

/// Base: disk, fibers {(2,1),(r,s)}. Cover: disk, fibers {(r,s),(r,s)}, the
/// single boundary torus double covering the base boundary.
inline CoverResult construction2(const SeifertPiece& s) {
  require(s.base_orientable, "Construction2: base must be orientable");
  require(s.genus == 0, "Construction2: genus must be 0");
  require(s.boundary == 1, "Construction2: need exactly 1 boundary torus");
  require(s.fibers.size() == 2, "Construction2: need exactly 2 singular fibers");
  std::optional<Fiber> other;
  if (s.fibers[0] == Fiber{2, 1})
    other = s.fibers[1];
  else if (s.fibers[1] == Fiber{2, 1})
    other = s.fibers[0];
  require(other.has_value(), "Construction2: one fiber must be (2,1)");
  CoverResult r{SeifertPiece{true, 0, 1, {*other, *other}, {}, true}, ConstructionId::Construction2,
                "dihedral quotient: rotation by pi about the x-axis", {{{0, 2}}}};
  return r;
}

/// Base: disk, fibers {(2,1),(2,1)}. Cover: annulus without singular fibers;
/// its two boundary tori both map onto the base boundary.
inline CoverResult construction3(const SeifertPiece& s) {
  require(s.base_orientable, "Construction3: base must be orientable");
  require(s.genus == 0, "Construction3: genus must be 0");
  require(s.boundary == 1, "Construction3: need exactly 1 boundary torus");
  require(s.fibers == std::vector<Fiber>({{2, 1}, {2, 1}}), "Construction3: fibers must be exactly {(2,1),(2,1)}");
  return CoverResult{SeifertPiece{true, 0, 2, {}, {}, true}, ConstructionId::Construction3,
                     "rotation by pi about the annulus axis", {{{0, 1}, {1, 1}}}};
}

/// Checks degree bookkeeping and Euler doubling for a single-piece cover.
inline std::vector<std::string> check_cover_result(const SeifertPiece& base, const CoverResult& r) {
  std::vector<std::string> errs;
  if (orbifold_euler(r.total_piece) != Rational(2) * orbifold_euler(base))
    errs.push_back("Euler characteristic " + rational_string(orbifold_euler(r.total_piece)) + " is not twice " +
                   rational_string(orbifold_euler(base)));
  if (static_cast<std::int64_t>(r.boundary_map.size()) != base.boundary) errs.push_back("boundary map size mismatch");
  std::vector<int> hit(static_cast<std::size_t>(r.total_piece.boundary), 0);
  for (std::size_t s = 0; s < r.boundary_map.size(); ++s) {
    int deg = 0;
    for (const auto& pre : r.boundary_map[s]) {
      deg += pre.degree;
      if (pre.slot >= hit.size())
        errs.push_back("cover slot out of range");
      else
        ++hit[pre.slot];
    }
    if (deg != 2) errs.push_back("base slot " + std::to_string(s) + " has total preimage degree " + std::to_string(deg));
  }
  for (std::size_t i = 0; i < hit.size(); ++i)
    if (hit[i] != 1) errs.push_back("cover slot " + std::to_string(i) + " lies over " + std::to_string(hit[i]) + " base slots");
  return errs;
}

struct CoverGraph {
  DecompositionGraph cover;
  ConstructionId recipe;
  std::vector<std::size_t> node_map;                    // cover node -> base node
  std::vector<std::string> node_origin;                 // construction name or "copy0"/"copy1"
  std::vector<std::vector<SlotPreimage>> slot_map;      // per cover node, per slot: (base slot, degree)
  std::vector<std::size_t> edge_map;                    // cover edge -> base edge
  std::vector<std::size_t> rewritten;                   // base nodes refibered before matching
};

namespace detail {

struct LocalCover {
  std::optional<CoverResult> result;  // empty: two disjoint copies
};

inline bool chain_shape(const DecompositionGraph& g, std::string& why) {
  if (g.nodes.size() < 2) {
    why = "need at least two pieces";
    return false;
  }
  if (g.edges.size() != g.nodes.size() - 1) {
    why = "graph is not a tree";
    return false;
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto* s = g.seifert(i);
    if (!s) {
      why = "node " + std::to_string(i) + " is not Seifert";
      return false;
    }
    if (!s->base_orientable || s->genus != 0) {
      why = "node " + std::to_string(i) + " does not have a planar orientable base";
      return false;
    }
    const bool end = s->boundary == 1 && s->p() == 2 && s->has_multiplicity(2);
    const bool mid = s->boundary == 2 && s->fibers == std::vector<Fiber>{{2, 1}};
    if (!end && !mid) {
      why = "node " + std::to_string(i) + " is neither an end piece (b=1, p=2, 2 in A) nor a middle piece (b=2, fibers {(2,1)})";
      return false;
    }
  }
  return true;
}

inline std::int64_t other_multiplicity(const SeifertPiece& s) {
  return s.fibers[0].alpha == 2 ? s.fibers[1].alpha : s.fibers[0].alpha;
}

}  // namespace detail

/// Replaces every Moebius-band piece without singular fibers by its disk
/// refibration with fibers {(2,1),(2,1)}.
inline DecompositionGraph normalize_moebius(const DecompositionGraph& g, std::vector<std::size_t>* rewritten = nullptr) {
  DecompositionGraph out = g;
  for (std::size_t i = 0; i < out.nodes.size(); ++i)
    if (const auto* s = out.seifert(i); s && is_moebius_piece(*s)) {
      out.nodes[i] = moebius_refibration(*s);
      if (rewritten) rewritten->push_back(i);
    }
  return out;
}

/// Recipe for a graph in gluing case 5 or 6. Moebius pieces are refibered
/// first; a remaining nonorientable piece takes the case-6 recipe.
inline ConstructionId select_recipe(const DecompositionGraph& input) {
  const auto g = normalize_moebius(input);
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    if (const auto* s = g.seifert(i); s && !s->base_orientable) return ConstructionId::Case6Recipe;
  std::vector<std::size_t> ends;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    if (const auto* s = g.seifert(i); s && s->boundary == 1) ends.push_back(i);
  const std::vector<Fiber> two_two{{2, 1}, {2, 1}};
  if (!ends.empty() && std::all_of(ends.begin(), ends.end(), [&](std::size_t i) { return g.seifert(i)->fibers == two_two; }))
    return ConstructionId::AssemblyB3;
  return g.nodes.size() >= 3 ? ConstructionId::AssemblyB1 : ConstructionId::AssemblyB2;
}

/// Builds the double cover of a whole graph for the given recipe. Pattern
/// checks come first; the first failed condition is reported.
inline CoverGraph assemble_double_cover(const DecompositionGraph& input, ConstructionId recipe) {
  validate_graph_or_throw(input);
  std::vector<std::size_t> rewritten;
  const auto g = normalize_moebius(input, &rewritten);
  const auto n = g.nodes.size();
  std::vector<detail::LocalCover> local(n);
  std::string why;
  switch (recipe) {
    case ConstructionId::AssemblyB1: {
      require(detail::chain_shape(g, why), "AssemblyB1: " + why);
      require(n >= 3, "AssemblyB1: need at least three pieces");
      std::optional<std::size_t> m1;
      for (std::size_t i = 0; i < n && !m1; ++i) {
        const auto& s = *g.seifert(i);
        if (s.boundary == 1 && detail::other_multiplicity(s) != 2) m1 = i;
      }
      require(m1.has_value(), "AssemblyB1: no end piece with fibers {(2,1),(r,s)}, r != 2");
      const auto e = *g.edge_at(*m1, 0);
      const auto m2 = g.other_end(e, *m1);
      const auto& ed = g.edges[e];
      const auto facing = ed.a == m2 ? ed.slot_a : ed.slot_b;
      local[*m1].result = construction2(*g.seifert(*m1));
      local[m2].result = construction1(*g.seifert(m2), facing);
      break;
    }
    case ConstructionId::AssemblyB2: {
      require(detail::chain_shape(g, why), "AssemblyB2: " + why);
      require(n == 2, "AssemblyB2: need exactly two pieces");
      for (std::size_t i = 0; i < 2; ++i) local[i].result = construction2(*g.seifert(i));
      break;
    }
    case ConstructionId::AssemblyB3: {
      require(detail::chain_shape(g, why), "AssemblyB3: " + why);
      std::vector<std::size_t> ends;
      for (std::size_t i = 0; i < n; ++i)
        if (g.seifert(i)->boundary == 1) ends.push_back(i);
      for (auto i : ends) {
        require(g.seifert(i)->fibers == std::vector<Fiber>({{2, 1}, {2, 1}}),
                "AssemblyB3: end piece " + std::to_string(i) + " must have fibers {(2,1),(2,1)}");
        local[i].result = construction3(*g.seifert(i));
      }
      break;
    }
    case ConstructionId::Case6Recipe: {
      std::optional<std::size_t> m1;
      for (std::size_t i = 0; i < n && !m1; ++i)
        if (const auto* s = g.seifert(i); s && !s->base_orientable && s->boundary == 1) m1 = i;
      require(m1.has_value(), "Case6Recipe: no nonorientable-base piece with one boundary torus");
      local[*m1].result = orientation_double_cover(*g.seifert(*m1));
      break;
    }
    default:
      throw RecipeNotApplicable("assemble_double_cover: " + construction_name(recipe) + " is a single-piece construction");
  }

  CoverGraph out{{}, recipe, {}, {}, {}, {}, rewritten};
  // preimages[v][slot] = (cover node, cover slot, degree)
  struct Pre {
    std::size_t node, slot;
    int degree;
  };
  std::vector<std::vector<std::vector<Pre>>> pre(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto slots = static_cast<std::size_t>(g.slot_count(v));
    pre[v].resize(slots);
    if (local[v].result) {
      const auto& r = *local[v].result;
      const auto id = out.cover.nodes.size();
      out.cover.nodes.push_back(r.total_piece);
      out.node_map.push_back(v);
      out.node_origin.push_back(construction_name(r.id));
      out.slot_map.emplace_back(static_cast<std::size_t>(r.total_piece.boundary));
      for (std::size_t s = 0; s < slots; ++s)
        for (const auto& p : r.boundary_map[s]) {
          pre[v][s].push_back({id, p.slot, p.degree});
          out.slot_map[id][p.slot] = {s, p.degree};
        }
    } else {
      for (int copy = 0; copy < 2; ++copy) {
        const auto id = out.cover.nodes.size();
        out.cover.nodes.push_back(g.nodes[v]);
        out.node_map.push_back(v);
        out.node_origin.push_back("copy" + std::to_string(copy));
        out.slot_map.emplace_back();
        for (std::size_t s = 0; s < slots; ++s) {
          pre[v][s].push_back({id, s, 1});
          out.slot_map[id].push_back({s, 1});
        }
      }
    }
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    const auto& P = pre[ed.a][ed.slot_a];
    const auto& Q = pre[ed.b][ed.slot_b];
    require(P.size() == Q.size(), construction_name(recipe) + ": boundary degrees disagree across edge " + std::to_string(e));
    for (std::size_t k = 0; k < P.size(); ++k) {
      out.cover.edges.push_back({P[k].node, P[k].slot, Q[k].node, Q[k].slot});
      out.edge_map.push_back(e);
    }
  }
  return out;
}

/// Independent consistency check of an assembled cover against its base.
inline std::vector<std::string> check_cover_graph(const DecompositionGraph& input, const CoverGraph& c) {
  std::vector<std::string> errs;
  const auto base = normalize_moebius(input);
  if (orbifold_euler(c.cover) != Rational(2) * orbifold_euler(base))
    errs.push_back("cover Euler characteristic " + rational_string(orbifold_euler(c.cover)) + " is not twice " +
                   rational_string(orbifold_euler(base)));
  std::vector<Violation> v;
  validate_graph(c.cover, "cover: ", ValidationOptions{false}, v);
  for (const auto& x : v) errs.push_back(x.message);
  if (c.node_map.size() != c.cover.nodes.size() || c.slot_map.size() != c.cover.nodes.size())
    errs.push_back("node map size mismatch");
  if (c.edge_map.size() != c.cover.edges.size()) errs.push_back("edge map size mismatch");
  if (!errs.empty()) return errs;
  // Each base node is covered with total degree 2: two copies or one double cover.
  std::vector<int> node_deg(base.nodes.size(), 0);
  for (std::size_t i = 0; i < c.node_map.size(); ++i) {
    if (c.node_map[i] >= base.nodes.size()) {
      errs.push_back("cover node maps outside the base");
      return errs;
    }
    node_deg[c.node_map[i]] += c.node_origin[i].rfind("copy", 0) == 0 ? 1 : 2;
  }
  for (std::size_t v2 = 0; v2 < node_deg.size(); ++v2)
    if (node_deg[v2] != 2) errs.push_back("base node " + std::to_string(v2) + " is covered with degree " + std::to_string(node_deg[v2]));
  // Boundary degree per base slot, and edges over edges.
  std::vector<std::vector<int>> slot_deg(base.nodes.size());
  for (std::size_t v2 = 0; v2 < base.nodes.size(); ++v2) slot_deg[v2].assign(static_cast<std::size_t>(base.slot_count(v2)), 0);
  for (std::size_t i = 0; i < c.slot_map.size(); ++i) {
    if (static_cast<std::int64_t>(c.slot_map[i].size()) != c.cover.slot_count(i)) {
      errs.push_back("slot map of cover node " + std::to_string(i) + " has wrong size");
      continue;
    }
    for (const auto& sp : c.slot_map[i]) {
      auto& row = slot_deg[c.node_map[i]];
      if (sp.slot >= row.size())
        errs.push_back("cover node " + std::to_string(i) + " maps a slot outside its base piece");
      else
        row[sp.slot] += sp.degree;
    }
  }
  for (std::size_t v2 = 0; v2 < slot_deg.size(); ++v2)
    for (std::size_t s = 0; s < slot_deg[v2].size(); ++s)
      if (slot_deg[v2][s] != 2)
        errs.push_back("base slot " + std::to_string(s) + " of node " + std::to_string(v2) + " has preimage degree " +
                       std::to_string(slot_deg[v2][s]));
  std::vector<int> edge_deg(base.edges.size(), 0);
  for (std::size_t e = 0; e < c.cover.edges.size(); ++e) {
    const auto& ce = c.cover.edges[e];
    const auto be = c.edge_map[e];
    if (be >= base.edges.size()) {
      errs.push_back("cover edge maps outside the base");
      continue;
    }
    const auto& b = base.edges[be];
    const auto sa = c.slot_map[ce.a][ce.slot_a];
    const auto sb = c.slot_map[ce.b][ce.slot_b];
    const bool fwd = c.node_map[ce.a] == b.a && sa.slot == b.slot_a && c.node_map[ce.b] == b.b && sb.slot == b.slot_b;
    const bool bwd = c.node_map[ce.a] == b.b && sa.slot == b.slot_b && c.node_map[ce.b] == b.a && sb.slot == b.slot_a;
    if (!fwd && !bwd) errs.push_back("cover edge " + std::to_string(e) + " does not lie over base edge " + std::to_string(be));
    if (sa.degree != sb.degree) errs.push_back("cover edge " + std::to_string(e) + " glues tori of different degree");
    edge_deg[be] += sa.degree;
  }
  for (std::size_t e = 0; e < edge_deg.size(); ++e)
    if (edge_deg[e] != 2) errs.push_back("base edge " + std::to_string(e) + " is covered with degree " + std::to_string(edge_deg[e]));
  if (c.recipe == ConstructionId::AssemblyB3 && non_bridge_edges(c.cover).empty())
    errs.push_back("AssemblyB3 output has no nonseparating torus");
  return errs;
}

}  // namespace loopcert
