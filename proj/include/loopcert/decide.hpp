#pragma once

// The case engine: a validated manifold spec goes in, a verdict with its
// certificate comes out. Branches are tried in a fixed order and the first
// that applies wins.

#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "loopcert/certify.hpp"
#include "loopcert/covers.hpp"
#include "loopcert/decomposition.hpp"
#include "loopcert/spec_io.hpp"
#include "loopcert/witness.hpp"

namespace loopcert {

namespace cite {
inline const char* kConnectedSum = "connected-sum proposition: pi_1(M_i) != 1 for both summands";
inline const char* kSphere = "nonseparating 2-sphere corollary";
inline const char* kFinite = "finite-group proposition: finite fundamental group gives nontrivial extended loop products";
inline const char* kHyperbolic = "closed hyperbolic manifolds are algebraically hyperbolic, so all extended loop products vanish";
inline const char* kTorus = "nonseparating torus proposition: intersection numbers with the torus";
inline const char* kCentralizer = "closed Seifert proposition: h is central of infinite order and alpha is not in <h>";
inline const char* kMalnormal = "lemma on h g1 g2 versus h g2 g1, hypothesis (i): g1^-1 H g1 meets H trivially";
inline const char* kSeifertChoice = "hyperbolic gluing: h is not in the centralizer of the Seifert side";
}  // namespace cite

namespace detail {

class StepList {
 public:
  std::size_t add(const std::string& type, Json body) {
    steps_.push_back({steps_.size(), type, std::move(body)});
    return steps_.size() - 1;
  }
  std::vector<CertStep> take() { return std::move(steps_); }

 private:
  std::vector<CertStep> steps_;
};

inline std::int64_t smallest_prime_factor(std::int64_t n) {
  for (std::int64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return q;
  return n;
}

/// Order of the element modeled in a finite factor: an odd prime when one
/// divides n, else 2 for n = 2 and 4 otherwise (2-groups with periodic
/// cohomology are cyclic or generalized quaternion).
inline std::int64_t preferred_element_order(std::int64_t n) {
  std::int64_t m = n;
  while (m % 2 == 0) m /= 2;
  if (m > 1) return smallest_prime_factor(m);
  return n == 2 ? 2 : 4;
}

inline std::int64_t factor_order(const Summand& s) {
  if (const auto* f = std::get_if<FinitePi1>(&s)) return preferred_element_order(f->order);
  if (Verifier::has_finite_pi1(s)) {
    // c1 maps to an element of order alpha_1 in the base orbifold group.
    const auto& p = *std::get<Irreducible>(s).graph.seifert(0);
    return preferred_element_order(p.fibers.at(0).alpha);
  }
  return 0;
}

struct Mod2Result {
  Json body;
  std::vector<GenWord> survivors;
};

inline Mod2Result mod2_body(ArgumentId arg, const std::vector<std::string>& gens, const Json& site) {
  const auto w = build_witness(arg, gens);
  const auto terms = term_words(w);
  const auto surv = mod2_survivors(terms, free_model_hom(gens));
  Json body{{"argument", argument_name(arg)},
            {"generators", gens},
            {"site", site},
            {"terms", format_words(terms)},
            {"hom", free_model_record(gens)},
            {"survivors", format_words(surv)}};
  return {body, surv};
}

struct HomEntry {
  QuotientHom hom;
  Json record;
};

struct AxiomPairs {
  std::size_t index;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

inline Json three_body(ArgumentId arg, const std::vector<std::string>& gens, const Json& site, const std::vector<HomEntry>& homs,
                       const std::vector<AxiomPairs>& axioms) {
  const auto w = build_witness(arg, gens);
  const auto terms = term_words(w);
  DistinctEdges all;
  Json hs = Json::array();
  for (const auto& h : homs) {
    std::vector<NFWord> imgs;
    for (const auto& t : terms) imgs.push_back(apply_hom(h.hom, t));
    const auto e = distinct_edges(imgs);
    all.insert(e.begin(), e.end());
    hs.push_back(Json{{"hom", h.record}, {"images", format_words(imgs)}, {"edges", e}});
  }
  std::vector<std::size_t> refs;
  for (const auto& a : axioms) {
    refs.push_back(a.index);
    all.insert(a.pairs.begin(), a.pairs.end());
  }
  const auto tri = find_triangle(all, terms.size());
  if (!tri) throw ClassificationError(argument_name(arg) + ": fewer than three distinct classes");
  return Json{{"argument", argument_name(arg)},
              {"generators", gens},
              {"site", site},
              {"terms", format_words(terms)},
              {"homs", hs},
              {"axioms", refs},
              {"edges", all},
              {"triangle", *tri}};
}

inline Json pair_words(const std::vector<GenWord>& terms, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Json out = Json::array();
  for (const auto& [i, j] : pairs) out.push_back(Json::array({format_gen_word(terms[i]), format_gen_word(terms[j])}));
  return out;
}

inline Json axiom_body(const std::string& kind, const std::string& citation, const std::string& statement, Json site,
                       std::optional<Json> pairs = std::nullopt) {
  Json j{{"kind", kind}, {"citation", citation}, {"statement", statement}, {"site", std::move(site)}};
  if (pairs) j["distinct_pairs"] = *pairs;
  return j;
}

// --- abelian quotients of a closed piece ---

inline const std::vector<std::int64_t>& small_primes() {
  static const std::vector<std::int64_t> p = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  return p;
}

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, b = mod(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

/// Basis of the solutions x (mod p) of sum_g e(r, g) x_g = 0 for every relator.
inline std::vector<std::vector<std::int64_t>> relator_nullspace(const GroupPresentation& pres, std::int64_t p) {
  const auto n = pres.generators.size();
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < n; ++i) col[pres.generators[i]] = i;
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& r : pres.relators) {
    std::vector<std::int64_t> row(n, 0);
    for (const auto& l : r) row[col.at(l.symbol)] = mod(row[col.at(l.symbol)] + l.exp, p);
    rows.push_back(row);
  }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && rows[r][c] == 0) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[r], rows[rank]);
    const auto iv = inv_mod(rows[rank][c], p);
    for (auto& x : rows[rank]) x = x * iv % p;
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (k != rank && rows[k][c]) {
        const auto f = rows[k][c];
        for (std::size_t j = 0; j < n; ++j) rows[k][j] = mod(rows[k][j] - f * rows[rank][j], p);
      }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<std::int64_t> v(n, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = mod(-rows[k][free], p);
    basis.push_back(v);
  }
  return basis;
}

inline QuotientHom abelian_hom(const GroupPresentation& pres, std::int64_t p, const std::vector<std::int64_t>& v) {
  auto group = make_group({{"z", p}});
  QuotientHom hom{pres, group, {}, false, std::nullopt};
  for (std::size_t i = 0; i < v.size(); ++i) hom.images.emplace(pres.generators[i], reduce(group, {RawLetter{0, v[i]}}));
  return check_hom(std::move(hom));
}

struct AbelianChoice {
  std::int64_t p;
  std::vector<std::int64_t> v;
  DistinctEdges edges;
};

/// Up to two abelian quotients Z_p chosen greedily to separate as many of
/// the four terms (alpha h, h, alpha, 1) as possible.
inline std::vector<AbelianChoice> abelian_separators(const GroupPresentation& pres, const std::string& alpha) {
  const auto n = pres.generators.size();
  const auto ia = static_cast<std::size_t>(std::find(pres.generators.begin(), pres.generators.end(), alpha) - pres.generators.begin());
  const auto ih = static_cast<std::size_t>(std::find(pres.generators.begin(), pres.generators.end(), kFiberSymbol) - pres.generators.begin());
  std::vector<AbelianChoice> candidates;
  for (auto p : small_primes()) {
    const auto basis = relator_nullspace(pres, p);
    const auto d = basis.size();
    std::vector<std::vector<std::int64_t>> vs;
    std::int64_t total = 1;
    for (std::size_t i = 0; i < d && total <= 4096; ++i) total *= p;
    auto combine = [&](const std::vector<std::int64_t>& coef) {
      std::vector<std::int64_t> v(n, 0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) v[j] = (v[j] + coef[i] * basis[i][j]) % p;
      vs.push_back(v);
    };
    if (total <= 4096) {
      std::vector<std::int64_t> coef(d, 0);
      for (std::int64_t c = 1; c < total; ++c) {
        auto x = c;
        for (std::size_t i = 0; i < d; ++i) {
          coef[i] = x % p;
          x /= p;
        }
        combine(coef);
      }
    } else {
      for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::int64_t> coef(d, 0);
        coef[i] = 1;
        combine(coef);
        for (std::size_t j = i + 1; j < d; ++j) {
          coef[j] = 1;
          combine(coef);
          coef[j] = 0;
        }
      }
    }
    for (const auto& v : vs) {
      const std::vector<std::int64_t> t = {(v[ia] + v[ih]) % p, v[ih], v[ia], 0};
      DistinctEdges e;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
          if (t[i] != t[j]) e.insert({i, j});
      if (!e.empty()) candidates.push_back({p, v, e});
    }
  }
  std::vector<AbelianChoice> chosen;
  DistinctEdges have;
  for (int round = 0; round < 2 && !find_triangle(have, 4); ++round) {
    const AbelianChoice* best = nullptr;
    std::size_t best_size = have.size();
    for (const auto& c : candidates) {
      auto u = have;
      u.insert(c.edges.begin(), c.edges.end());
      if (u.size() > best_size) {
        best = &c;
        best_size = u.size();
      }
    }
    if (!best) break;
    chosen.push_back(*best);
    have.insert(best->edges.begin(), best->edges.end());
  }
  // Drop images the relators do not force and the terms do not use.
  for (auto& c : chosen) {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t g = 0; g < n; ++g) {
        if (g == ia || g == ih || c.v[g] == 0) continue;
        auto trial = c.v;
        trial[g] = 0;
        if (abelian_hom(pres, c.p, trial).verified) {
          c.v = trial;
          changed = true;
        }
      }
    }
  }
  return chosen;
}

class Engine {
 public:
  explicit Engine(const ManifoldSpec& spec) : spec_(spec) {}

  Certificate run() {
    validate_or_throw(spec_);
    std::vector<std::size_t> nt;
    for (std::size_t k = 0; k < spec_.summands.size(); ++k) {
      const auto& s = spec_.summands[k];
      if (!is_trivial_pi1(s)) {
        nt.push_back(k);
        continue;
      }
      const bool fake = std::get<FinitePi1>(s).fake;
      if (spec_.summands.size() > 1)
        notes_.push_back("summand " + std::to_string(k) + (fake ? " is a fake 3-sphere" : " is a 3-sphere") +
                         ": pi_1 is unchanged, so word-level classes are computed without it");
    }
    if (nt.size() >= 2) return connected_sum(nt[0], nt[1]);
    if (nt.empty()) return rule(kRuleFinite, cite::kFinite, 0, "NONTRIVIAL_ON_M");
    const auto k = nt[0];
    const auto& s = spec_.summands[k];
    if (std::holds_alternative<S2xS1>(s)) return sphere(k);
    if (Verifier::has_finite_pi1(s)) {
      if (std::holds_alternative<Irreducible>(s))
        notes_.push_back("finiteness read off from a positive orbifold Euler characteristic of the base");
      return rule(kRuleFinite, cite::kFinite, k, "NONTRIVIAL_ON_M");
    }
    if (Verifier::is_closed_hyperbolic(s)) return rule(kRuleHyperbolic, cite::kHyperbolic, k, "TRIVIAL");
    return irreducible(k, std::get<Irreducible>(s).graph);
  }

 private:
  const ManifoldSpec& spec_;
  StepList steps_;
  std::vector<std::string> notes_;

  Certificate finish(Verdict v) {
    Certificate c;
    c.spec_digest = spec_digest(spec_);
    c.verdict = std::move(v);
    c.steps = steps_.take();
    c.scope_notes = notes_;
    return c;
  }

  Certificate rule(const std::string& name, const char* citation, std::size_t k, const std::string& kind) {
    const auto i = steps_.add("CitedRule", Json{{"rule", name}, {"citation", citation}, {"summand", k}});
    Verdict v{kind, name, {}, {}, {}, i, {}};
    return finish(v);
  }

  Certificate connected_sum(std::size_t k1, std::size_t k2) {
    const auto n1 = factor_order(spec_.summands[k1]), n2 = factor_order(spec_.summands[k2]);
    auto order_text = [](std::int64_t n) { return n ? "of order " + std::to_string(n) : "of infinite order"; };
    const auto a1 = steps_.add("Axiom", axiom_body("AbstractFactorOrder", cite::kConnectedSum,
                                                   "summand " + std::to_string(k1) + " contains an element g1 " + order_text(n1),
                                                   Json{{"summand", k1}, {"symbol", "g1"}, {"order", n1}}));
    const auto a2 = steps_.add("Axiom", axiom_body("AbstractFactorOrder", cite::kConnectedSum,
                                                   "summand " + std::to_string(k2) + " contains an element g2 " + order_text(n2),
                                                   Json{{"summand", k2}, {"symbol", "g2"}, {"order", n2}}));
    const std::vector<std::string> gens{"g1", "g2"};
    auto m = mod2_body(ArgumentId::ConnectedSum, gens, Json{{"summands", {k1, k2}}});
    const auto wi = steps_.add("Mod2Survivors", m.body);
    const auto hom = connected_sum_hom(n1, n2);
    const auto i1 = apply_hom(hom, m.survivors.at(0)), i2 = apply_hom(hom, m.survivors.at(1));
    if (are_conjugate(i1, i2).conjugate) throw ClassificationError("connected-sum survivors collapse");
    const auto di = steps_.add("QuotientDistinctness", Json{{"hom", connected_sum_record(n1, n2)},
                                                             {"w1", format_gen_word(m.survivors[0])},
                                                             {"w2", format_gen_word(m.survivors[1])},
                                                             {"images", {i1.to_string(), i2.to_string()}}});
    notes_.push_back("each summand is modeled by a cyclic subgroup generated by one nontrivial element");
    return finish(Verdict{"NONTRIVIAL_ON_M", "ConnectedSum", wi, di, {}, {}, {a1, a2}});
  }

  Certificate sphere(std::size_t k) {
    const auto hom = s2xs1_hom();
    const auto body = three_body(ArgumentId::NonseparatingSphere, {"g1", "g2"}, Json{{"summand", k}}, {{hom, s2xs1_record()}}, {});
    const auto i = steps_.add("ThreeDistinct", body);
    return finish(Verdict{"NONTRIVIAL_ON_M", "NonseparatingSphere", i, i, {}, {}, {}});
  }

  Certificate irreducible(std::size_t k, const DecompositionGraph& g) {
    if (g.nodes.size() > 1) notes_.push_back("gluing maps between pieces are not modeled; only the decomposition graph is used");
    if (g.nodes.size() == 1 && g.seifert(0) && g.seifert(0)->boundary == 0) {
      const auto& s = *g.seifert(0);
      if (!s.base_orientable) {
        const auto r = orientation_double_cover(s);
        DecompositionGraph cover;
        cover.nodes.push_back(r.total_piece);
        auto body = cover_to_json(CoverGraph{cover, ConstructionId::OrientationCover, {0}, {"OrientationCover"}, {{}}, {}, {}});
        body["summand"] = k;
        body["input"] = graph_to_json(g);
        const auto ci = steps_.add("CoverStep", body);
        return closed_seifert("cover", k, r.total_piece, ci);
      }
      return closed_seifert("input", k, s, std::nullopt);
    }
    if (has_nonseparating_torus(g)) return torus("input", k, g, std::nullopt);
    if (!g.all_seifert()) return hyperbolic(k, g);
    const auto cls = classify_pieces(g);
    if (cls.number() <= 4) return word_level("input", k, g, cls, std::nullopt);
    const auto recipe = select_recipe(g);
    const auto c = assemble_double_cover(g, recipe);
    if (const auto errs = check_cover_graph(g, c); !errs.empty()) throw ClassificationError("cover check failed: " + errs.front());
    auto body = cover_to_json(c);
    body["summand"] = k;
    body["input"] = graph_to_json(g);
    const auto ci = steps_.add("CoverStep", body);
    if (!c.rewritten.empty()) notes_.push_back("Moebius-band pieces were refibered over a disk with two (2,1) fibers");
    if (has_nonseparating_torus(c.cover)) return torus("cover", k, c.cover, ci);
    const auto cls2 = classify_pieces(c.cover);
    if (cls2.number() > 4)
      throw ClassificationError("double cover by " + construction_name(recipe) + " lands in gluing case " +
                                std::to_string(cls2.number()));
    return word_level("cover", k, c.cover, cls2, ci);
  }

  static std::string kind_for(std::optional<std::size_t> cover) { return cover ? "NONTRIVIAL_ON_DOUBLE_COVER" : "NONTRIVIAL_ON_M"; }

  Certificate closed_seifert(const std::string& which, std::size_t k, const SeifertPiece& s, std::optional<std::size_t> cover) {
    const std::string alpha = s.p() >= 1 ? sym_c(1) : sym_a(1);
    const std::vector<std::string> gens{alpha, kFiberSymbol};
    const auto pres = seifert_presentation(s);
    const auto site = node_site(which, k, 0);
    std::vector<HomEntry> homs;
    DistinctEdges have;
    const auto terms = term_words(build_witness(ArgumentId::ClosedSeifert, gens));
    for (const auto& c : abelian_separators(pres, alpha)) {
      auto hom = abelian_hom(pres, c.p, c.v);
      if (!hom.verified) throw ClassificationError("abelian quotient is not well defined");
      homs.push_back({hom, seifert_hom_record(hom, site, "abelian")});
      have.insert(c.edges.begin(), c.edges.end());
    }
    std::vector<AxiomPairs> axioms;
    if (!find_triangle(have, 4)) {
      std::vector<std::pair<std::size_t, std::size_t>> best;
      bool first = true;
      for (const auto& t : triangle_order(4)) {
        std::vector<std::pair<std::size_t, std::size_t>> missing;
        for (auto [i, j] : {std::pair{t[0], t[1]}, std::pair{t[0], t[2]}, std::pair{t[1], t[2]}})
          if (!have.count({i, j})) missing.push_back({i, j});
        if (first || missing.size() < best.size()) best = missing;
        first = false;
      }
      const auto ai = steps_.add("Axiom", axiom_body("SeifertCentralizerChoice", cite::kCentralizer,
                                                     "h is central of infinite order and " + alpha + " is not in <h>",
                                                     Json{{"graph", which}, {"summand", k}, {"pieces", {0}}}, pair_words(terms, best)));
      axioms.push_back({ai, best});
    }
    const auto i = steps_.add("ThreeDistinct", three_body(ArgumentId::ClosedSeifert, gens, site, homs, axioms));
    return finish(Verdict{kind_for(cover), "ClosedSeifert", i, i, cover, {}, {}});
  }

  Certificate torus(const std::string& which, std::size_t k, const DecompositionGraph& g, std::optional<std::size_t> cover) {
    const auto wit = *has_nonseparating_torus(g);
    const std::vector<std::string> gens{"l", "h"};
    const auto terms = term_words(build_witness(ArgumentId::NonseparatingTorus, gens));
    const std::vector<std::pair<std::size_t, std::size_t>> pairs{{1, 2}, {1, 3}, {2, 3}};
    const bool edge = wit.kind == NonseparatingWitness::Kind::CycleEdge;
    const auto ai = steps_.add(
        "Axiom", axiom_body("HomologicalIntersection", cite::kTorus,
                            "l meets the torus " + std::string(edge ? "over edge " : "over a nonseparating curve of piece ") +
                                std::to_string(wit.index) + " once and h lies in it, so l, h and 1 are pairwise distinct",
                            Json{{"graph", which}, {"summand", k}, {"witness", edge ? "edge" : "genus"}, {"index", wit.index}},
                            pair_words(terms, pairs)));
    const auto i = steps_.add("ThreeDistinct", three_body(ArgumentId::NonseparatingTorus, gens, Json{{"graph", which}, {"summand", k}},
                                                          {}, {{ai, pairs}}));
    return finish(Verdict{kind_for(cover), "NonseparatingTorus", i, i, cover, {}, {}});
  }

  Certificate word_level(const std::string& which, std::size_t k, const DecompositionGraph& g, const PieceClassification& cls,
                         std::optional<std::size_t> cover) {
    static const std::map<int, ArgumentId> by_case = {{1, ArgumentId::FigureEight},
                                                      {2, ArgumentId::NonorientableFigureEight},
                                                      {3, ArgumentId::TwoCurves},
                                                      {4, ArgumentId::FigureEight}};
    const auto arg = by_case.at(cls.number());
    const auto& s = *g.seifert(cls.piece);
    const auto gens = select_generators(s, arg);
    const auto site = node_site(which, k, cls.piece);
    auto m = mod2_body(arg, gens, site);
    if (m.survivors.size() != 2) throw ClassificationError(argument_name(arg) + ": expected two survivors");
    const auto wi = steps_.add("Mod2Survivors", m.body);
    const auto recipe = quotient_recipe(s, arg, gens);
    const auto hom = build_piece_quotient(s, recipe);
    const auto rec = seifert_hom_record(hom, site, "free_quotient", recipe.eliminated);
    const auto i1 = apply_hom(hom, m.survivors[0]), i2 = apply_hom(hom, m.survivors[1]);
    if (are_conjugate(i1, i2).conjugate) throw ClassificationError(argument_name(arg) + ": survivors collapse in the quotient");
    const auto w1 = format_gen_word(m.survivors[0]), w2 = format_gen_word(m.survivors[1]);
    const auto qi = steps_.add("QuotientDistinctness",
                               Json{{"hom", rec}, {"w1", w1}, {"w2", w2}, {"images", {i1.to_string(), i2.to_string()}}});
    const auto bases = boundary_images(hom);
    std::optional<std::size_t> ei;
    for (const auto& w : m.survivors) {
      const auto img = apply_hom(hom, w);
      if (conjugate_into_cyclic_subgroup_family(img, bases)) continue;
      ei = steps_.add("BoundaryExclusion", Json{{"hom", rec},
                                                 {"w", format_gen_word(w)},
                                                 {"image", img.to_string()},
                                                 {"boundary_bases", format_words(bases)}});
      break;
    }
    if (!ei) throw ClassificationError(argument_name(arg) + ": both survivors are peripheral in the quotient");
    const auto li = steps_.add("InjectivityLemma", Json{{"graph", which},
                                                        {"summand", k},
                                                        {"pieces", {cls.piece}},
                                                        {"w1", w1},
                                                        {"w2", w2},
                                                        {"distinct", qi},
                                                        {"exclusion", *ei}});
    return finish(Verdict{kind_for(cover), argument_name(arg), wi, li, cover, {}, {}});
  }

  Certificate hyperbolic(std::size_t k, const DecompositionGraph& g) {
    std::size_t hyp = 0;
    while (!g.is_hyperbolic(hyp)) ++hyp;
    const auto nb = g.neighbors(hyp);
    if (nb.empty()) throw ClassificationError("hyperbolic piece without neighbors in a multi-piece graph");
    const auto other = *std::min_element(nb.begin(), nb.end());
    const std::vector<std::size_t> pieces{hyp, other};
    auto piece_site = [&](std::size_t p) { return Json{{"graph", "input"}, {"summand", k}, {"pieces", {p}}}; };
    const auto a1 = steps_.add("Axiom", axiom_body("HyperbolicMalnormality", cite::kMalnormal,
                                                   "the cusp subgroup of piece " + std::to_string(hyp) + " is malnormal",
                                                   piece_site(hyp)));
    const auto a2 =
        g.is_hyperbolic(other)
            ? steps_.add("Axiom", axiom_body("HyperbolicMalnormality", cite::kMalnormal,
                                             "the cusp subgroup of piece " + std::to_string(other) + " is malnormal", piece_site(other)))
            : steps_.add("Axiom", axiom_body("SeifertCentralizerChoice", cite::kSeifertChoice,
                                             "some g2 in piece " + std::to_string(other) + " does not commute with h",
                                             piece_site(other)));
    const std::vector<std::string> gens{"h", "g1", "g2"};
    auto m = mod2_body(ArgumentId::HyperbolicGluing, gens, Json{{"graph", "input"}, {"summand", k}, {"pieces", pieces}});
    const auto wi = steps_.add("Mod2Survivors", m.body);
    const auto w1 = format_gen_word(m.survivors.at(0)), w2 = format_gen_word(m.survivors.at(1));
    const auto ci = steps_.add("AmalgamConjugacy", Json{{"graph", "input"},
                                                        {"summand", k},
                                                        {"pieces", pieces},
                                                        {"w1", w1},
                                                        {"w2", w2},
                                                        {"axioms", {a1, a2}}});
    if (g.nodes.size() == 2) return finish(Verdict{"NONTRIVIAL_ON_M", "HyperbolicGluing", wi, ci, {}, {}, {}});
    const auto hom = amalgam_syllable_hom();
    std::vector<NFWord> bases;
    for (std::size_t f = 0; f < hom.codomain->size(); ++f) bases.push_back(reduce(hom.codomain, {RawLetter{f, 1}}));
    const auto img = apply_hom(hom, m.survivors[0]);
    if (conjugate_into_cyclic_subgroup_family(img, bases)) throw ClassificationError("amalgam class lies in a factor");
    const auto ei = steps_.add("BoundaryExclusion",
                               Json{{"hom", amalgam_record()}, {"w", w1}, {"image", img.to_string()}, {"boundary_bases", format_words(bases)}});
    const auto li = steps_.add("InjectivityLemma", Json{{"graph", "input"},
                                                        {"summand", k},
                                                        {"pieces", pieces},
                                                        {"w1", w1},
                                                        {"w2", w2},
                                                        {"distinct", ci},
                                                        {"exclusion", ei}});
    return finish(Verdict{"NONTRIVIAL_ON_M", "HyperbolicGluing", wi, li, {}, {}, {}});
  }
};

}  // namespace detail

/// Verdict and certificate for a spec. Throws ValidationError on invalid
/// input and ClassificationError if the case analysis is left.
inline Certificate classify(const ManifoldSpec& spec) { return detail::Engine(spec).run(); }

/// Deterministic narrative of a certificate; refuses unverified ones.
inline std::string explain(const Certificate& cert, const ManifoldSpec& spec) {
  const auto report = verify(cert, spec);
  if (!report.ok()) throw InputError("certificate does not verify:\n" + report.to_string());
  std::ostringstream out;
  const auto& v = cert.verdict;
  out << "Verdict: " << v.kind << " (" << v.argument << ")\n";
  auto join = [](const Json& arr, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < arr.size(); ++i) s += (i ? sep : "") + arr[i].get<std::string>();
    return s;
  };
  for (const auto& st : cert.steps) {
    const auto& b = st.body;
    out << "[" << st.index << "] " << st.type << ": ";
    if (st.type == "CoverStep") {
      const auto base = graph_from_json(b.at("input"), "input");
      const auto cov = graph_from_json(b.at("output"), "output");
      out << "double cover by " << b.at("recipe").get<std::string>() << ", " << base.nodes.size() << " pieces -> "
          << cov.nodes.size() << " pieces, orbifold Euler characteristic " << rational_string(orbifold_euler(normalize_moebius(base)))
          << " -> " << rational_string(orbifold_euler(cov));
    } else if (st.type == "Mod2Survivors") {
      out << b.at("argument").get<std::string>() << " witness on " << join(b.at("generators"), ", ") << "; terms "
          << join(b.at("terms"), ", ") << "; surviving mod 2: [" << join(b.at("survivors"), "], [") << "]";
    } else if (st.type == "QuotientDistinctness") {
      out << "in " << b.at("hom").at("codomain").get<std::string>() << " the images " << join(b.at("images"), " and ")
          << " are not conjugate, so [" << b.at("w1").get<std::string>() << "] != [" << b.at("w2").get<std::string>() << "]";
    } else if (st.type == "BoundaryExclusion") {
      out << "image " << b.at("image").get<std::string>() << " of " << b.at("w").get<std::string>()
          << " is conjugate to no power of " << join(b.at("boundary_bases"), ", ");
    } else if (st.type == "InjectivityLemma") {
      out << "the classes stay distinct in the whole " << b.at("graph").get<std::string>() << " graph (injectivity lemma, steps "
          << b.at("distinct") << " and " << b.at("exclusion") << ")";
    } else if (st.type == "AmalgamConjugacy") {
      out << "[" << b.at("w1").get<std::string>() << "] != [" << b.at("w2").get<std::string>()
          << "] in the amalgam of pieces " << b.at("pieces").dump() << " (uses steps " << b.at("axioms").dump() << ")";
    } else if (st.type == "ThreeDistinct") {
      out << b.at("argument").get<std::string>() << " terms " << join(b.at("terms"), ", ") << "; pairwise distinct terms "
          << b.at("triangle").dump();
    } else if (st.type == "Axiom") {
      out << "assumed " << b.at("kind").get<std::string>() << ": " << b.at("statement").get<std::string>() << " ["
          << b.at("citation").get<std::string>() << "]";
    } else if (st.type == "CitedRule") {
      out << b.at("rule").get<std::string>() << ": " << b.at("citation").get<std::string>();
    }
    out << "\n";
  }
  for (const auto& n : cert.scope_notes) out << "Note: " << n << "\n";
  return out.str();
}

}  // namespace loopcert
