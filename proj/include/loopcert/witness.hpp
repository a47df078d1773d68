#pragma once

// Witness pairs of homology classes, the conjugacy-class terms of their
// loop-product expansions, and the two nonvanishing criteria (mod-2 survivors
// and "three distinct classes").

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "loopcert/error.hpp"
#include "loopcert/freeprod.hpp"
#include "loopcert/gword.hpp"
#include "loopcert/presentations.hpp"

namespace loopcert {

enum class ArgumentId {
  TwoCurves,
  FigureEight,
  NonorientableFigureEight,
  ClosedSeifert,
  ConnectedSum,
  NonseparatingSphere,
  NonseparatingTorus,
  HyperbolicGluing,
};

inline const std::vector<std::pair<ArgumentId, std::string>>& argument_names() {
  static const std::vector<std::pair<ArgumentId, std::string>> names = {
      {ArgumentId::TwoCurves, "TwoCurves"},
      {ArgumentId::FigureEight, "FigureEight"},
      {ArgumentId::NonorientableFigureEight, "NonorientableFigureEight"},
      {ArgumentId::ClosedSeifert, "ClosedSeifert"},
      {ArgumentId::ConnectedSum, "ConnectedSum"},
      {ArgumentId::NonseparatingSphere, "NonseparatingSphere"},
      {ArgumentId::NonseparatingTorus, "NonseparatingTorus"},
      {ArgumentId::HyperbolicGluing, "HyperbolicGluing"},
  };
  return names;
}

inline std::string argument_name(ArgumentId id) {
  for (const auto& [k, v] : argument_names())
    if (k == id) return v;
  return "?";
}

inline ArgumentId parse_argument(const std::string& s) {
  for (const auto& [k, v] : argument_names())
    if (v == s) return k;
  throw ParseError("unknown argument id '" + s + "'");
}

enum class ConstructionTag { ConstantLoopCycle, VerticalTorusFamily, SphereFamilyComposed, FiberFamily, MarkedLoop };

struct WitnessClass {
  int degree = 0;  // before the Delta operator
  GenWord class_word;
  ConstructionTag tag = ConstructionTag::MarkedLoop;
  bool delta_applied = false;
};

struct ExpansionTerm {
  GenWord class_word;
  bool sign_tracked = false;
};

struct WitnessPair {
  ArgumentId argument;
  std::vector<std::string> generators;
  WitnessClass a, b;
  std::vector<ExpansionTerm> expansion;
};

inline std::size_t generator_count(ArgumentId id) {
  switch (id) {
    case ArgumentId::TwoCurves:
    case ArgumentId::HyperbolicGluing: return 3;
    default: return 2;
  }
}

inline std::vector<GenWord> term_words(const WitnessPair& w) {
  std::vector<GenWord> out;
  for (const auto& t : w.expansion) out.push_back(t.class_word);
  return out;
}

/// The expansion terms exactly as listed for each argument, with the chosen
/// generators substituted.
inline WitnessPair build_witness(ArgumentId id, const std::vector<std::string>& gens) {
  if (gens.size() != generator_count(id))
    throw ArgumentNotApplicable(argument_name(id) + " needs " + std::to_string(generator_count(id)) + " generators, got " +
                                std::to_string(gens.size()));
  if (std::set<std::string>(gens.begin(), gens.end()).size() != gens.size())
    throw ArgumentNotApplicable(argument_name(id) + ": generators must be distinct");
  for (const auto& g : gens)
    if (g.empty()) throw ArgumentNotApplicable(argument_name(id) + ": empty generator name");
  auto W = [](std::initializer_list<GenWord> parts) { return free_reduce(gen_concat(parts)); };
  const GenWord one;
  WitnessPair w{id, gens, {}, {}, {}};
  auto eight = [&](GenWord s1, GenWord b1, GenWord b2, GenWord s2, GenWord b3, GenWord b4) {
    for (const GenWord* t : std::initializer_list<const GenWord*>{&s1, &b1, &b2, &one, &s2, &b3, &b4, &one}) w.expansion.push_back({*t, false});
  };
  auto four = [&](GenWord t0, GenWord t1, GenWord t2) {
    for (const GenWord* t : std::initializer_list<const GenWord*>{&t0, &t1, &t2, &one}) w.expansion.push_back({*t, false});
  };
  switch (id) {
    case ArgumentId::TwoCurves: {
      const auto x1 = gen(gens[0]), x2 = gen(gens[1]), x3 = gen(gens[2]);
      w.a = {1, W({x1, x2}), ConstructionTag::VerticalTorusFamily, true};
      w.b = {0, W({x2, x3}), ConstructionTag::MarkedLoop, true};
      eight(W({x1, x2, x3, x2}), W({x1, x2}), W({x2, x3}), W({x1, x2, x2, x3}), W({x1, x2}), W({x2, x3}));
      break;
    }
    case ArgumentId::FigureEight:
    case ArgumentId::NonorientableFigureEight: {
      const auto x1 = gen(gens[0]), x2 = gen(gens[1]);
      const auto y1 = gen(gens[0], -1), y2 = gen(gens[1], -1);
      w.a = {1, W({x1, y2}), ConstructionTag::VerticalTorusFamily, true};
      w.b = {0, W({y1, x2}), ConstructionTag::MarkedLoop, true};
      eight(W({x1, x2, y1, y2}), W({y1, x2}), W({x1, y2}), W({x1, y2, y1, x2}), W({y1, x2}), W({x1, y2}));
      break;
    }
    case ArgumentId::ClosedSeifert: {
      const auto a = gen(gens[0]), h = gen(gens[1]);
      w.a = {3, h, ConstructionTag::FiberFamily, false};
      w.b = {0, a, ConstructionTag::MarkedLoop, false};
      four(W({a, h}), h, a);
      break;
    }
    case ArgumentId::ConnectedSum: {
      // The sphere family is composed with h = g1 g2.
      const auto g1 = gen(gens[0]), g2 = gen(gens[1]);
      w.a = {0, W({g1, g2}), ConstructionTag::MarkedLoop, true};
      w.b = {1, W({g1, g2}), ConstructionTag::SphereFamilyComposed, true};
      eight(W({g1, g2, g1, g2}), W({g1, g2}), W({g1, g2}), W({g2, g1, g1, g2}), W({g2, g1}), W({g1, g2}));
      break;
    }
    case ArgumentId::NonseparatingSphere: {
      const auto g1 = gen(gens[0]), g2 = gen(gens[1]);
      w.a = {0, g1, ConstructionTag::MarkedLoop, true};
      w.b = {1, g2, ConstructionTag::SphereFamilyComposed, true};
      four(W({g1, g2}), g1, g2);
      break;
    }
    case ArgumentId::NonseparatingTorus: {
      const auto l = gen(gens[0]), h = gen(gens[1]);
      w.a = {0, l, ConstructionTag::MarkedLoop, true};
      w.b = {1, h, ConstructionTag::VerticalTorusFamily, true};
      four(W({l, h}), l, h);
      break;
    }
    case ArgumentId::HyperbolicGluing: {
      const auto h = gen(gens[0]), g1 = gen(gens[1]), g2 = gen(gens[2]);
      w.a = {0, W({g1, g2}), ConstructionTag::MarkedLoop, true};
      w.b = {1, h, ConstructionTag::VerticalTorusFamily, true};
      eight(W({h, g1, g2}), h, W({g1, g2}), W({h, g2, g1}), h, W({g1, g2}));
      break;
    }
  }
  return w;
}

/// Free group on the given symbols: no relators, each symbol its own Z factor.
inline QuotientHom free_model_hom(const std::vector<std::string>& symbols) {
  std::vector<CyclicFactor> factors;
  for (const auto& s : symbols) factors.push_back({s, 0});
  auto group = make_group(factors);
  GroupPresentation pres{symbols, {}};
  std::map<std::string, NFWord> images;
  for (std::size_t i = 0; i < symbols.size(); ++i) images.emplace(symbols[i], reduce(group, {RawLetter{i, 1}}));
  return quotient_map(pres, std::set<std::string>(symbols.begin(), symbols.end()), group, images);
}

/// One representative (first in term order) per conjugacy class occurring an
/// odd number of times among the images.
inline std::vector<std::size_t> mod2_survivor_indices(const std::vector<NFWord>& images) {
  std::vector<CyclicWord> classes;
  for (const auto& w : images) classes.push_back(cyclic_class(w));
  std::vector<std::size_t> out;
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    std::size_t count = 0;
    for (std::size_t j = i; j < images.size(); ++j)
      if (!seen[j] && classes[j] == classes[i]) {
        seen[j] = true;
        ++count;
      }
    if (count % 2 == 1) out.push_back(i);
  }
  return out;
}

inline std::vector<GenWord> mod2_survivors(const std::vector<GenWord>& terms, const QuotientHom& hom) {
  if (!hom.verified) throw InputError("mod2_survivors needs a verified homomorphism");
  std::vector<NFWord> images;
  for (const auto& t : terms) images.push_back(apply_hom(hom, t));
  std::vector<GenWord> out;
  for (auto i : mod2_survivor_indices(images)) out.push_back(terms[i]);
  return out;
}

inline std::vector<GenWord> mod2_survivors(const std::vector<ExpansionTerm>& terms, const QuotientHom& hom) {
  std::vector<GenWord> words;
  for (const auto& t : terms) words.push_back(t.class_word);
  return mod2_survivors(words, hom);
}

using DistinctEdges = std::set<std::pair<std::size_t, std::size_t>>;

/// Pairs (i<j) of terms whose images are not conjugate.
inline DistinctEdges distinct_edges(const std::vector<NFWord>& images) {
  DistinctEdges out;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (!are_conjugate(images[i], images[j]).conjugate) out.insert({i, j});
  return out;
}

/// Triangles of four terms are tried by omitted index 0..3, so the triple
/// (t1, t2, 1) comes first.
inline std::vector<std::vector<std::size_t>> triangle_order(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 4) {
    for (std::size_t omit = 0; omit < 4; ++omit) {
      std::vector<std::size_t> t;
      for (std::size_t i = 0; i < 4; ++i)
        if (i != omit) t.push_back(i);
      out.push_back(t);
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) out.push_back({i, j, k});
  return out;
}

inline std::optional<std::vector<std::size_t>> find_triangle(const DistinctEdges& e, std::size_t n) {
  for (const auto& t : triangle_order(n))
    if (e.count({t[0], t[1]}) && e.count({t[0], t[2]}) && e.count({t[1], t[2]})) return t;
  return std::nullopt;
}

/// True iff at least three of the four term images are pairwise non-conjugate.
inline bool three_distinct_criterion(const std::vector<NFWord>& images) {
  if (images.size() != 4) throw InputError("three_distinct_criterion needs exactly 4 terms");
  return find_triangle(distinct_edges(images), 4).has_value();
}

inline bool three_distinct_criterion(const std::vector<ExpansionTerm>& terms, const QuotientHom& hom) {
  if (terms.size() != 4) throw InputError("three_distinct_criterion needs exactly 4 terms");
  std::vector<NFWord> images;
  for (const auto& t : terms) images.push_back(apply_hom(hom, t.class_word));
  return three_distinct_criterion(images);
}

// ---------------------------------------------------------------------------
// Generator selection and the matching quotient onto a free product.

struct Candidate {
  std::string symbol;
  std::int64_t order;  // 0: boundary generator, infinite order after h -> 1
};

/// Fiber generators in fiber order, then boundary generators d1..d_{b-1};
/// d_b is reserved for elimination.
inline std::vector<Candidate> fiber_candidates(const SeifertPiece& s) {
  std::vector<Candidate> out;
  for (std::int64_t i = 1; i <= s.p(); ++i) out.push_back({sym_c(i), s.fibers[static_cast<std::size_t>(i - 1)].alpha});
  for (std::int64_t j = 1; j < s.boundary; ++j) out.push_back({sym_d(j), 0});
  return out;
}

inline std::vector<std::string> select_generators(const SeifertPiece& s, ArgumentId id) {
  switch (id) {
    case ArgumentId::TwoCurves: {
      if (!s.base_orientable) throw ArgumentNotApplicable("TwoCurves needs an orientable base");
      if (s.boundary < 1) throw ArgumentNotApplicable("TwoCurves needs a boundary torus");
      auto c = fiber_candidates(s);
      if (c.size() < 3) throw ArgumentNotApplicable("TwoCurves needs p+b > 3");
      return {c[0].symbol, c[1].symbol, c[2].symbol};
    }
    case ArgumentId::FigureEight: {
      if (!s.base_orientable) throw ArgumentNotApplicable("FigureEight needs an orientable base");
      if (s.boundary < 1) throw ArgumentNotApplicable("FigureEight needs a boundary torus");
      std::vector<std::pair<std::size_t, Candidate>> usable;
      auto c = fiber_candidates(s);
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i].order != 2) usable.push_back({i, c[i]});
      if (usable.size() < 2) throw ArgumentNotApplicable("FigureEight needs two generators of multiplicity other than 2");
      auto key = [](const Candidate& x) { return x.order == 0 ? std::numeric_limits<std::int64_t>::max() : x.order; };
      std::stable_sort(usable.begin(), usable.end(),
                       [&](const auto& l, const auto& r) { return key(l.second) > key(r.second); });
      usable.resize(2);
      std::sort(usable.begin(), usable.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
      return {usable[0].second.symbol, usable[1].second.symbol};
    }
    case ArgumentId::NonorientableFigureEight:
      if (s.base_orientable) throw ArgumentNotApplicable("NonorientableFigureEight needs a nonorientable base");
      if (s.boundary < 2) throw ArgumentNotApplicable("NonorientableFigureEight needs two boundary tori");
      return {sym_d(1), sym_d(2)};
    default: throw ArgumentNotApplicable(argument_name(id) + " does not select generators from a single piece");
  }
}

struct QuotientRecipe {
  std::vector<std::pair<std::string, std::int64_t>> factors;  // codomain factors, named by generator
  std::string eliminated;
};

/// Order of a generator's image once h is killed: alpha_i for c_i, infinite
/// for surface and boundary generators.
inline std::int64_t natural_order(const SeifertPiece& s, const std::string& g) {
  if (g.size() > 1 && g[0] == 'c' && g.find_first_not_of("0123456789", 1) == std::string::npos) {
    const auto i = std::stoll(g.substr(1));
    if (i >= 1 && i <= s.p()) return s.fibers[static_cast<std::size_t>(i - 1)].alpha;
  }
  return 0;
}

inline QuotientRecipe quotient_recipe(const SeifertPiece& s, ArgumentId id, const std::vector<std::string>& gens) {
  QuotientRecipe r;
  if (id == ArgumentId::NonorientableFigureEight) {
    if (s.base_orientable || s.boundary < 2) throw ArgumentNotApplicable("nonorientable quotient needs b >= 2 and crosscaps");
    r.factors = {{sym_d(1), 0}, {sym_a(1), 0}};
    r.eliminated = sym_d(2);
    return r;
  }
  if (s.boundary < 1) throw ArgumentNotApplicable("quotient needs a boundary generator to eliminate");
  for (const auto& g : gens) r.factors.push_back({g, natural_order(s, g)});
  r.eliminated = sym_d(s.boundary);
  return r;
}

/// The verified hom keeping the recipe's generators (each onto its own
/// cyclic factor), killing the rest, and solving the long relator for the
/// eliminated generator.
inline QuotientHom build_piece_quotient(const SeifertPiece& s, const QuotientRecipe& r) {
  const auto pres = seifert_presentation(s);
  std::vector<CyclicFactor> factors;
  for (const auto& [name, order] : r.factors) factors.push_back({name, order});
  auto group = make_group(factors);
  std::map<std::string, NFWord> images;
  std::set<std::string> kept{r.eliminated};
  for (std::size_t i = 0; i < r.factors.size(); ++i) {
    images.emplace(r.factors[i].first, reduce(group, {RawLetter{i, 1}}));
    kept.insert(r.factors[i].first);
  }
  auto hom = quotient_map(pres, kept, group, images, r.eliminated);
  return eliminate_generator(std::move(hom), pres.long_relator(), r.eliminated);
}

/// Images of the boundary generators d_j with h sent to the identity: the
/// peripheral subgroups <h, d_j> land in these cyclic subgroups.
inline std::vector<NFWord> boundary_images(const QuotientHom& hom) {
  std::vector<NFWord> out;
  for (const auto& g : hom.domain.generators)
    if (g.size() > 1 && g[0] == 'd') out.push_back(apply_hom(hom, gen(g)));
  return out;
}

}  // namespace loopcert
