#pragma once

// Certificates and their checker. Every step other than Axiom and CitedRule
// is recomputed from its own payload; the verdict is then checked to be
// entailed by the steps it references.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "loopcert/covers.hpp"
#include "loopcert/decomposition.hpp"
#include "loopcert/error.hpp"
#include "loopcert/presentations.hpp"
#include "loopcert/spec_io.hpp"
#include "loopcert/witness.hpp"

namespace loopcert {

inline const std::string kCertificateFormat = "loopcert-certificate/1";

struct CertStep {
  std::size_t index = 0;
  std::string type;
  Json body;  // payload without index and type
};

struct Verdict {
  std::string kind;      // TRIVIAL | NONTRIVIAL_ON_M | NONTRIVIAL_ON_DOUBLE_COVER
  std::string argument;  // argument id, or the cited rule for rule verdicts
  std::optional<std::size_t> witness, distinct, cover, rule;
  std::vector<std::size_t> axioms;
};

struct Certificate {
  std::string spec_digest;
  Verdict verdict;
  std::vector<CertStep> steps;
  std::vector<std::string> scope_notes;
};

inline const std::vector<std::string>& axiom_kinds() {
  static const std::vector<std::string> k = {"HyperbolicMalnormality", "SeifertCentralizerChoice", "HomologicalIntersection",
                                             "FiniteFundamentalGroup", "AbstractFactorOrder"};
  return k;
}

inline const std::string kRuleFinite = "FiniteFundamentalGroup";
inline const std::string kRuleHyperbolic = "AlgebraicallyHyperbolic";

/// Axiom kinds a certificate may rely on, per argument.
inline std::set<std::string> axiom_whitelist(const std::string& argument) {
  if (argument == "ClosedSeifert") return {"SeifertCentralizerChoice"};
  if (argument == "ConnectedSum") return {"AbstractFactorOrder"};
  if (argument == "NonseparatingTorus") return {"HomologicalIntersection"};
  if (argument == "HyperbolicGluing") return {"HyperbolicMalnormality", "SeifertCentralizerChoice"};
  return {};
}

// ---------------------------------------------------------------------------
// Serialization

inline Json verdict_to_json(const Verdict& v) {
  Json j{{"kind", v.kind}, {"argument", v.argument}};
  if (v.witness) j["witness"] = *v.witness;
  if (v.distinct) j["distinct"] = *v.distinct;
  if (v.cover) j["cover"] = *v.cover;
  if (v.rule) j["rule"] = *v.rule;
  if (!v.axioms.empty()) j["axioms"] = v.axioms;
  return j;
}

inline Json certificate_to_json(const Certificate& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json j = s.body;
    j["index"] = s.index;
    j["type"] = s.type;
    steps.push_back(j);
  }
  return Json{{"format", kCertificateFormat},
              {"spec_digest", c.spec_digest},
              {"verdict", verdict_to_json(c.verdict)},
              {"steps", steps},
              {"scope_notes", c.scope_notes}};
}

/// Canonical bytes: sorted keys, two-space indent, trailing newline.
inline std::string certificate_text(const Certificate& c) { return certificate_to_json(c).dump(2) + "\n"; }

inline Certificate certificate_from_json(const Json& j) {
  using namespace detail;
  only_keys(j, {"format", "spec_digest", "verdict", "steps", "scope_notes"}, "$");
  if (as_string(field(j, "format", "$"), "$.format") != kCertificateFormat) throw ParseError("$.format: not a certificate");
  Certificate c;
  c.spec_digest = as_string(field(j, "spec_digest", "$"), "$.spec_digest");
  const auto& v = field(j, "verdict", "$");
  only_keys(v, {"kind", "argument", "witness", "distinct", "cover", "rule", "axioms"}, "$.verdict");
  c.verdict.kind = as_string(field(v, "kind", "$.verdict"), "$.verdict.kind");
  c.verdict.argument = as_string(field(v, "argument", "$.verdict"), "$.verdict.argument");
  auto opt = [&](const char* key, std::optional<std::size_t>& out) {
    if (v.contains(key)) out = as_index(v[key], std::string("$.verdict.") + key);
  };
  opt("witness", c.verdict.witness);
  opt("distinct", c.verdict.distinct);
  opt("cover", c.verdict.cover);
  opt("rule", c.verdict.rule);
  if (v.contains("axioms"))
    for (const auto& a : as_array(v["axioms"], "$.verdict.axioms")) c.verdict.axioms.push_back(as_index(a, "$.verdict.axioms[]"));
  const auto& steps = as_array(field(j, "steps", "$"), "$.steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto path = "$.steps[" + std::to_string(i) + "]";
    CertStep s;
    s.index = as_index(field(steps[i], "index", path), path + ".index");
    s.type = as_string(field(steps[i], "type", path), path + ".type");
    s.body = steps[i];
    s.body.erase("index");
    s.body.erase("type");
    c.steps.push_back(std::move(s));
  }
  for (const auto& n : as_array(field(j, "scope_notes", "$"), "$.scope_notes")) c.scope_notes.push_back(as_string(n, "$.scope_notes[]"));
  return c;
}

inline Certificate parse_certificate(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what());
  }
  return certificate_from_json(j);
}

// ---------------------------------------------------------------------------
// Homomorphism records. A record names where the domain presentation comes
// from; the checker rebuilds the presentation and the hom from it.

inline Json hom_record(const QuotientHom& hom, Json header) {
  Json images = Json::object();
  for (const auto& g : hom.domain.generators)
    if (auto it = hom.images.find(g); it != hom.images.end() && !it->second.is_identity()) images[g] = it->second.to_string();
  header["codomain"] = hom.codomain->to_string();
  header["images"] = images;
  return header;
}

inline Json node_site(const std::string& graph, std::size_t summand, std::size_t node) {
  return Json{{"graph", graph}, {"summand", summand}, {"node", node}};
}

inline Json seifert_hom_record(const QuotientHom& hom, const Json& site, const std::string& shape,
                               const std::optional<std::string>& eliminated = std::nullopt) {
  Json h = site;
  h["source"] = "seifert_node";
  h["shape"] = shape;
  if (eliminated) h["eliminated"] = *eliminated;
  return hom_record(hom, h);
}

inline QuotientHom connected_sum_hom(std::int64_t n1, std::int64_t n2) {
  GroupPresentation pres{{"g1", "g2"}, {}};
  if (n1) pres.relators.push_back(gen("g1", n1));
  if (n2) pres.relators.push_back(gen("g2", n2));
  auto group = make_group({{"g1", n1}, {"g2", n2}});
  return quotient_map(pres, {"g1", "g2"}, group, {{"g1", reduce(group, {RawLetter{0, 1}})}, {"g2", reduce(group, {RawLetter{1, 1}})}});
}

/// pi_1(S^2 x S^1) = Z(t), with g1 = t and g2 = t^2.
inline QuotientHom s2xs1_hom() {
  GroupPresentation pres{{"g1", "g2", "t"}, {free_reduce({{"g1", 1}, {"t", -1}}), free_reduce({{"g2", 1}, {"t", -2}})}};
  auto group = make_group({{"t", 0}});
  return quotient_map(pres, {"g1", "g2", "t"}, group,
                      {{"g1", reduce(group, {RawLetter{0, 1}})}, {"g2", reduce(group, {RawLetter{0, 2}})}, {"t", reduce(group, {RawLetter{0, 1}})}});
}

/// Syllable model of the amalgam over the gluing torus: h lies in the edge
/// group and dies, g1 and g2 are the syllables from the two sides.
inline QuotientHom amalgam_syllable_hom() {
  GroupPresentation pres{{"h", "g1", "g2"}, {}};
  auto group = make_group({{"x1", 0}, {"x2", 0}});
  return quotient_map(pres, {"g1", "g2"}, group, {{"g1", reduce(group, {RawLetter{0, 1}})}, {"g2", reduce(group, {RawLetter{1, 1}})}});
}

inline Json free_model_record(const std::vector<std::string>& symbols) {
  return hom_record(free_model_hom(symbols), Json{{"source", "free_model"}, {"symbols", symbols}});
}

inline Json connected_sum_record(std::int64_t n1, std::int64_t n2) {
  return hom_record(connected_sum_hom(n1, n2), Json{{"source", "connected_sum"}, {"orders", {n1, n2}}});
}

inline Json s2xs1_record() { return hom_record(s2xs1_hom(), Json{{"source", "s2xs1"}}); }

inline Json amalgam_record() { return hom_record(amalgam_syllable_hom(), Json{{"source", "amalgam_syllables"}}); }

inline std::vector<std::string> format_words(const std::vector<GenWord>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(format_gen_word(w));
  return out;
}

inline std::vector<std::string> format_words(const std::vector<NFWord>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.to_string());
  return out;
}

// ---------------------------------------------------------------------------
// Verification

struct CheckLine {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckLine> lines;
  bool ok() const {
    return !lines.empty() && std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.ok; });
  }
  std::string to_string() const {
    std::string out;
    for (const auto& l : lines) out += (l.ok ? "PASS " : "FAIL ") + l.name + (l.detail.empty() ? "" : ": " + l.detail) + "\n";
    out += ok() ? "certificate verified\n" : "certificate rejected\n";
    return out;
  }
};

class StepFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace check {

inline void expect(bool cond, const std::string& what) {
  if (!cond) throw StepFailure(what);
}

inline const Json& at(const Json& j, const std::string& key) {
  expect(j.is_object() && j.contains(key), "missing field '" + key + "'");
  return j.at(key);
}

inline std::size_t index_at(const Json& j, const std::string& key) {
  const auto& v = at(j, key);
  expect(v.is_number_integer() && v.get<std::int64_t>() >= 0, "field '" + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

inline std::string string_at(const Json& j, const std::string& key) {
  const auto& v = at(j, key);
  expect(v.is_string(), "field '" + key + "' must be a string");
  return v.get<std::string>();
}

inline std::vector<std::string> strings_at(const Json& j, const std::string& key) {
  const auto& v = at(j, key);
  expect(v.is_array(), "field '" + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& x : v) {
    expect(x.is_string(), "field '" + key + "' must hold strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline std::vector<std::size_t> indices_at(const Json& j, const std::string& key) {
  const auto& v = at(j, key);
  expect(v.is_array(), "field '" + key + "' must be an array");
  std::vector<std::size_t> out;
  for (const auto& x : v) {
    expect(x.is_number_integer() && x.get<std::int64_t>() >= 0, "field '" + key + "' must hold nonnegative integers");
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

/// A generator word in canonical form: freely reduced, "name^exp" letters.
inline GenWord canonical_gen_word(const std::string& s) {
  const auto w = parse_gen_word(s);
  expect(format_gen_word(free_reduce(w)) == s, "word '" + s + "' is not in canonical form");
  return w;
}

inline void only(const Json& body, std::initializer_list<const char*> keys) {
  for (auto it = body.begin(); it != body.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    expect(known, "unexpected field '" + it.key() + "'");
  }
}

}  // namespace check

class Verifier {
 public:
  Verifier(const ManifoldSpec& spec, const Certificate& cert) : spec_(spec), cert_(cert) {}

  VerifyReport run() {
    VerifyReport r;
    auto line = [&](const std::string& name, const std::function<void()>& f) {
      try {
        f();
        r.lines.push_back({name, true, ""});
      } catch (const std::exception& e) {
        r.lines.push_back({name, false, e.what()});
      }
    };
    line("spec digest", [&] { check::expect(cert_.spec_digest == spec_digest(spec_), "digest does not match the spec"); });
    line("spec validity", [&] { validate_or_throw(spec_); });
    for (std::size_t i = 0; i < cert_.steps.size(); ++i)
      line("step " + std::to_string(i) + " " + cert_.steps[i].type, [&] { check_step(i); });
    line("references", [&] { check_references(); });
    line("axiom whitelist", [&] { check_whitelist(); });
    line("verdict", [&] { check_verdict(); });
    return r;
  }

 private:
  const ManifoldSpec& spec_;
  const Certificate& cert_;
  std::optional<DecompositionGraph> cover_;
  std::optional<std::size_t> cover_summand_;

  // --- graph and hom resolution ---

  const DecompositionGraph& graph(const std::string& which, std::size_t summand) const {
    check::expect(summand < spec_.summands.size(), "summand " + std::to_string(summand) + " out of range");
    if (which == "input") {
      const auto* irr = std::get_if<Irreducible>(&spec_.summands[summand]);
      check::expect(irr != nullptr, "summand " + std::to_string(summand) + " is not irreducible with a decomposition");
      return irr->graph;
    }
    check::expect(which == "cover", "graph must be 'input' or 'cover'");
    check::expect(cover_.has_value() && cover_summand_ == summand, "no verified cover for summand " + std::to_string(summand));
    return *cover_;
  }

  const SeifertPiece& piece(const Json& site) const {
    const auto& g = graph(check::string_at(site, "graph"), check::index_at(site, "summand"));
    const auto node = check::index_at(site, "node");
    check::expect(node < g.nodes.size(), "node " + std::to_string(node) + " out of range");
    const auto* s = g.seifert(node);
    check::expect(s != nullptr, "node " + std::to_string(node) + " is not a Seifert piece");
    return *s;
  }

  static Json site_of(const Json& rec) {
    return Json{{"graph", check::at(rec, "graph")}, {"summand", check::at(rec, "summand")}, {"node", check::at(rec, "node")}};
  }

  QuotientHom rebuild_seifert_hom(const Json& rec) const {
    const auto& s = piece(rec);
    const auto pres = seifert_presentation(s);
    const auto shape = check::string_at(rec, "shape");
    const auto codomain_text = check::string_at(rec, "codomain");
    auto group = make_group(codomain_text);
    check::expect(group->to_string() == codomain_text, "codomain '" + codomain_text + "' is not canonical");
    const auto& imgs = check::at(rec, "images");
    check::expect(imgs.is_object(), "images must be an object");
    std::map<std::string, NFWord> images;
    for (auto it = imgs.begin(); it != imgs.end(); ++it) {
      check::expect(pres.has_generator(it.key()), "image for unknown generator " + it.key());
      check::expect(it.value().is_string(), "image of " + it.key() + " must be a word");
      auto w = NFWord::parse(group, it.value().get<std::string>());
      check::expect(w.to_string() == it.value().get<std::string>(), "image of " + it.key() + " is not in normal form");
      check::expect(!w.is_identity(), "identity images are left implicit");
      images.emplace(it.key(), w);
    }
    Json expected;
    if (shape == "free_quotient") {
      check::only(rec, {"source", "shape", "graph", "summand", "node", "codomain", "images", "eliminated"});
      const auto elim = check::string_at(rec, "eliminated");
      check::expect(pres.has_generator(elim) && elim != kFiberSymbol, "cannot eliminate " + elim);
      std::map<std::string, NFWord> kept_images;
      std::set<std::string> kept{elim};
      for (std::size_t f = 0; f < group->size(); ++f) {
        const auto& fac = group->factor(f);
        check::expect(pres.has_generator(fac.name) && fac.name != elim && fac.name != kFiberSymbol,
                      "codomain factor " + fac.name + " is not a keepable generator");
        check::expect(fac.order == natural_order(s, fac.name),
                      "factor " + fac.name + " must have order " + std::to_string(natural_order(s, fac.name)));
        kept_images.emplace(fac.name, reduce(group, {RawLetter{f, 1}}));
        kept.insert(fac.name);
      }
      auto hom = quotient_map(pres, kept, group, kept_images, elim);
      hom = eliminate_generator(std::move(hom), pres.long_relator(), elim);
      expected = seifert_hom_record(hom, site_of(rec), shape, elim);
      check::expect(expected == rec, "record differs from the recomputed quotient");
      return hom;
    }
    check::expect(shape == "abelian", "unknown hom shape '" + shape + "'");
    check::only(rec, {"source", "shape", "graph", "summand", "node", "codomain", "images"});
    check::expect(group->size() == 1 && group->factor(0).name == "z" && group->factor(0).order >= 2,
                  "abelian quotient must be onto a single finite factor z");
    QuotientHom hom{pres, group, {}, false, std::nullopt};
    for (const auto& g : pres.generators) hom.images.emplace(g, images.count(g) ? images.at(g) : identity(group));
    hom = check_hom(std::move(hom));
    check::expect(hom.verified, "relator " + (hom.failing_relator ? pretty_gen_word(pres.relators[*hom.failing_relator]) : "?") +
                                    " does not map to the identity");
    return hom;
  }

  QuotientHom rebuild_hom(const Json& rec) const {
    const auto source = check::string_at(rec, "source");
    if (source == "seifert_node") return rebuild_seifert_hom(rec);
    QuotientHom hom;
    Json expected;
    if (source == "free_model") {
      const auto symbols = check::strings_at(rec, "symbols");
      hom = free_model_hom(symbols);
      expected = free_model_record(symbols);
    } else if (source == "connected_sum") {
      const auto& o = check::at(rec, "orders");
      check::expect(o.is_array() && o.size() == 2 && o[0].is_number_integer() && o[1].is_number_integer(),
                    "orders must be two integers");
      const auto n1 = o[0].get<std::int64_t>(), n2 = o[1].get<std::int64_t>();
      check::expect((n1 == 0 || n1 >= 2) && (n2 == 0 || n2 >= 2), "factor orders must be 0 or at least 2");
      hom = connected_sum_hom(n1, n2);
      expected = connected_sum_record(n1, n2);
    } else if (source == "s2xs1") {
      hom = s2xs1_hom();
      expected = s2xs1_record();
    } else if (source == "amalgam_syllables") {
      hom = amalgam_syllable_hom();
      expected = amalgam_record();
    } else {
      throw StepFailure("unknown hom source '" + source + "'");
    }
    check::expect(expected == rec, "record differs from the regenerated " + source + " hom");
    return hom;
  }

  // --- individual steps ---

  void check_step(std::size_t i) {
    const auto& st = cert_.steps[i];
    check::expect(st.index == i, "index field " + std::to_string(st.index) + " at position " + std::to_string(i));
    const auto& b = st.body;
    if (st.type == "CoverStep") return check_cover(i, b);
    if (st.type == "Mod2Survivors") return check_mod2(b);
    if (st.type == "QuotientDistinctness") return check_quotient_distinct(b);
    if (st.type == "BoundaryExclusion") return check_exclusion(b);
    if (st.type == "InjectivityLemma") return check_injectivity(i, b);
    if (st.type == "AmalgamConjugacy") return check_amalgam(i, b);
    if (st.type == "ThreeDistinct") return check_three(i, b);
    if (st.type == "Axiom") return check_axiom(b);
    if (st.type == "CitedRule") return check_rule(b);
    throw StepFailure("unknown step type '" + st.type + "'");
  }

  void check_cover(std::size_t i, const Json& b) {
    check::only(b, {"recipe", "summand", "input", "output", "node_map", "node_origin", "slot_map", "edge_map", "rewritten"});
    check::expect(i == 0, "a CoverStep must come first");
    const auto k = check::index_at(b, "summand");
    const auto& g = graph("input", k);
    check::expect(check::at(b, "input") == graph_to_json(g), "input graph differs from the spec");
    const auto recipe = parse_construction(check::string_at(b, "recipe"));
    Json expected;
    DecompositionGraph out;
    if (recipe == ConstructionId::OrientationCover) {
      check::expect(g.nodes.size() == 1 && g.edges.empty() && g.seifert(0) && g.seifert(0)->boundary == 0,
                    "orientation cover applies to a single closed Seifert piece");
      const auto r = orientation_double_cover(*g.seifert(0));
      out.nodes.push_back(r.total_piece);
      CoverGraph c{out, recipe, {0}, {construction_name(recipe)}, {{}}, {}, {}};
      expected = cover_to_json(c);
    } else {
      check::expect(g.all_seifert() && g.nodes.size() >= 2 && !has_nonseparating_torus(g), "graph is not a Seifert tree");
      const auto cls = classify_pieces(g);
      check::expect(cls.number() >= 5, "gluing case " + std::to_string(cls.number()) + " needs no cover");
      check::expect(recipe == select_recipe(g), "recipe should be " + construction_name(select_recipe(g)));
      const auto c = assemble_double_cover(g, recipe);
      const auto errs = check_cover_graph(g, c);
      check::expect(errs.empty(), errs.empty() ? "" : errs.front());
      out = c.cover;
      expected = cover_to_json(c);
    }
    expected["summand"] = k;
    expected["input"] = graph_to_json(g);
    check::expect(expected == b, "cover differs from the recomputed one");
    cover_ = out;
    cover_summand_ = k;
  }

  void check_mod2(const Json& b) {
    check::only(b, {"argument", "generators", "site", "terms", "hom", "survivors"});
    const auto w = build_witness(parse_argument(check::string_at(b, "argument")), check::strings_at(b, "generators"));
    const auto terms = term_words(w);
    check::expect(check::strings_at(b, "terms") == format_words(terms), "expansion terms differ from the witness");
    const auto& rec = check::at(b, "hom");
    check::expect(check::string_at(rec, "source") == "free_model", "background cancellation needs the free model");
    check::expect(check::strings_at(rec, "symbols") == w.generators, "free model must be on the witness generators");
    const auto hom = rebuild_hom(rec);
    const auto surv = format_words(mod2_survivors(terms, hom));
    check::expect(!surv.empty(), "no class survives mod 2");
    check::expect(check::strings_at(b, "survivors") == surv, "survivors differ from the recomputed ones");
  }

  void check_quotient_distinct(const Json& b) {
    check::only(b, {"hom", "w1", "w2", "images"});
    const auto hom = rebuild_hom(check::at(b, "hom"));
    const auto w1 = check::canonical_gen_word(check::string_at(b, "w1"));
    const auto w2 = check::canonical_gen_word(check::string_at(b, "w2"));
    const auto i1 = apply_hom(hom, w1), i2 = apply_hom(hom, w2);
    check::expect(check::strings_at(b, "images") == std::vector<std::string>{i1.to_string(), i2.to_string()},
                  "images differ from the recomputed ones");
    check::expect(!are_conjugate(i1, i2).conjugate, "images are conjugate");
  }

  void check_exclusion(const Json& b) {
    check::only(b, {"hom", "w", "image", "boundary_bases"});
    const auto& rec = check::at(b, "hom");
    const auto hom = rebuild_hom(rec);
    const auto source = check::string_at(rec, "source");
    std::vector<NFWord> bases;
    if (source == "seifert_node") {
      check::expect(check::string_at(rec, "shape") == "free_quotient", "exclusion needs a free-product quotient");
      bases = boundary_images(hom);
    } else {
      check::expect(source == "amalgam_syllables", "exclusion hom must come from a piece or the amalgam model");
      for (std::size_t f = 0; f < hom.codomain->size(); ++f) bases.push_back(reduce(hom.codomain, {RawLetter{f, 1}}));
    }
    check::expect(apply_hom(hom, gen(source == "seifert_node" ? kFiberSymbol : "h")).is_identity(), "h must die");
    check::expect(check::strings_at(b, "boundary_bases") == format_words(bases), "boundary bases differ");
    const auto w = check::canonical_gen_word(check::string_at(b, "w"));
    const auto img = apply_hom(hom, w);
    check::expect(check::string_at(b, "image") == img.to_string(), "image differs from the recomputed one");
    auto m = conjugate_into_cyclic_subgroup_family(img, bases);
    check::expect(!m, m ? "image is conjugate to a power of base " + std::to_string(m->base_index) : "");
  }

  const CertStep& ref(std::size_t from, std::size_t to, const std::string& type) const {
    check::expect(to < from, "reference to step " + std::to_string(to) + " is not backward");
    check::expect(cert_.steps[to].type == type, "step " + std::to_string(to) + " is not a " + type);
    return cert_.steps[to];
  }

  void check_pieces(const DecompositionGraph& g, const std::vector<std::size_t>& pieces) const {
    check::expect(!pieces.empty() && pieces.size() <= 2, "one or two pieces expected");
    for (auto p : pieces) check::expect(p < g.nodes.size(), "piece out of range");
    if (pieces.size() == 2) {
      const auto nb = g.neighbors(pieces[0]);
      check::expect(pieces[0] != pieces[1] && std::count(nb.begin(), nb.end(), pieces[1]) > 0, "pieces are not adjacent");
    }
  }

  void check_injectivity(std::size_t i, const Json& b) {
    check::only(b, {"graph", "summand", "pieces", "w1", "w2", "distinct", "exclusion"});
    const auto which = check::string_at(b, "graph");
    const auto k = check::index_at(b, "summand");
    const auto& g = graph(which, k);
    const auto pieces = check::indices_at(b, "pieces");
    check_pieces(g, pieces);
    check::expect(g.edges.size() + 1 == g.nodes.size() && non_bridge_edges(g).empty(), "decomposition graph is not a tree");
    check::expect(pieces.size() < g.nodes.size(), "nothing to glue");
    const auto w1 = check::string_at(b, "w1"), w2 = check::string_at(b, "w2");
    check::canonical_gen_word(w1);
    check::canonical_gen_word(w2);
    const auto d = check::index_at(b, "distinct");
    check::expect(d < i, "reference is not backward");
    const auto& ds = cert_.steps[d];
    if (pieces.size() == 1) {
      ref(i, d, "QuotientDistinctness");
      const auto& rec = check::at(ds.body, "hom");
      check::expect(check::string_at(rec, "source") == "seifert_node" && site_of(rec) == node_site(which, k, pieces[0]),
                    "distinctness is not in the vertex group of piece " + std::to_string(pieces[0]));
    } else {
      ref(i, d, "AmalgamConjugacy");
      check::expect(check::at(ds.body, "pieces") == Json(pieces) && check::string_at(ds.body, "graph") == which &&
                        check::index_at(ds.body, "summand") == k,
                    "distinctness is for other pieces");
    }
    check::expect(check::string_at(ds.body, "w1") == w1 && check::string_at(ds.body, "w2") == w2, "distinct words differ");
    const auto& ex = ref(i, check::index_at(b, "exclusion"), "BoundaryExclusion");
    const auto ew = check::string_at(ex.body, "w");
    check::expect(ew == w1 || ew == w2, "excluded word is neither class");
    if (pieces.size() == 1)
      check::expect(check::at(ex.body, "hom") == check::at(ds.body, "hom"), "exclusion uses a different quotient");
    else
      check::expect(check::string_at(check::at(ex.body, "hom"), "source") == "amalgam_syllables", "exclusion must use the amalgam model");
  }

  void check_amalgam(std::size_t i, const Json& b) {
    check::only(b, {"graph", "summand", "pieces", "w1", "w2", "axioms"});
    const auto which = check::string_at(b, "graph");
    const auto k = check::index_at(b, "summand");
    const auto& g = graph(which, k);
    const auto pieces = check::indices_at(b, "pieces");
    check::expect(pieces.size() == 2, "amalgam needs two pieces");
    check_pieces(g, pieces);
    check::expect(g.is_hyperbolic(pieces[0]), "first piece must be hyperbolic");
    check::expect(check::string_at(b, "w1") == "h^1.g1^1.g2^1" && check::string_at(b, "w2") == "h^1.g2^1.g1^1",
                  "amalgam classes must be h g1 g2 and h g2 g1");
    std::vector<std::pair<std::string, std::size_t>> need = {{"HyperbolicMalnormality", pieces[0]}};
    need.push_back({g.is_hyperbolic(pieces[1]) ? "HyperbolicMalnormality" : "SeifertCentralizerChoice", pieces[1]});
    const auto axioms = check::indices_at(b, "axioms");
    check::expect(axioms.size() == need.size(), "expected one axiom per side");
    for (std::size_t a = 0; a < axioms.size(); ++a) {
      const auto& ax = ref(i, axioms[a], "Axiom");
      check::expect(check::string_at(ax.body, "kind") == need[a].first, "axiom " + std::to_string(a) + " should be " + need[a].first);
      const auto& site = check::at(ax.body, "site");
      check::expect(site == Json{{"graph", which}, {"summand", k}, {"pieces", {need[a].second}}}, "axiom is about another piece");
    }
  }

  void check_three(std::size_t i, const Json& b) {
    check::only(b, {"argument", "generators", "site", "terms", "homs", "axioms", "edges", "triangle"});
    const auto w = build_witness(parse_argument(check::string_at(b, "argument")), check::strings_at(b, "generators"));
    const auto terms = term_words(w);
    check::expect(terms.size() == 4, "three-distinct needs a four-term expansion");
    const auto tw = format_words(terms);
    check::expect(check::strings_at(b, "terms") == tw, "expansion terms differ from the witness");
    DistinctEdges all;
    const auto& homs = check::at(b, "homs");
    check::expect(homs.is_array(), "homs must be an array");
    std::set<std::string> term_symbols(w.generators.begin(), w.generators.end());
    for (const auto& h : homs) {
      check::only(h, {"hom", "images", "edges"});
      const auto& rec = check::at(h, "hom");
      const auto hom = rebuild_hom(rec);
      std::vector<NFWord> imgs;
      for (const auto& t : terms) imgs.push_back(apply_hom(hom, t));
      check::expect(check::strings_at(h, "images") == format_words(imgs), "term images differ");
      const auto e = distinct_edges(imgs);
      check::expect(check::at(h, "edges") == Json(e), "distinct pairs differ");
      check::expect(!e.empty(), "hom separates nothing");
      check::expect(std::any_of(e.begin(), e.end(), [&](const auto& p) { return !all.count(p); }),
                    "hom adds no new distinct pairs");
      all.insert(e.begin(), e.end());
      if (check::string_at(rec, "source") == "seifert_node" && check::string_at(rec, "shape") == "abelian") {
        for (const auto& [g, img] : hom.images) {
          if (img.is_identity() || term_symbols.count(g)) continue;
          auto trial = hom;
          trial.images.at(g) = identity(hom.codomain);
          check::expect(!check_hom(trial).verified, "image of " + g + " is superfluous");
        }
      }
    }
    const auto axiom_refs = check::indices_at(b, "axioms");
    check::expect(std::adjacent_find(axiom_refs.begin(), axiom_refs.end(), std::greater_equal<>()) == axiom_refs.end(),
                  "axiom references must be strictly increasing");
    for (auto a : axiom_refs) {
      const auto& ax = ref(i, a, "Axiom");
      const auto& pairs = check::at(ax.body, "distinct_pairs");
      check::expect(pairs.is_array() && !pairs.empty(), "axiom asserts no distinct pairs");
      for (const auto& p : pairs) {
        check::expect(p.is_array() && p.size() == 2 && p[0].is_string() && p[1].is_string(), "bad distinct pair");
        const auto x = std::find(tw.begin(), tw.end(), p[0].get<std::string>());
        const auto y = std::find(tw.begin(), tw.end(), p[1].get<std::string>());
        check::expect(x != tw.end() && y != tw.end() && x != y, "axiom pair is not a pair of terms");
        auto u = static_cast<std::size_t>(x - tw.begin()), v = static_cast<std::size_t>(y - tw.begin());
        all.insert({std::min(u, v), std::max(u, v)});
      }
    }
    check::expect(check::at(b, "edges") == Json(all), "combined distinct pairs differ");
    const auto tri = find_triangle(all, 4);
    check::expect(tri.has_value(), "no three pairwise distinct classes");
    check::expect(check::at(b, "triangle") == Json(*tri), "triangle differs from the recomputed one");
  }

  void check_axiom(const Json& b) {
    check::only(b, {"kind", "citation", "statement", "site", "distinct_pairs"});
    const auto kind = check::string_at(b, "kind");
    check::expect(std::count(axiom_kinds().begin(), axiom_kinds().end(), kind) > 0, "unknown axiom kind " + kind);
    check::expect(!check::string_at(b, "citation").empty(), "axiom needs a citation");
    check::string_at(b, "statement");
    const auto& site = check::at(b, "site");
    if (kind == "HomologicalIntersection") {
      const auto& g = graph(check::string_at(site, "graph"), check::index_at(site, "summand"));
      const auto wit = has_nonseparating_torus(g);
      check::expect(wit.has_value(), "graph has no nonseparating torus");
      const auto kind_name = wit->kind == NonseparatingWitness::Kind::CycleEdge ? "edge" : "genus";
      check::expect(check::string_at(site, "witness") == kind_name && check::index_at(site, "index") == wit->index,
                    "site does not name the nonseparating torus");
    } else if (kind == "HyperbolicMalnormality" || kind == "SeifertCentralizerChoice") {
      const auto& g = graph(check::string_at(site, "graph"), check::index_at(site, "summand"));
      const auto pieces = check::indices_at(site, "pieces");
      check::expect(pieces.size() == 1 && pieces[0] < g.nodes.size(), "axiom names one piece");
      check::expect(g.is_hyperbolic(pieces[0]) == (kind == "HyperbolicMalnormality"), "axiom kind does not fit the piece");
    } else if (kind == "AbstractFactorOrder") {
      const auto k = check::index_at(site, "summand");
      check::expect(k < spec_.summands.size() && !is_trivial_pi1(spec_.summands[k]), "summand must have nontrivial pi_1");
      const auto& o = check::at(site, "order");
      check::expect(o.is_number_integer(), "order must be an integer");
      const auto n = o.get<std::int64_t>();
      if (const auto* f = std::get_if<FinitePi1>(&spec_.summands[k]))
        check::expect(n >= 2 && f->order % n == 0, "element order must divide the group order");
      else
        check::expect(n == 0 || n >= 2, "element order must be 0 or at least 2");
      check::string_at(site, "symbol");
    }
  }

  void check_rule(const Json& b) {
    check::only(b, {"rule", "citation", "summand"});
    const auto rule = check::string_at(b, "rule");
    const auto k = check::index_at(b, "summand");
    check::expect(k < spec_.summands.size(), "summand out of range");
    check::expect(!check::string_at(b, "citation").empty(), "rule needs a citation");
    const auto nt = nontrivial_summands();
    check::expect(nt.size() <= 1, "rule applies to prime manifolds only");
    check::expect(nt.empty() ? k == 0 : k == nt[0], "rule must name the nontrivial summand");
    const auto& s = spec_.summands[k];
    if (rule == kRuleFinite) {
      check::expect(has_finite_pi1(s), "summand does not have finite pi_1");
    } else {
      check::expect(rule == kRuleHyperbolic, "unknown rule " + rule);
      check::expect(is_closed_hyperbolic(s), "summand is not closed hyperbolic");
    }
  }

  // --- global checks ---

  std::vector<std::size_t> refs_of(const CertStep& s) const {
    std::vector<std::size_t> out;
    auto add = [&](const char* key) {
      if (s.body.contains(key) && s.body[key].is_number_integer()) out.push_back(s.body[key].get<std::size_t>());
    };
    auto add_all = [&](const char* key) {
      if (s.body.contains(key) && s.body[key].is_array())
        for (const auto& x : s.body[key])
          if (x.is_number_integer()) out.push_back(x.get<std::size_t>());
    };
    if (s.type == "InjectivityLemma") {
      add("distinct");
      add("exclusion");
    }
    if (s.type == "AmalgamConjugacy" || s.type == "ThreeDistinct") add_all("axioms");
    return out;
  }

  void check_references() const {
    const auto n = cert_.steps.size();
    const auto& v = cert_.verdict;
    std::vector<std::size_t> roots;
    for (const auto* o : {&v.witness, &v.distinct, &v.cover, &v.rule})
      if (*o) roots.push_back(**o);
    roots.insert(roots.end(), v.axioms.begin(), v.axioms.end());
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack;
    for (auto r : roots) {
      check::expect(r < n, "verdict references missing step " + std::to_string(r));
      stack.push_back(r);
    }
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      if (seen[i]) continue;
      seen[i] = true;
      for (auto j : refs_of(cert_.steps[i])) {
        check::expect(j < i, "step " + std::to_string(i) + " references step " + std::to_string(j) + " forward");
        stack.push_back(j);
      }
    }
    for (std::size_t i = 0; i < n; ++i) check::expect(seen[i], "step " + std::to_string(i) + " is not used by the verdict");
  }

  void check_whitelist() const {
    const auto allowed = axiom_whitelist(cert_.verdict.argument);
    for (const auto& s : cert_.steps) {
      if (s.type != "Axiom") continue;
      const auto kind = check::string_at(s.body, "kind");
      check::expect(allowed.count(kind) > 0, kind + " is not admissible for " + cert_.verdict.argument);
    }
  }

  std::vector<std::size_t> nontrivial_summands() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < spec_.summands.size(); ++k)
      if (!is_trivial_pi1(spec_.summands[k])) out.push_back(k);
    return out;
  }

 public:
  static bool has_finite_pi1(const Summand& s) {
    if (std::holds_alternative<FinitePi1>(s)) return true;
    const auto* irr = std::get_if<Irreducible>(&s);
    if (!irr || irr->graph.nodes.size() != 1 || !irr->graph.edges.empty()) return false;
    const auto* p = irr->graph.seifert(0);
    return p && p->boundary == 0 && orbifold_euler(*p) > 0;
  }

  static bool is_closed_hyperbolic(const Summand& s) {
    if (std::holds_alternative<ClosedHyperbolic>(s)) return true;
    const auto* irr = std::get_if<Irreducible>(&s);
    return irr && irr->graph.nodes.size() == 1 && irr->graph.is_hyperbolic(0) && irr->graph.slot_count(0) == 0;
  }

 private:
  const CertStep& step(std::optional<std::size_t> i, const std::string& type, const char* role) const {
    check::expect(i.has_value() && *i < cert_.steps.size(), std::string("verdict needs a ") + role + " step");
    check::expect(cert_.steps[*i].type == type, std::string("verdict ") + role + " step is not a " + type);
    return cert_.steps[*i];
  }

  void check_verdict() const {
    const auto& v = cert_.verdict;
    std::size_t covers = 0;
    for (const auto& s : cert_.steps) covers += s.type == "CoverStep";
    const bool double_cover = v.kind == "NONTRIVIAL_ON_DOUBLE_COVER";
    check::expect(covers == (double_cover ? 1u : 0u), "expected " + std::string(double_cover ? "one CoverStep" : "no CoverStep"));
    if (double_cover) check::expect(v.cover == std::optional<std::size_t>(0), "verdict must reference the CoverStep at index 0");
    else check::expect(!v.cover, "only double-cover verdicts reference a cover");
    const std::string graph_name = double_cover ? "cover" : "input";
    const auto nt = nontrivial_summands();

    if (v.argument == kRuleFinite || v.argument == kRuleHyperbolic) {
      check::expect(v.kind == (v.argument == kRuleHyperbolic ? "TRIVIAL" : "NONTRIVIAL_ON_M"), "rule and verdict kind disagree");
      const auto& r = step(v.rule, "CitedRule", "rule");
      check::expect(check::string_at(r.body, "rule") == v.argument, "cited rule differs from the verdict");
      check::expect(!v.witness && !v.distinct && v.axioms.empty(), "rule verdicts reference only the rule");
      return;
    }
    check::expect(v.kind == "NONTRIVIAL_ON_M" || double_cover, "unknown verdict kind " + v.kind);
    check::expect(!v.rule, "argument verdicts do not cite a rule");
    const auto arg = parse_argument(v.argument);
    if (arg != ArgumentId::ConnectedSum) check::expect(v.axioms.empty(), "only connected sums take verdict-level axioms");

    if (arg == ArgumentId::ConnectedSum) {
      check::expect(!double_cover, "connected sums are decided on M");
      check::expect(nt.size() >= 2, "connected sum needs two summands with nontrivial pi_1");
      const auto& m = step(v.witness, "Mod2Survivors", "witness");
      check::expect(check::string_at(m.body, "argument") == "ConnectedSum", "witness argument differs");
      check::expect(check::at(m.body, "site") == Json{{"summands", {nt[0], nt[1]}}}, "witness must use the first two summands");
      check::expect(check::strings_at(m.body, "generators") == std::vector<std::string>{"g1", "g2"}, "generators must be g1, g2");
      const auto& q = step(v.distinct, "QuotientDistinctness", "distinct");
      const auto surv = check::strings_at(m.body, "survivors");
      check::expect(surv.size() == 2 && surv[0] == check::string_at(q.body, "w1") && surv[1] == check::string_at(q.body, "w2"),
                    "distinctness is not about the survivors");
      const auto& rec = check::at(q.body, "hom");
      check::expect(check::string_at(rec, "source") == "connected_sum", "distinctness must use the free-product model");
      check::expect(v.axioms.size() == 2, "two factor-order axioms expected");
      for (std::size_t a = 0; a < 2; ++a) {
        check::expect(v.axioms[a] < cert_.steps.size() && cert_.steps[v.axioms[a]].type == "Axiom", "verdict axiom is not an Axiom");
        const auto& ax = cert_.steps[v.axioms[a]].body;
        check::expect(check::string_at(ax, "kind") == "AbstractFactorOrder", "factor axiom kind");
        const auto& site = check::at(ax, "site");
        check::expect(check::index_at(site, "summand") == nt[a] && check::string_at(site, "symbol") == (a ? "g2" : "g1") &&
                          check::at(site, "order") == check::at(rec, "orders")[a],
                      "factor axiom does not match the model");
      }
      return;
    }
    check::expect(nt.size() == 1, "prime-summand argument needs exactly one nontrivial summand");
    const auto k = nt[0];

    if (arg == ArgumentId::NonseparatingSphere) {
      check::expect(!double_cover && std::holds_alternative<S2xS1>(spec_.summands[k]), "needs an S2xS1 summand");
      const auto& t = step(v.witness, "ThreeDistinct", "witness");
      check::expect(v.distinct == v.witness, "three-distinct step is its own distinctness claim");
      check::expect(check::at(t.body, "site") == Json{{"summand", k}}, "site must be the S2xS1 summand");
      check::expect(check::strings_at(t.body, "generators") == std::vector<std::string>{"g1", "g2"}, "generators must be g1, g2");
      check::expect(check::at(t.body, "homs").size() == 1 && check::at(t.body, "homs")[0].at("hom") == s2xs1_record(),
                    "distinctness must come from pi_1 = Z");
      check::expect(check::indices_at(t.body, "axioms").empty(), "no axioms needed");
      return;
    }

    const auto& g = graph(graph_name, k);
    if (double_cover) check::expect(cover_.has_value(), "cover did not verify");
    const auto* irr = std::get_if<Irreducible>(&spec_.summands[k]);
    check::expect(irr != nullptr, "argument needs an irreducible summand");
    const auto& base = irr->graph;
    const bool closed_single = base.nodes.size() == 1 && base.seifert(0) && base.seifert(0)->boundary == 0;

    if (arg == ArgumentId::ClosedSeifert) {
      check::expect(closed_single, "needs a single closed Seifert piece");
      check::expect(!has_finite_pi1(spec_.summands[k]), "finite pi_1 goes to the finite-group rule");
      const auto& s = *g.seifert(0);
      check::expect(s.base_orientable, "ClosedSeifert runs on an orientable base");
      check::expect(double_cover == !base.seifert(0)->base_orientable, "nonorientable bases pass to the orientation cover");
      const auto& t = step(v.witness, "ThreeDistinct", "witness");
      check::expect(v.distinct == v.witness, "three-distinct step is its own distinctness claim");
      const auto site = node_site(graph_name, k, 0);
      check::expect(check::at(t.body, "site") == site, "site must be the closed piece");
      const std::string alpha = s.p() >= 1 ? sym_c(1) : sym_a(1);
      check::expect(check::strings_at(t.body, "generators") == std::vector<std::string>{alpha, kFiberSymbol},
                    "generators must be " + alpha + ", h");
      for (const auto& h : check::at(t.body, "homs")) {
        const auto& rec = h.at("hom");
        check::expect(check::string_at(rec, "source") == "seifert_node" && check::string_at(rec, "shape") == "abelian" &&
                          site_of(rec) == site,
                      "quotients must be abelian quotients of the closed piece");
      }
      for (auto a : check::indices_at(t.body, "axioms"))
        check::expect(check::at(cert_.steps[a].body, "site") == Json{{"graph", graph_name}, {"summand", k}, {"pieces", {0}}},
                      "axiom is about another piece");
      return;
    }
    check::expect(!closed_single, "a single closed Seifert piece takes the ClosedSeifert argument");

    if (arg == ArgumentId::NonseparatingTorus) {
      check::expect(has_nonseparating_torus(g).has_value(), "graph has no nonseparating torus");
      if (double_cover) check::expect(!has_nonseparating_torus(base), "the base already had a nonseparating torus");
      const auto& t = step(v.witness, "ThreeDistinct", "witness");
      check::expect(v.distinct == v.witness, "three-distinct step is its own distinctness claim");
      check::expect(check::at(t.body, "site") == Json{{"graph", graph_name}, {"summand", k}}, "site must be the graph");
      check::expect(check::strings_at(t.body, "generators") == std::vector<std::string>{"l", "h"}, "generators must be l, h");
      check::expect(check::at(t.body, "homs").empty(), "distinctness comes from intersection numbers");
      const auto axioms = check::indices_at(t.body, "axioms");
      check::expect(axioms.size() == 1, "one intersection axiom expected");
      const auto& site = check::at(cert_.steps[axioms[0]].body, "site");
      check::expect(check::string_at(site, "graph") == graph_name && check::index_at(site, "summand") == k,
                    "axiom is about another graph");
      return;
    }
    check::expect(!has_nonseparating_torus(g), "a nonseparating torus takes precedence");
    if (double_cover) check::expect(!has_nonseparating_torus(base), "the base already had a nonseparating torus");

    const auto& m = step(v.witness, "Mod2Survivors", "witness");
    check::expect(check::string_at(m.body, "argument") == v.argument, "witness argument differs from the verdict");
    const auto survivors = check::strings_at(m.body, "survivors");
    check::expect(survivors.size() == 2, "exactly two survivors expected");
    const auto gens = check::strings_at(m.body, "generators");

    if (arg == ArgumentId::HyperbolicGluing) {
      check::expect(!double_cover, "hyperbolic gluings are decided on M");
      check::expect(!g.all_seifert(), "needs a hyperbolic piece");
      std::size_t hyp = 0;
      while (!g.is_hyperbolic(hyp)) ++hyp;
      const auto nb = g.neighbors(hyp);
      check::expect(!nb.empty(), "hyperbolic piece has no neighbor");
      const std::vector<std::size_t> pieces{hyp, *std::min_element(nb.begin(), nb.end())};
      check::expect(check::at(m.body, "site") == Json{{"graph", graph_name}, {"summand", k}, {"pieces", pieces}},
                    "witness must use the lowest hyperbolic piece and its lowest neighbor");
      check::expect(gens == std::vector<std::string>{"h", "g1", "g2"}, "generators must be h, g1, g2");
      auto amalgam_index = v.distinct;
      if (g.nodes.size() > 2) {
        const auto& l = step(v.distinct, "InjectivityLemma", "distinct");
        check::expect(check::at(l.body, "pieces") == Json(pieces), "injectivity is for other pieces");
        amalgam_index = check::index_at(l.body, "distinct");
      }
      const auto& c = step(amalgam_index, "AmalgamConjugacy", "amalgam");
      check::expect(check::at(c.body, "pieces") == Json(pieces) && check::string_at(c.body, "w1") == survivors[0] &&
                        check::string_at(c.body, "w2") == survivors[1],
                    "amalgam step is not about the survivors");
      return;
    }

    // Word-level arguments on one Seifert piece of a tree.
    check::expect(g.all_seifert() && g.nodes.size() >= 2, "needs a Seifert tree with at least two pieces");
    const auto cls = classify_pieces(g);
    static const std::map<int, ArgumentId> by_case = {{1, ArgumentId::FigureEight},
                                                      {2, ArgumentId::NonorientableFigureEight},
                                                      {3, ArgumentId::TwoCurves},
                                                      {4, ArgumentId::FigureEight}};
    check::expect(by_case.count(cls.number()), "gluing case " + std::to_string(cls.number()) + " needs a double cover");
    check::expect(by_case.at(cls.number()) == arg, "case " + std::to_string(cls.number()) + " prescribes " +
                                                       argument_name(by_case.at(cls.number())));
    if (double_cover) check::expect(classify_pieces(base).number() >= 5, "the base did not need a cover");
    const auto site = node_site(graph_name, k, cls.piece);
    check::expect(check::at(m.body, "site") == site, "witness must sit on piece " + std::to_string(cls.piece));
    const auto& s = *g.seifert(cls.piece);
    check::expect(gens == select_generators(s, arg), "generators differ from the prescribed choice");
    const auto& l = step(v.distinct, "InjectivityLemma", "distinct");
    check::expect(check::at(l.body, "pieces") == Json{cls.piece} && check::string_at(l.body, "graph") == graph_name,
                  "injectivity is for another piece");
    check::expect(check::string_at(l.body, "w1") == survivors[0] && check::string_at(l.body, "w2") == survivors[1],
                  "injectivity is not about the survivors");
    const auto& q = cert_.steps.at(check::index_at(l.body, "distinct"));
    const auto& rec = check::at(q.body, "hom");
    const auto recipe = quotient_recipe(s, arg, gens);
    const auto factors = make_group(check::string_at(rec, "codomain"))->factors();
    std::vector<std::pair<std::string, std::int64_t>> got;
    for (const auto& f : factors) got.push_back({f.name, f.order});
    check::expect(check::string_at(rec, "shape") == "free_quotient" && got == recipe.factors &&
                      check::string_at(rec, "eliminated") == recipe.eliminated,
                  "quotient differs from the prescribed one");
  }
};

inline VerifyReport verify(const Certificate& cert, const ManifoldSpec& spec) { return Verifier(spec, cert).run(); }

/// Text-level entry point: unparsable certificates are rejected, not thrown.
inline VerifyReport verify_text(const std::string& cert_text, const ManifoldSpec& spec) {
  try {
    return verify(parse_certificate(cert_text), spec);
  } catch (const std::exception& e) {
    return VerifyReport{{{"certificate syntax", false, e.what()}}};
  }
}

}  // namespace loopcert
