#pragma once

// Seifert fundamental-group presentations and homomorphisms from them onto
// free products of cyclic groups.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "loopcert/error.hpp"
#include "loopcert/freeprod.hpp"
#include "loopcert/gword.hpp"

namespace loopcert {

struct Fiber {
  std::int64_t alpha = 2;
  std::int64_t beta = 1;

  friend bool operator==(const Fiber&, const Fiber&) = default;
  friend auto operator<=>(const Fiber&, const Fiber&) = default;
};

struct SeifertPiece {
  bool base_orientable = true;
  std::int64_t genus = 0;  // crosscap count when the base is nonorientable
  std::int64_t boundary = 0;
  std::vector<Fiber> fibers;
  std::vector<int> deltas;  // nonorientable base only; empty means all +1
  bool fibration_orientable = true;

  std::int64_t p() const { return static_cast<std::int64_t>(fibers.size()); }
  bool has_multiplicity(std::int64_t a) const {
    return std::any_of(fibers.begin(), fibers.end(), [a](const Fiber& f) { return f.alpha == a; });
  }
  /// Number of fibers with multiplicity greater than two.
  std::int64_t p_prime() const {
    return std::count_if(fibers.begin(), fibers.end(), [](const Fiber& f) { return f.alpha > 2; });
  }
  int delta(std::size_t i) const { return deltas.empty() ? 1 : deltas.at(i); }

  friend bool operator==(const SeifertPiece&, const SeifertPiece&) = default;
};

inline void check_piece(const SeifertPiece& s) {
  if (s.genus < 0) throw InputError("genus must be nonnegative");
  if (s.boundary < 0) throw InputError("boundary count must be nonnegative");
  if (!s.base_orientable && s.genus < 1) throw InputError("nonorientable base needs at least one crosscap");
  for (const auto& f : s.fibers) {
    if (f.alpha < 2) throw InputError("fiber multiplicity must be >= 2, got " + std::to_string(f.alpha));
    if (f.beta <= 0 || f.beta >= f.alpha)
      throw InputError("fiber (" + std::to_string(f.alpha) + "," + std::to_string(f.beta) +
                       "): need 0 < beta < alpha");
  }
  if (!s.deltas.empty()) {
    if (s.base_orientable) throw InputError("deltas are only meaningful over a nonorientable base");
    if (s.deltas.size() != s.fibers.size()) throw InputError("deltas must have one entry per fiber");
    for (int d : s.deltas)
      if (d != 1 && d != -1) throw InputError("delta must be +1 or -1");
  }
  if (s.fibration_orientable != s.base_orientable)
    throw InputError("an oriented total space has an orientable fibration exactly when the base is orientable");
}

inline std::string sym_a(std::int64_t i) { return "a" + std::to_string(i); }
inline std::string sym_b(std::int64_t i) { return "b" + std::to_string(i); }
inline std::string sym_c(std::int64_t i) { return "c" + std::to_string(i); }
inline std::string sym_d(std::int64_t i) { return "d" + std::to_string(i); }
inline const std::string kFiberSymbol = "h";

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<GenWord> relators;

  bool has_generator(const std::string& s) const {
    return std::find(generators.begin(), generators.end(), s) != generators.end();
  }
  const GenWord& long_relator() const { return relators.back(); }

  std::string to_string() const {
    std::string out = "< ";
    for (std::size_t i = 0; i < generators.size(); ++i) out += (i ? ", " : "") + generators[i];
    out += " | ";
    for (std::size_t i = 0; i < relators.size(); ++i) out += (i ? ", " : "") + pretty_gen_word(relators[i]);
    return out + " >";
  }

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

inline void check_presentation(const GroupPresentation& p) {
  std::set<std::string> gens(p.generators.begin(), p.generators.end());
  if (gens.size() != p.generators.size()) throw InputError("duplicate generator in presentation");
  for (const auto& r : p.relators)
    for (const auto& l : r)
      if (!gens.count(l.symbol)) throw InputError("relator uses undeclared generator " + l.symbol);
}

/// Presentation of pi_1 of a Seifert piece, emitted unsimplified: conjugation
/// relators of h with every other generator, torsion relators, then the long
/// surface relator.
inline GroupPresentation seifert_presentation(const SeifertPiece& s) {
  check_piece(s);
  GroupPresentation out;
  const GenWord h = gen(kFiberSymbol);
  auto commutes = [&](const std::string& x) { return gen_concat({gen(x), h, gen(x, -1), gen_inverse(h)}); };
  if (s.base_orientable) {
    for (std::int64_t i = 1; i <= s.genus; ++i) {
      out.generators.push_back(sym_a(i));
      out.generators.push_back(sym_b(i));
    }
  } else {
    for (std::int64_t i = 1; i <= s.genus; ++i) out.generators.push_back(sym_a(i));
  }
  for (std::int64_t i = 1; i <= s.p(); ++i) out.generators.push_back(sym_c(i));
  for (std::int64_t i = 1; i <= s.boundary; ++i) out.generators.push_back(sym_d(i));
  out.generators.push_back(kFiberSymbol);

  if (s.base_orientable) {
    for (std::int64_t i = 1; i <= s.genus; ++i) {
      out.relators.push_back(commutes(sym_a(i)));
      out.relators.push_back(commutes(sym_b(i)));
    }
  } else {
    // a h a^-1 = h^-1
    for (std::int64_t i = 1; i <= s.genus; ++i) out.relators.push_back(gen_concat({gen(sym_a(i)), h, gen(sym_a(i), -1), h}));
  }
  for (std::int64_t i = 1; i <= s.p(); ++i) {
    const int delta = s.base_orientable ? 1 : s.delta(static_cast<std::size_t>(i - 1));
    out.relators.push_back(gen_concat({gen(sym_c(i)), h, gen(sym_c(i), -1), gen(kFiberSymbol, -delta)}));
  }
  for (std::int64_t i = 1; i <= s.boundary; ++i) out.relators.push_back(commutes(sym_d(i)));
  for (std::int64_t i = 1; i <= s.p(); ++i) {
    const auto& f = s.fibers[static_cast<std::size_t>(i - 1)];
    out.relators.push_back(gen_concat({gen(sym_c(i), f.alpha), gen(kFiberSymbol, f.beta)}));
  }
  GenWord lng;
  for (std::int64_t i = 1; i <= s.genus; ++i) {
    if (s.base_orientable)
      lng = gen_concat({lng, gen(sym_a(i)), gen(sym_b(i)), gen(sym_a(i), -1), gen(sym_b(i), -1)});
    else
      lng = gen_concat({lng, gen(sym_a(i), 2)});
  }
  for (std::int64_t i = 1; i <= s.p(); ++i) lng.push_back({sym_c(i), 1});
  for (std::int64_t i = 1; i <= s.boundary; ++i) lng.push_back({sym_d(i), 1});
  out.relators.push_back(lng);
  return out;
}

struct QuotientHom {
  GroupPresentation domain;
  GroupRef codomain;
  std::map<std::string, NFWord> images;
  bool verified = false;
  std::optional<std::size_t> failing_relator;
};

class WellDefinednessError : public std::runtime_error {
 public:
  WellDefinednessError(QuotientHom hom, std::size_t relator)
      : std::runtime_error("relator " + pretty_gen_word(hom.domain.relators.at(relator)) +
                           " does not map to the identity"),
        hom_(std::move(hom)),
        relator_(relator) {}
  const QuotientHom& hom() const { return hom_; }
  std::size_t relator_index() const { return relator_; }
  const GenWord& relator() const { return hom_.domain.relators.at(relator_); }

 private:
  QuotientHom hom_;
  std::size_t relator_;
};

namespace detail {

inline std::optional<NFWord> substitute(const QuotientHom& hom, const GenWord& w) {
  std::vector<RawLetter> raw;
  for (const auto& l : w) {
    auto it = hom.images.find(l.symbol);
    if (it == hom.images.end()) return std::nullopt;
    const auto& img = it->second.letters();
    if (img.size() == 1) {
      raw.emplace_back(img[0].factor, img[0].exponent * l.exp);
      continue;
    }
    const auto n = l.exp < 0 ? -l.exp : l.exp;
    for (std::int64_t k = 0; k < n; ++k) {
      if (l.exp > 0)
        for (const auto& x : img) raw.emplace_back(x.factor, x.exponent);
      else
        for (auto x = img.rbegin(); x != img.rend(); ++x) raw.emplace_back(x->factor, -x->exponent);
    }
  }
  return reduce(hom.codomain, raw);
}

}  // namespace detail

/// Recomputes every relator image; returns a copy with verified and
/// failing_relator set. Never throws on a bad relator.
inline QuotientHom check_hom(QuotientHom hom) {
  hom.verified = false;
  hom.failing_relator.reset();
  for (std::size_t i = 0; i < hom.domain.relators.size(); ++i) {
    auto img = detail::substitute(hom, hom.domain.relators[i]);
    if (!img || !img->is_identity()) {
      hom.failing_relator = i;
      return hom;
    }
  }
  hom.verified = true;
  return hom;
}

inline void check_images(const QuotientHom& hom) {
  for (const auto& [sym, w] : hom.images) {
    if (!hom.domain.has_generator(sym)) throw InputError("image given for unknown generator " + sym);
    if (!(*w.group() == *hom.codomain)) throw GroupMismatch("image of " + sym + " lies in another group");
  }
}

/// Builds the hom sending every generator outside `kept` to the identity.
/// A kept generator listed as `pending` may stay unassigned until
/// eliminate_generator fills it in; otherwise verification runs now and a
/// failing relator raises WellDefinednessError.
inline QuotientHom quotient_map(const GroupPresentation& pres, const std::set<std::string>& kept,
                                const GroupRef& codomain, const std::map<std::string, NFWord>& images,
                                const std::optional<std::string>& pending = std::nullopt) {
  check_presentation(pres);
  QuotientHom hom{pres, codomain, images, false, std::nullopt};
  check_images(hom);
  for (const auto& g : pres.generators) {
    if (kept.count(g)) {
      if (!images.count(g) && g != pending) throw InputError("kept generator " + g + " has no image");
      continue;
    }
    auto it = hom.images.find(g);
    if (it == hom.images.end())
      hom.images.emplace(g, identity(codomain));
    else if (!it->second.is_identity())
      throw InputError("generator " + g + " is killed but given a nontrivial image");
  }
  for (const auto& k : kept)
    if (!pres.has_generator(k)) throw InputError("kept symbol " + k + " is not a generator");
  if (pending) {
    if (!kept.count(*pending)) throw InputError("pending generator must be kept");
    return hom;
  }
  hom = check_hom(std::move(hom));
  if (!hom.verified) {
    const auto idx = *hom.failing_relator;
    throw WellDefinednessError(std::move(hom), idx);
  }
  return hom;
}

/// Solves `long_relator` for a generator occurring once with exponent +-1:
/// U x V = 1 gives x = U^-1 V^-1, and U x^-1 V = 1 gives x = V U.
inline GenWord solve_for(const GenWord& relator, const std::string& x) {
  std::optional<std::size_t> pos;
  for (std::size_t i = 0; i < relator.size(); ++i) {
    if (relator[i].symbol != x) continue;
    if (pos) throw InputError("generator " + x + " occurs more than once; cannot solve");
    pos = i;
  }
  if (!pos) throw InputError("generator " + x + " does not occur in the relator");
  const auto e = relator[*pos].exp;
  if (e != 1 && e != -1) throw InputError("generator " + x + " has exponent " + std::to_string(e) + "; cannot solve");
  GenWord u(relator.begin(), relator.begin() + static_cast<std::ptrdiff_t>(*pos));
  GenWord v(relator.begin() + static_cast<std::ptrdiff_t>(*pos) + 1, relator.end());
  if (e == 1) return free_reduce(gen_concat({gen_inverse(u), gen_inverse(v)}));
  return free_reduce(gen_concat({v, u}));
}

inline QuotientHom eliminate_generator(QuotientHom hom, const GenWord& long_relator, const std::string& eliminated) {
  if (!hom.domain.has_generator(eliminated)) throw InputError("unknown generator " + eliminated);
  const auto expr = solve_for(long_relator, eliminated);
  hom.images.erase(eliminated);
  auto img = detail::substitute(hom, expr);
  if (!img) throw InputError("solved expression for " + eliminated + " uses unmapped generators");
  hom.images.insert_or_assign(eliminated, *img);
  hom = check_hom(std::move(hom));
  if (!hom.verified) {
    const auto idx = *hom.failing_relator;
    throw WellDefinednessError(std::move(hom), idx);
  }
  return hom;
}

inline NFWord apply_hom(const QuotientHom& hom, const GenWord& w) {
  if (!hom.verified) throw InputError("homomorphism is not verified");
  auto img = detail::substitute(hom, w);
  if (!img) {
    for (const auto& l : w)
      if (!hom.images.count(l.symbol)) throw InputError("unmapped symbol " + l.symbol);
  }
  return *img;
}

}  // namespace loopcert
