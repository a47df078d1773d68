#pragma once

// Free products of cyclic groups: reduced normal forms, cyclic reduction,
// the conjugacy decision (rotation classes of cyclically reduced words),
// power/subgroup membership up to conjugacy, and an exhaustive-search oracle
// used to cross-check the decision procedure.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "loopcert/error.hpp"

namespace loopcert {

/// One factor of a free product. `order == 0` encodes infinite order.
struct CyclicFactor {
  std::string name;
  std::int64_t order = 0;

  bool infinite() const { return order == 0; }
  friend bool operator==(const CyclicFactor&, const CyclicFactor&) = default;
};

class FreeProduct {
 public:
  explicit FreeProduct(std::vector<CyclicFactor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw InputError("free product needs at least one factor");
    std::set<std::string> seen;
    for (const auto& f : factors_) {
      if (f.order != 0 && f.order < 2)
        throw InputError("factor " + f.name + ": order must be 0 (infinite) or >= 2");
      if (f.name.empty()) throw InputError("factor name must be nonempty");
      if (!seen.insert(f.name).second) throw InputError("duplicate factor name " + f.name);
    }
  }

  const std::vector<CyclicFactor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  const CyclicFactor& factor(std::size_t i) const { return factors_.at(i); }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (factors_[i].name == name) return i;
    return std::nullopt;
  }

  /// Canonical exponent: finite factors use 1..n-1 (0 means the letter vanishes).
  std::int64_t canonical_exponent(std::size_t factor_index, std::int64_t e) const {
    const auto n = factor(factor_index).order;
    if (n == 0) return e;
    auto r = e % n;
    return r < 0 ? r + n : r;
  }

  /// Parses "Z3*Z5*Z" (positional names c1, c2, ...) or "x=Z3*y=Z".
  static FreeProduct parse(const std::string& text) {
    std::vector<CyclicFactor> out;
    std::size_t pos = 0;
    std::size_t k = 1;
    while (pos <= text.size()) {
      auto star = text.find('*', pos);
      auto token = text.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
      std::string name = "c" + std::to_string(k);
      if (auto eq = token.find('='); eq != std::string::npos) {
        name = token.substr(0, eq);
        token = token.substr(eq + 1);
      }
      if (token.empty() || token[0] != 'Z') throw ParseError("bad factor '" + token + "' in group " + text);
      std::int64_t order = 0;
      if (token.size() > 1) {
        const auto digits = token.substr(1);
        if (digits.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError("bad factor order '" + digits + "'");
        order = std::stoll(digits);
      }
      out.push_back({name, order});
      ++k;
      if (star == std::string::npos) break;
      pos = star + 1;
    }
    try {
      return FreeProduct(std::move(out));
    } catch (const InputError& e) {
      throw ParseError(e.what());
    }
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += '*';
      s += factors_[i].name + "=Z";
      if (factors_[i].order) s += std::to_string(factors_[i].order);
    }
    return s;
  }

  friend bool operator==(const FreeProduct&, const FreeProduct&) = default;

 private:
  std::vector<CyclicFactor> factors_;
};

using GroupRef = std::shared_ptr<const FreeProduct>;

inline GroupRef make_group(std::vector<CyclicFactor> factors) {
  return std::make_shared<const FreeProduct>(std::move(factors));
}

inline GroupRef make_group(const std::string& text) {
  return std::make_shared<const FreeProduct>(FreeProduct::parse(text));
}

struct Letter {
  std::size_t factor = 0;
  std::int64_t exponent = 0;

  friend auto operator<=>(const Letter&, const Letter&) = default;
  friend bool operator==(const Letter&, const Letter&) = default;
};

using RawLetter = std::pair<std::size_t, std::int64_t>;

class NFWord;
NFWord reduce(const GroupRef& group, std::span<const RawLetter> raw);

/// A reduced word: adjacent letters come from different factors, every
/// exponent is canonical and nonzero. The empty word is the identity.
class NFWord {
 public:
  explicit NFWord(GroupRef group) : group_(std::move(group)) {}

  const GroupRef& group() const { return group_; }
  const FreeProduct& group_ref() const { return *group_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  std::string to_string() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) s += '.';
      s += group_->factor(letters_[i].factor).name + "^" + std::to_string(letters_[i].exponent);
    }
    return s;
  }

  /// Parses "c1^1.c2^-1" against factor names; "1" or "" is the identity.
  static NFWord parse(const GroupRef& group, const std::string& text) {
    std::vector<RawLetter> raw;
    if (!text.empty() && text != "1") {
      std::size_t pos = 0;
      while (true) {
        auto dot = text.find('.', pos);
        auto tok = text.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        auto caret = tok.find('^');
        auto name = tok.substr(0, caret);
        std::int64_t e = 1;
        if (caret != std::string::npos) {
          try {
            std::size_t used = 0;
            e = std::stoll(tok.substr(caret + 1), &used);
            if (used != tok.size() - caret - 1) throw std::invalid_argument(tok);
          } catch (const std::exception&) {
            throw ParseError("bad exponent in '" + tok + "'");
          }
        }
        auto idx = group->index_of(name);
        if (!idx) throw ParseError("unknown factor '" + name + "' in word " + text);
        raw.emplace_back(*idx, e);
        if (dot == std::string::npos) break;
        pos = dot + 1;
      }
    }
    return reduce(group, raw);
  }

  // Equality compares group values, so words over equal-but-distinct
  // FreeProduct objects compare equal.
  friend bool operator==(const NFWord& a, const NFWord& b) {
    return a.letters_ == b.letters_ && *a.group_ == *b.group_;
  }

  /// Shortlex order: length first, then letters under (factor, exponent).
  friend bool shortlex_less(const NFWord& a, const NFWord& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.letters_ < b.letters_;
  }

 private:
  friend NFWord reduce(const GroupRef&, std::span<const RawLetter>);
  friend NFWord detail_from_reduced(const GroupRef&, std::vector<Letter>);
  GroupRef group_;
  std::vector<Letter> letters_;
};

// Trusted constructor for letter sequences already known to be reduced.
inline NFWord detail_from_reduced(const GroupRef& group, std::vector<Letter> letters) {
  NFWord w(group);
  w.letters_ = std::move(letters);
  return w;
}

inline NFWord identity(const GroupRef& group) { return NFWord(group); }

/// Stack-based free-product reduction: merge neighbours from the same factor,
/// drop letters whose exponent vanishes.
inline NFWord reduce(const GroupRef& group, std::span<const RawLetter> raw) {
  NFWord w(group);
  auto& out = w.letters_;
  for (const auto& [f, e0] : raw) {
    if (f >= group->size()) throw InputError("factor index " + std::to_string(f) + " out of range");
    auto e = group->canonical_exponent(f, e0);
    if (e == 0) continue;
    if (!out.empty() && out.back().factor == f) {
      auto merged = group->canonical_exponent(f, out.back().exponent + e);
      if (merged == 0)
        out.pop_back();
      else
        out.back().exponent = merged;
    } else {
      out.push_back({f, e});
    }
  }
  return w;
}

inline NFWord reduce(const GroupRef& group, std::initializer_list<RawLetter> raw) {
  return reduce(group, std::span<const RawLetter>(raw.begin(), raw.size()));
}

inline std::vector<RawLetter> raw_letters(const NFWord& w) {
  std::vector<RawLetter> raw;
  raw.reserve(w.size());
  for (const auto& l : w.letters()) raw.emplace_back(l.factor, l.exponent);
  return raw;
}

inline void require_same_group(const NFWord& a, const NFWord& b) {
  if (a.group() != b.group() && !(*a.group() == *b.group()))
    throw GroupMismatch("words belong to different free products: " + a.group()->to_string() + " vs " +
                        b.group()->to_string());
}

inline NFWord multiply(const NFWord& a, const NFWord& b) {
  require_same_group(a, b);
  auto raw = raw_letters(a);
  for (const auto& l : b.letters()) raw.emplace_back(l.factor, l.exponent);
  return reduce(a.group(), raw);
}

inline NFWord inverse(const NFWord& w) {
  std::vector<RawLetter> raw;
  raw.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) raw.emplace_back(it->factor, -it->exponent);
  return reduce(w.group(), raw);
}

inline NFWord power(const NFWord& w, std::int64_t s) {
  NFWord base = s < 0 ? inverse(w) : w;
  NFWord out = identity(w.group());
  for (std::int64_t i = 0; i < (s < 0 ? -s : s); ++i) out = multiply(out, base);
  return out;
}

/// u * w * u^-1
inline NFWord conjugate(const NFWord& u, const NFWord& w) { return multiply(multiply(u, w), inverse(u)); }

/// A cyclically reduced word stored in its canonical rotation: the
/// lexicographically least rotation under (factor, exponent) order.
class CyclicWord {
 public:
  explicit CyclicWord(GroupRef group) : group_(std::move(group)) {}

  const GroupRef& group() const { return group_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  NFWord embed() const { return detail_from_reduced(group_, letters_); }
  std::string to_string() const { return embed().to_string(); }

  friend bool operator==(const CyclicWord& a, const CyclicWord& b) {
    return a.letters_ == b.letters_ && *a.group_ == *b.group_;
  }
  friend bool operator<(const CyclicWord& a, const CyclicWord& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.letters_ < b.letters_;
  }

 private:
  friend struct CyclicReduction cyclically_reduce(const NFWord& w);
  GroupRef group_;
  std::vector<Letter> letters_;
};

struct CyclicReduction {
  CyclicWord word;
  NFWord conjugator;  // w == conjugator * word.embed() * conjugator^-1
};

/// Index of the least rotation (O(n^2); words here are short).
inline std::size_t least_rotation(const std::vector<Letter>& letters) {
  const auto n = letters.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = letters[(k + i) % n];
      const auto& b = letters[(best + i) % n];
      if (a == b) continue;
      if (a < b) best = k;
      break;
    }
  }
  return best;
}

inline CyclicReduction cyclically_reduce(const NFWord& w) {
  const auto& group = w.group();
  std::vector<Letter> z = w.letters();
  std::vector<RawLetter> conj;
  // x^p M x^q = x^-q (x^(p+q) M) x^q
  while (z.size() >= 2 && z.front().factor == z.back().factor) {
    const auto f = z.front().factor;
    const auto q = z.back().exponent;
    conj.emplace_back(f, -q);
    z.pop_back();
    auto merged = group->canonical_exponent(f, z.front().exponent + q);
    if (merged == 0)
      z.erase(z.begin());
    else
      z.front().exponent = merged;
  }
  const auto k = least_rotation(z);
  // z = P R P^-1 with R the rotation starting at k and P = z[0..k).
  for (std::size_t i = 0; i < k; ++i) conj.emplace_back(z[i].factor, z[i].exponent);
  std::rotate(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(k), z.end());
  CyclicReduction out{CyclicWord(group), reduce(group, conj)};
  out.word.letters_ = std::move(z);
  return out;
}

inline CyclicWord cyclic_class(const NFWord& w) { return cyclically_reduce(w).word; }

struct ConjugacyDecision {
  bool conjugate = false;
  std::optional<NFWord> conjugator;  // u with u * w1 * u^-1 == w2
};

/// Conjugacy in a free product (trivial amalgam): conjugate iff the cyclic
/// reductions are rotations of each other.
inline ConjugacyDecision are_conjugate(const NFWord& w1, const NFWord& w2) {
  require_same_group(w1, w2);
  auto r1 = cyclically_reduce(w1);
  auto r2 = cyclically_reduce(w2);
  if (!(r1.word == r2.word)) return {};
  return {true, multiply(r2.conjugator, inverse(r1.conjugator))};
}

struct PowerMatch {
  std::int64_t exponent = 0;
  NFWord conjugator;  // conjugator * w * conjugator^-1 == base^exponent
};

/// Finds s != 0 with w conjugate to base^s. Only exponents compatible with
/// cyclic lengths are candidates, so the search is finite.
inline std::optional<PowerMatch> conjugate_to_power(const NFWord& w, const NFWord& base) {
  require_same_group(w, base);
  const auto cw = cyclically_reduce(w);
  const auto cb = cyclically_reduce(base);
  if (cb.word.is_identity()) {
    if (cw.word.is_identity()) return PowerMatch{1, identity(w.group())};
    return std::nullopt;
  }
  std::vector<std::int64_t> candidates;
  const auto lw = static_cast<std::int64_t>(cw.word.size());
  const auto lb = static_cast<std::int64_t>(cb.word.size());
  if (lb >= 2) {
    // base^s is conjugate to the cyclic word repeated |s| times.
    if (lw == 0 || lw % lb != 0) return std::nullopt;
    candidates = {lw / lb, -(lw / lb)};
  } else {
    const auto& bl = cb.word.letters().front();
    const auto n = w.group()->factor(bl.factor).order;
    if (lw == 0) {
      if (n == 0) return std::nullopt;
      candidates = {n};
    } else if (lw == 1 && cw.word.letters().front().factor == bl.factor) {
      const auto e = cw.word.letters().front().exponent;
      if (n == 0) {
        if (e % bl.exponent == 0) candidates = {e / bl.exponent};
      } else {
        for (std::int64_t s = 1; s < n; ++s)
          if (w.group()->canonical_exponent(bl.factor, s * bl.exponent) == e) {
            candidates = {s};
            break;
          }
      }
    }
  }
  for (auto s : candidates) {
    if (s == 0) continue;
    auto d = are_conjugate(w, power(base, s));
    if (d.conjugate) return PowerMatch{s, *d.conjugator};
  }
  return std::nullopt;
}

struct FamilyMatch {
  std::size_t base_index = 0;
  PowerMatch match;
};

/// First base (input order) with w conjugate to a nonzero power of it.
inline std::optional<FamilyMatch> conjugate_into_cyclic_subgroup_family(const NFWord& w,
                                                                        std::span<const NFWord> bases) {
  for (std::size_t i = 0; i < bases.size(); ++i)
    if (auto m = conjugate_to_power(w, bases[i])) return FamilyMatch{i, *m};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Exhaustive oracle. Independent of the rotation machinery above: it only uses
// reduce/multiply and enumerates conjugators.

/// Default exponent bound for infinite factors in the oracle's enumeration.
inline std::int64_t oracle_default_max_exponent(const NFWord& w1, const NFWord& w2) {
  std::int64_t m = 1;
  for (const auto* w : {&w1, &w2})
    for (const auto& l : w->letters())
      if (w->group()->factor(l.factor).infinite()) m = std::max(m, std::abs(l.exponent));
  return 2 * m;
}

/// All conjugates u*w*u^-1 with |u| <= max_len and length <= max_result_len,
/// each mapped to its shortlex-least conjugator. The depth-first search
/// skips a subtree only when every conjugate in it provably exceeds
/// max_result_len (each extension shortens the conjugate by at most two).
inline std::map<std::vector<Letter>, NFWord> oracle_conjugates(const NFWord& w, std::size_t max_len,
                                                                 std::size_t max_result_len,
                                                                 std::int64_t max_exponent) {
  const auto& group = w.group();
  std::vector<Letter> alphabet;
  for (std::size_t f = 0; f < group->size(); ++f) {
    const auto n = group->factor(f).order;
    if (n == 0) {
      for (std::int64_t e = -max_exponent; e <= max_exponent; ++e)
        if (e != 0) alphabet.push_back({f, e});
    } else {
      for (std::int64_t e = 1; e < n; ++e) alphabet.push_back({f, e});
    }
  }
  std::map<std::vector<Letter>, NFWord> found;
  struct Frame {
    std::vector<Letter> u;  // stored left-to-right
    NFWord v;
  };
  std::vector<Frame> stack;
  stack.push_back({{}, w});
  while (!stack.empty()) {
    auto fr = std::move(stack.back());
    stack.pop_back();
    const auto depth = fr.u.size();
    if (fr.v.size() <= max_result_len) {
      auto u = detail_from_reduced(group, fr.u);
      auto it = found.find(fr.v.letters());
      if (it == found.end())
        found.emplace(fr.v.letters(), u);
      else if (shortlex_less(u, it->second))
        it->second = u;
    }
    if (depth == max_len) continue;
    const auto remaining = static_cast<std::int64_t>(max_len - depth);
    if (static_cast<std::int64_t>(fr.v.size()) - 2 * remaining > static_cast<std::int64_t>(max_result_len)) continue;
    for (const auto& x : alphabet) {
      if (!fr.u.empty() && fr.u.front().factor == x.factor) continue;
      std::vector<Letter> u2;
      u2.reserve(depth + 1);
      u2.push_back(x);
      u2.insert(u2.end(), fr.u.begin(), fr.u.end());
      auto xw = reduce(group, {RawLetter{x.factor, x.exponent}});
      stack.push_back({std::move(u2), conjugate(xw, fr.v)});
    }
  }
  return found;
}

/// Exhaustive search for u (|u| <= max_len) with u*w1*u^-1 == w2; returns the
/// shortlex-least such u.
inline std::optional<NFWord> oracle_conjugate_search(const NFWord& w1, const NFWord& w2, std::size_t max_len,
                                                     std::optional<std::int64_t> max_exponent = std::nullopt) {
  require_same_group(w1, w2);
  const auto bound = max_exponent.value_or(oracle_default_max_exponent(w1, w2));
  auto table = oracle_conjugates(w1, max_len, w2.size(), bound);
  auto it = table.find(w2.letters());
  if (it == table.end()) return std::nullopt;
  return it->second;
}

/// Every reduced word of length <= max_len; infinite factors use exponents
/// in [-max_exponent, max_exponent]. Shortlex order.
inline std::vector<NFWord> enumerate_reduced_words(const GroupRef& group, std::size_t max_len,
                                                   std::int64_t max_exponent) {
  std::vector<Letter> alphabet;
  for (std::size_t f = 0; f < group->size(); ++f) {
    const auto n = group->factor(f).order;
    if (n == 0) {
      for (std::int64_t e = -max_exponent; e <= max_exponent; ++e)
        if (e != 0) alphabet.push_back({f, e});
    } else {
      for (std::int64_t e = 1; e < n; ++e) alphabet.push_back({f, e});
    }
  }
  std::sort(alphabet.begin(), alphabet.end());
  std::vector<std::vector<Letter>> level{{}};
  std::vector<NFWord> out{identity(group)};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& prefix : level)
      for (const auto& x : alphabet) {
        if (!prefix.empty() && prefix.back().factor == x.factor) continue;
        auto word = prefix;
        word.push_back(x);
        out.push_back(detail_from_reduced(group, word));
        next.push_back(std::move(word));
      }
    level = std::move(next);
  }
  return out;
}

}  // namespace loopcert
