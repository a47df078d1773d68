#pragma once

// Words over named generators (a1, b1, c1, d1, h, ...), used for relators,
// witness classes and expansion terms before they are mapped into a free
// product.

#include <cstdint>
#include <string>
#include <vector>

#include "loopcert/error.hpp"

namespace loopcert {

struct GenLetter {
  std::string symbol;
  std::int64_t exp = 1;

  friend bool operator==(const GenLetter&, const GenLetter&) = default;
  friend auto operator<=>(const GenLetter&, const GenLetter&) = default;
};

using GenWord = std::vector<GenLetter>;

/// Free reduction: merges equal neighbours and drops zero exponents.
inline GenWord free_reduce(const GenWord& w) {
  GenWord out;
  for (const auto& l : w) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().symbol == l.symbol) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline GenWord gen_inverse(const GenWord& w) {
  GenWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->symbol, -it->exp});
  return out;
}

inline GenWord gen_concat(std::initializer_list<GenWord> parts) {
  GenWord out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline GenWord gen_power(const GenWord& w, std::int64_t s) {
  const GenWord base = s < 0 ? gen_inverse(w) : w;
  GenWord out;
  for (std::int64_t i = 0; i < (s < 0 ? -s : s); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

inline GenWord gen(const std::string& symbol, std::int64_t exp = 1) { return {{symbol, exp}}; }

/// "c1^1.c2^2", "1" for the empty word. Separator may be '.' or spaces.
inline std::string format_gen_word(const GenWord& w, const std::string& sep = ".") {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += sep;
    s += w[i].symbol + "^" + std::to_string(w[i].exp);
  }
  return s;
}

/// Short form used in presentation listings: exponent 1 omitted.
inline std::string pretty_gen_word(const GenWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += w[i].symbol;
    if (w[i].exp != 1) s += "^" + std::to_string(w[i].exp);
  }
  return s;
}

inline GenWord parse_gen_word(const std::string& text) {
  GenWord out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    if (tok == "1") {
      tok.clear();
      return;
    }
    auto caret = tok.find('^');
    GenLetter l{tok.substr(0, caret), 1};
    if (l.symbol.empty()) throw ParseError("empty generator name in '" + text + "'");
    if (caret != std::string::npos) {
      try {
        std::size_t used = 0;
        const auto digits = tok.substr(caret + 1);
        l.exp = std::stoll(digits, &used);
        if (used != digits.size()) throw std::invalid_argument(digits);
      } catch (const std::exception&) {
        throw ParseError("bad exponent in '" + tok + "'");
      }
    }
    out.push_back(l);
    tok.clear();
  };
  for (char ch : text) {
    if (ch == '.' || ch == ' ')
      flush();
    else
      tok += ch;
  }
  flush();
  return out;
}

}  // namespace loopcert
