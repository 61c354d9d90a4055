#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "folforge/error.hpp"
#include "folforge/render.hpp"
#include "folforge/utf8.hpp"

namespace folforge {

// Bijection between logical symbols and the lexical items fed to text
// models.  Prefix symbols (negation, quantifiers) are followed by their
// operand without a space in canonical renders, so rewriting them inserts
// one trailing space; binary symbols are already space-padded.
class SymbolMap {
 public:
  struct Entry {
    std::string symbol;
    std::string item;
    bool prefix;
  };

  explicit SymbolMap(std::vector<Entry> entries) : entries_(std::move(entries)) {
    std::set<std::string> symbols;
    std::set<std::string> items;
    for (const auto& e : entries_) {
      if (e.symbol.empty() || e.item.empty() ||
          !symbols.insert(e.symbol).second || !items.insert(e.item).second) {
        throw Error("symbol map must be a bijection between nonempty strings");
      }
    }
  }

  static const SymbolMap& standard() {
    static const SymbolMap m({
        {std::string(notation::kNot), "No", true},
        {std::string(notation::kForAll), "For All", true},
        {std::string(notation::kExists), "There Exists", true},
        {std::string(notation::kXor), "XOR", false},
        {std::string(notation::kImplies), "implies", false},
        {std::string(notation::kAnd), "and", false},
        {std::string(notation::kOr), "or", false},
    });
    return m;
  }

  const std::vector<Entry>& entries() const { return entries_; }

  const Entry* by_symbol(std::string_view s) const {
    for (const auto& e : entries_) {
      if (e.symbol == s) return &e;
    }
    return nullptr;
  }

 private:
  std::vector<Entry> entries_;
};

namespace detail {

inline bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

// Operator-like code points that have no entry in any symbol map.
inline bool is_logical_operator(char32_t cp) {
  return (cp >= 0x2190 && cp <= 0x21FF) || (cp >= 0x2200 && cp <= 0x22FF) ||
         (cp >= 0x27F0 && cp <= 0x27FF) || (cp >= 0x2900 && cp <= 0x297F);
}

}  // namespace detail

// Replaces every logical symbol with its lexical item, padding it with a
// single space on any side where it would otherwise touch a word.
inline std::string rewrite_symbols(std::string_view text,
                                   const SymbolMap& map = SymbolMap::standard()) {
  std::string out;
  out.reserve(text.size() * 2);
  std::size_t i = 0;
  while (i < text.size()) {
    const SymbolMap::Entry* hit = nullptr;
    for (const auto& e : map.entries()) {
      if (text.substr(i).starts_with(e.symbol)) {
        hit = &e;
        break;
      }
    }
    if (hit != nullptr) {
      if (!out.empty() && out.back() != ' ' && out.back() != '(' &&
          out.back() != ',') {
        out += ' ';
      }
      out += hit->item;
      i += hit->symbol.size();
      if (i < text.size() && text[i] != ' ' && text[i] != ')' &&
          text[i] != ',') {
        out += ' ';
      }
      continue;
    }
    const char c = text[i];
    if (c == '~' || c == '&' || c == '|' || c == '!' ||
        text.substr(i).starts_with("->")) {
      throw UnknownSymbol("operator '" + std::string(1, c) + "' at byte " +
                          std::to_string(i) + " has no lexical item");
    }
    if (static_cast<unsigned char>(c) >= 0x80) {
      std::size_t len = 1;
      while (i + len < text.size() &&
             (static_cast<unsigned char>(text[i + len]) & 0xC0) == 0x80) {
        ++len;
      }
      const auto cps = utf8::decode(text.substr(i, len));
      if (!cps.empty() && detail::is_logical_operator(cps.front())) {
        throw UnknownSymbol("operator '" + std::string(text.substr(i, len)) +
                            "' at byte " + std::to_string(i) +
                            " has no lexical item");
      }
      out.append(text.substr(i, len));
      i += len;
      continue;
    }
    out += c;
    ++i;
  }
  return out;
}

// Inverse of rewrite_symbols on canonical renders: each whole-word lexical
// item becomes its symbol again and the space inserted after prefix items
// is removed.
inline std::string restore_symbols(std::string_view text,
                                   const SymbolMap& map = SymbolMap::standard()) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const bool boundary_before = i == 0 || !detail::is_word_char(text[i - 1]);
    const SymbolMap::Entry* hit = nullptr;
    if (boundary_before) {
      for (const auto& e : map.entries()) {
        if (!text.substr(i).starts_with(e.item)) continue;
        const std::size_t end = i + e.item.size();
        if (end < text.size() && detail::is_word_char(text[end])) continue;
        // Prefer the longest item in case one is a prefix of another.
        if (hit == nullptr || e.item.size() > hit->item.size()) hit = &e;
      }
    }
    if (hit == nullptr) {
      out += text[i++];
      continue;
    }
    out += hit->symbol;
    i += hit->item.size();
    if (hit->prefix && i < text.size() && text[i] == ' ') ++i;
  }
  return out;
}

}  // namespace folforge
