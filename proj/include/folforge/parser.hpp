#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "folforge/error.hpp"
#include "folforge/formula.hpp"
#include "folforge/render.hpp"

namespace folforge {

enum class Syntax { Unicode, Ascii, Either };

// Optional arity oracle consulted while parsing.  Returns the declared arity
// of a predicate, or nullopt when the predicate is unknown to it.
using ArityLookup = std::function<std::optional<int>(std::string_view)>;

namespace detail {

enum class Tok {
  Ident,
  LParen,
  RParen,
  Comma,
  Not,
  And,
  Or,
  Xor,
  Implies,
  ForAll,
  Exists,
  End
};

inline std::string_view tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Not: return "negation";
    case Tok::And: return "conjunction";
    case Tok::Or: return "disjunction";
    case Tok::Xor: return "exclusive-or";
    case Tok::Implies: return "implication";
    case Tok::ForAll: return "universal quantifier";
    case Tok::Exists: return "existential quantifier";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
};

class Lexer {
 public:
  Lexer(std::string_view src, Syntax syntax) : src_(src), syntax_(syntax) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, pos_, {}});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  bool unicode_ok() const { return syntax_ != Syntax::Ascii; }
  bool ascii_ok() const { return syntax_ != Syntax::Unicode; }

  void skip_space() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
            src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool starts_with(std::string_view s) const {
    return src_.substr(pos_).starts_with(s);
  }

  Token take(Tok kind, std::size_t len) {
    Token t{kind, pos_, src_.substr(pos_, len)};
    pos_ += len;
    return t;
  }

  Token next() {
    const char c = src_[pos_];
    if (c == '(') return take(Tok::LParen, 1);
    if (c == ')') return take(Tok::RParen, 1);
    if (c == ',') return take(Tok::Comma, 1);
    if (unicode_ok()) {
      struct Sym {
        std::string_view text;
        Tok kind;
      };
      static constexpr Sym kSymbols[] = {
          {notation::kNot, Tok::Not},         {notation::kAnd, Tok::And},
          {notation::kOr, Tok::Or},           {notation::kXor, Tok::Xor},
          {notation::kImplies, Tok::Implies}, {notation::kForAll, Tok::ForAll},
          {notation::kExists, Tok::Exists},
      };
      for (const auto& s : kSymbols) {
        if (starts_with(s.text)) return take(s.kind, s.text.size());
      }
    }
    if (ascii_ok()) {
      if (c == '~') return take(Tok::Not, 1);
      if (c == '&') return take(Tok::And, 1);
      if (c == '|') return take(Tok::Or, 1);
      if (starts_with("->")) return take(Tok::Implies, 2);
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      std::size_t end = pos_ + 1;
      while (end < src_.size()) {
        const char d = src_[end];
        if ((d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') ||
            (d >= '0' && d <= '9') || d == '_') {
          ++end;
        } else {
          break;
        }
      }
      const std::string_view word = src_.substr(pos_, end - pos_);
      if (ascii_ok()) {
        if (word == "forall") return take(Tok::ForAll, word.size());
        if (word == "exists") return take(Tok::Exists, word.size());
        if (word == "xor") return take(Tok::Xor, word.size());
      }
      return take(Tok::Ident, word.size());
    }
    // Report the whole UTF-8 sequence for readability.
    std::size_t len = 1;
    const auto b = static_cast<unsigned char>(c);
    if ((b & 0xE0) == 0xC0) len = 2;
    else if ((b & 0xF0) == 0xE0) len = 3;
    else if ((b & 0xF8) == 0xF0) len = 4;
    len = std::min(len, src_.size() - pos_);
    throw SyntaxError(pos_, "unexpected character '" +
                                std::string(src_.substr(pos_, len)) + "'");
  }

  std::string_view src_;
  Syntax syntax_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  static constexpr int kMaxNesting = 512;

  Parser(std::vector<Token> tokens, const ArityLookup* arity)
      : toks_(std::move(tokens)), arity_(arity) {}

  Formula parse_all() {
    Formula f = implication();
    expect(Tok::End, {Tok::End, Tok::And, Tok::Or, Tok::Xor, Tok::Implies});
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    std::set<std::string> names;
    for (Tok t : expected) names.emplace(tok_name(t));
    const Token& t = peek();
    std::string found(tok_name(t.kind));
    if (t.kind != Tok::End) found += " '" + std::string(t.text) + "'";
    throw SyntaxError(t.offset, std::move(names), std::move(found));
  }

  const Token& expect(Tok kind, std::initializer_list<Tok> expected) {
    if (peek().kind != kind) fail(expected);
    return toks_[pos_++];
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.nesting_ > kMaxNesting) {
        throw SyntaxError(p.peek().offset, "nesting too deep");
      }
    }
    ~DepthGuard() { --p.nesting_; }
    Parser& p;
  };

  // → and ⊕ do not chain without explicit parentheses.
  Formula implication() {
    DepthGuard guard(*this);
    Formula left = exclusive();
    if (peek().kind != Tok::Implies) return left;
    ++pos_;
    Formula right = exclusive();
    if (peek().kind == Tok::Implies) {
      throw SyntaxError(peek().offset,
                        "implication is non-associative; add parentheses");
    }
    return Formula::binary(Connective::Implies, std::move(left),
                           std::move(right));
  }

  Formula exclusive() {
    Formula left = disjunction();
    if (peek().kind != Tok::Xor) return left;
    ++pos_;
    Formula right = disjunction();
    if (peek().kind == Tok::Xor) {
      throw SyntaxError(peek().offset,
                        "exclusive-or is non-associative; add parentheses");
    }
    return Formula::binary(Connective::Xor, std::move(left), std::move(right));
  }

  Formula disjunction() {
    Formula left = conjunction();
    while (peek().kind == Tok::Or) {
      ++pos_;
      left = Formula::binary(Connective::Or, std::move(left), conjunction());
    }
    return left;
  }

  Formula conjunction() {
    Formula left = unary();
    while (peek().kind == Tok::And) {
      ++pos_;
      left = Formula::binary(Connective::And, std::move(left), unary());
    }
    return left;
  }

  Formula unary() {
    if (peek().kind == Tok::Not) {
      DepthGuard guard(*this);
      ++pos_;
      return Formula::negation(unary());
    }
    return primary();
  }

  Formula primary() {
    switch (peek().kind) {
      case Tok::LParen: {
        ++pos_;
        Formula inner = implication();
        expect(Tok::RParen,
               {Tok::RParen, Tok::And, Tok::Or, Tok::Xor, Tok::Implies});
        return inner;
      }
      case Tok::ForAll:
      case Tok::Exists: {
        const Quantifier q = peek().kind == Tok::ForAll ? Quantifier::ForAll
                                                        : Quantifier::Exists;
        ++pos_;
        std::string var(expect(Tok::Ident, {Tok::Ident}).text);
        expect(Tok::LParen, {Tok::LParen});
        bound_.push_back(var);
        Formula body = implication();
        bound_.pop_back();
        expect(Tok::RParen,
               {Tok::RParen, Tok::And, Tok::Or, Tok::Xor, Tok::Implies});
        return Formula::quantified(q, std::move(var), std::move(body));
      }
      case Tok::Ident:
        if (peek(1).kind == Tok::LParen) return atom();
        ++pos_;
        fail({Tok::LParen});
      default:
        fail({Tok::Ident, Tok::LParen, Tok::Not, Tok::ForAll, Tok::Exists});
    }
  }

  Formula atom() {
    const Token& name = toks_[pos_++];
    ++pos_;  // '('
    std::vector<Argument> args;
    while (true) {
      args.push_back(argument());
      if (peek().kind == Tok::Comma) {
        ++pos_;
        continue;
      }
      expect(Tok::RParen, {Tok::RParen, Tok::Comma});
      break;
    }
    if (arity_ != nullptr && *arity_) {
      if (auto declared = (*arity_)(name.text);
          declared && *declared != static_cast<int>(args.size())) {
        throw ArityError("predicate " + std::string(name.text) +
                         " declared with arity " + std::to_string(*declared) +
                         " but used with " + std::to_string(args.size()) +
                         " argument(s) at byte " + std::to_string(name.offset));
      }
    }
    return Formula::atom(std::string(name.text), std::move(args));
  }

  Argument argument() {
    if (peek().kind == Tok::Ident &&
        (peek(1).kind == Tok::Comma || peek(1).kind == Tok::RParen)) {
      std::string name(toks_[pos_++].text);
      for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
        if (*it == name) return Term::variable(std::move(name));
      }
      return Term::constant(std::move(name));
    }
    return implication();
  }

  std::vector<Token> toks_;
  const ArityLookup* arity_;
  std::size_t pos_ = 0;
  int nesting_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace detail

// Parses a formula string.  Precedence, tightest first: negation,
// conjunction, disjunction, exclusive-or, implication.  Conjunction and
// disjunction associate to the left; exclusive-or and implication must be
// parenthesised when chained.  Identifiers in argument position are
// variables when bound by an enclosing quantifier and constants otherwise.
inline Formula parse(std::string_view text, Syntax syntax = Syntax::Either,
                     const ArityLookup& arity = {}) {
  detail::Lexer lexer(text, syntax);
  detail::Parser parser(lexer.run(), &arity);
  return parser.parse_all();
}

}  // namespace folforge
