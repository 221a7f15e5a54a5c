#pragma once

// Concrete syntax.
//
//   type  ::= atom ('->' type)?            atom ::= 'i' | '(' type ')'
//   term  ::= '\' ident '.' term | app     app  ::= tatom+ ['\' ...]
//   tatom ::= ident | '(' term ')'
//   ctx   ::= (ident ':' type (',' ident ':' type)*)?
//
// Application is left-associative, arrows are right-associative, a lambda
// extends as far right as possible. Names resolve to the innermost binder;
// the rightmost context entry is Var(0) outside all binders.

#include <algeq/errors.hpp>
#include <algeq/syntax.hpp>

#include <cctype>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace algeq {

/// A typing context together with the names its variables were written with
/// (leftmost first).
struct NamedCtx {
  Ctx ctx;
  std::vector<std::string> names;
};

namespace detail {

enum class Tok { Ident, Lambda, Dot, LParen, RParen, Arrow, Colon, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      std::size_t line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      char c = src_[pos_];
      if (c == '\\') {
        advance(1);
        out.push_back({Tok::Lambda, "\\", line, col});
      } else if (src_.substr(pos_, 2) == "\xCE\xBB") {  // U+03BB
        advance(2);
        out.push_back({Tok::Lambda, "\\", line, col});
      } else if (c == '.') {
        advance(1);
        out.push_back({Tok::Dot, ".", line, col});
      } else if (c == '(') {
        advance(1);
        out.push_back({Tok::LParen, "(", line, col});
      } else if (c == ')') {
        advance(1);
        out.push_back({Tok::RParen, ")", line, col});
      } else if (c == ':') {
        advance(1);
        out.push_back({Tok::Colon, ":", line, col});
      } else if (c == ',') {
        advance(1);
        out.push_back({Tok::Comma, ",", line, col});
      } else if (src_.substr(pos_, 2) == "->") {
        advance(2);
        out.push_back({Tok::Arrow, "->", line, col});
      } else if (is_ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance(1);
        out.push_back({Tok::Ident, std::string(src_.substr(start, pos_ - start)), line, col});
      } else {
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance(1);
  }

  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  Tp type() {
    Tp dom = type_atom();
    if (peek().kind == Tok::Arrow) {
      next();
      return Tp::arrow(std::move(dom), type());
    }
    return dom;
  }

  Tm term(std::vector<std::string>& scope) {
    if (peek().kind == Tok::Lambda) return lambda(scope);
    Tm acc = term_atom(scope);
    for (;;) {
      Tok k = peek().kind;
      if (k == Tok::Ident || k == Tok::LParen) {
        acc = Tm::app(std::move(acc), term_atom(scope));
      } else if (k == Tok::Lambda) {
        return Tm::app(std::move(acc), lambda(scope));
      } else {
        return acc;
      }
    }
  }

  NamedCtx ctx() {
    NamedCtx out;
    if (peek().kind == Tok::End) return out;
    for (;;) {
      const Token& name = expect(Tok::Ident, "a variable name");
      expect(Tok::Colon, "':'");
      out.names.push_back(name.text);
      out.ctx = out.ctx.extended(type());
      if (peek().kind != Tok::Comma) return out;
      next();
    }
  }

  void finish() {
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "'");
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      fail(peek(), std::string("expected ") + what + (peek().kind == Tok::End ? " before end of input" : ""));
    }
    return next();
  }

  Tp type_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && t.text == "i") {
      next();
      return Tp::base();
    }
    if (t.kind == Tok::LParen) {
      next();
      Tp inner = type();
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail(t, "expected a type");
  }

  Tm lambda(std::vector<std::string>& scope) {
    next();
    const Token& name = expect(Tok::Ident, "a binder name");
    expect(Tok::Dot, "'.'");
    scope.push_back(name.text);
    Tm body = term(scope);
    scope.pop_back();
    return Tm::lam(std::move(body));
  }

  Tm term_atom(std::vector<std::string>& scope) {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      next();
      for (std::size_t k = scope.size(); k > 0; --k) {
        if (scope[k - 1] == t.text) return Tm::var(scope.size() - k);
      }
      throw UnboundVariable(t.text);
    }
    if (t.kind == Tok::LParen) {
      next();
      Tm inner = term(scope);
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail(t, "expected a term");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Tp parse_type(std::string_view text) {
  detail::Parser p(text);
  Tp t = p.type();
  p.finish();
  return t;
}

/// Parses a term whose free variables are drawn from `names` (leftmost first).
inline Tm parse_term(std::string_view text, const std::vector<std::string>& names = {}) {
  detail::Parser p(text);
  std::vector<std::string> scope = names;
  Tm m = p.term(scope);
  p.finish();
  return m;
}

inline NamedCtx parse_ctx(std::string_view text) {
  detail::Parser p(text);
  NamedCtx c = p.ctx();
  p.finish();
  return c;
}

/// x0, x1, ...: the names certificates use, position j from the left is xj.
inline std::vector<std::string> canonical_names(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) out.push_back("x" + std::to_string(j));
  return out;
}

inline std::string print_type(const Tp& t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

namespace detail {

class Printer {
 public:
  explicit Printer(const std::vector<std::string>& names) : scope_(names), reserved_(names.begin(), names.end()) {}

  void term(std::ostream& os, const Tm& m) {
    switch (m.kind()) {
      case Tm::Kind::Var:
        os << scope_.at(scope_.size() - 1 - m.index());
        return;
      case Tm::Kind::Lam: {
        std::string name = binder_name();
        os << "\\" << name << ". ";
        scope_.push_back(name);
        term(os, m.body());
        scope_.pop_back();
        return;
      }
      case Tm::Kind::App:
        if (m.fun().is_lam()) {
          os << "(";
          term(os, m.fun());
          os << ")";
        } else {
          term(os, m.fun());
        }
        os << " ";
        if (m.arg().is_var()) {
          term(os, m.arg());
        } else {
          os << "(";
          term(os, m.arg());
          os << ")";
        }
        return;
    }
  }

 private:
  // Binders are named after their de Bruijn level, which is unique along any
  // branch; primes avoid clashes with user-supplied context names.
  std::string binder_name() const {
    std::string name = "x" + std::to_string(scope_.size());
    while (reserved_.count(name)) name += "'";
    return name;
  }

  std::vector<std::string> scope_;
  std::set<std::string> reserved_;
};

}  // namespace detail

/// Prints `m` with free variables named by `names` (leftmost first). If the
/// names shadow one another, canonical names are used instead.
inline std::string print_term(const Tm& m, const std::vector<std::string>& names) {
  std::set<std::string> distinct(names.begin(), names.end());
  if (scope_bound(m) > names.size()) throw ScopeError("term has more free variables than names were supplied");
  std::vector<std::string> used = distinct.size() == names.size() ? names : canonical_names(names.size());
  std::ostringstream os;
  detail::Printer(used).term(os, m);
  return os.str();
}

inline std::string print_term(const Tm& m) { return print_term(m, canonical_names(scope_bound(m))); }

inline std::string print_ctx(const Ctx& ctx, const std::vector<std::string>& names) {
  std::ostringstream os;
  for (std::size_t j = 0; j < ctx.entries().size(); ++j) {
    if (j != 0) os << ", ";
    os << names.at(j) << ":" << ctx.entries()[j];
  }
  return os.str();
}

inline std::string print_ctx(const Ctx& ctx) { return print_ctx(ctx, canonical_names(ctx.size())); }

}  // namespace algeq
