#pragma once

// JSON certificates.
//
// Every node carries "rule" and the statement it proves under "stmt", with
// terms printed in concrete syntax over canonical names x0, x1, ... Keys are
// emitted sorted and without whitespace, so serializing a parsed certificate
// reproduces it byte for byte.

#include <algeq/algo.hpp>
#include <algeq/decl.hpp>
#include <algeq/errors.hpp>
#include <algeq/reduction.hpp>
#include <algeq/syntax.hpp>
#include <algeq/text.hpp>

#include <json.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace algeq {

using Json = nlohmann::json;

inline Json statement_json(const Statement& st) {
  auto names = canonical_names(st.ctx.size());
  return Json{{"ctx", print_ctx(st.ctx, names)},
              {"left", print_term(st.left, names)},
              {"right", print_term(st.right, names)},
              {"type", print_type(st.type)}};
}

inline Json trace_json(const Trace& t) {
  Json out = Json::array();
  for (Step s : t) out.push_back(Json{{"depth", s.depth}});
  return out;
}

namespace detail {

// Writers also collect node statements in pre-order, which is what verify
// compares a certificate's claimed statements against.
class AlgWriter {
 public:
  std::vector<Statement> statements;

  Json tm(const Statement& st, const TmEqDeriv& d) {
    statements.push_back(st);
    Json out{{"rule", d.is_arrow() ? "alg-arr" : "alg-base"}, {"stmt", statement_json(st)}};
    if (d.is_arrow()) {
      if (!st.type.is_arrow()) throw InvalidDerivation("alg-arr node at base type");
      Statement inner{st.ctx.extended(st.type.domain()), apply_to_fresh(st.left), apply_to_fresh(st.right),
                      st.type.codomain()};
      out["body"] = tm(inner, d.body());
      return out;
    }
    if (!st.type.is_base()) throw InvalidDerivation("alg-base node at arrow type");
    auto p = replay(st.left, d.left_trace());
    auto q = replay(st.right, d.right_trace());
    if (!p || !q) throw InvalidDerivation("trace does not replay");
    out["left_trace"] = trace_json(d.left_trace());
    out["right_trace"] = trace_json(d.right_trace());
    out["paths"] = path(st.ctx, d.paths(), *p, *q).first;
    return out;
  }

  std::pair<Json, Tp> path(const Ctx& ctx, const PathEqDeriv& d, const Tm& p, const Tm& q) {
    std::size_t slot = statements.size();
    statements.push_back(Statement{ctx, p, q, Tp::base()});
    if (d.is_var()) {
      if (d.index() >= ctx.size()) throw InvalidDerivation("p-var index out of range");
      Tp t = ctx.at(d.index());
      statements[slot].type = t;
      Statement st{ctx, p, q, t};
      return {Json{{"rule", "p-var"}, {"stmt", statement_json(st)}, {"index", d.index()}}, t};
    }
    if (!p.is_app() || !q.is_app()) throw InvalidDerivation("p-app node over a non-application");
    auto [fun, ft] = path(ctx, d.fun(), p.fun(), q.fun());
    if (!ft.is_arrow()) throw InvalidDerivation("p-app head is not of arrow type");
    Json arg = tm(Statement{ctx, p.arg(), q.arg(), ft.domain()}, d.arg());
    Tp t = ft.codomain();
    statements[slot].type = t;
    Statement st{ctx, p, q, t};
    return {Json{{"rule", "p-app"}, {"stmt", statement_json(st)}, {"fun", std::move(fun)}, {"arg", std::move(arg)}},
            t};
  }
};

}  // namespace detail

/// Certificate for `st`. Throws InvalidDerivation if `d` does not even have
/// the shape of a derivation of `st` (it need not be checked otherwise).
inline Json to_json(const Statement& st, const TmEqDeriv& d) { return detail::AlgWriter{}.tm(st, d); }

/// Node statements of the certificate for `st`, in pre-order.
inline std::vector<Statement> certificate_statements(const Statement& st, const TmEqDeriv& d) {
  detail::AlgWriter w;
  w.tm(st, d);
  return std::move(w.statements);
}

inline Json to_json(const DeclDeriv& d) {
  Json out{{"rule", std::string(rule_name(d.rule()))}, {"stmt", statement_json(d.conclusion())}};
  auto child = [&](const char* key, std::size_t k) { out[key] = to_json(d.premise(k)); };
  switch (d.rule()) {
    case DeclRule::Beta:
      child("body", 0);
      child("arg", 1);
      break;
    case DeclRule::Lam:
    case DeclRule::Ext:
      child("body", 0);
      break;
    case DeclRule::Var:
      out["index"] = d.index();
      break;
    case DeclRule::App:
      child("fun", 0);
      child("arg", 1);
      break;
    case DeclRule::Sym:
      child("inner", 0);
      break;
    case DeclRule::Trans:
      child("left", 0);
      child("right", 1);
      break;
  }
  return out;
}

/// Compact serialization with sorted keys and a trailing newline.
inline std::string dump(const Json& j) { return j.dump() + "\n"; }

// ---------------------------------------------------------------------------
// Reading

namespace detail {

[[noreturn]] inline void malformed(const std::string& msg) { throw MalformedCertificate(msg); }

inline const Json& field(const Json& node, const char* key) {
  auto it = node.find(key);
  if (it == node.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

inline std::size_t natural(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) malformed(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline const std::string& text(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) malformed(std::string("field '") + key + "' must be a string");
  return v.get_ref<const std::string&>();
}

inline void expect_keys(const Json& node, std::initializer_list<const char*> keys) {
  if (!node.is_object()) malformed("derivation node must be an object");
  for (auto it = node.begin(); it != node.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) malformed("unexpected field '" + it.key() + "'");
  }
  for (const char* k : keys) field(node, k);
}

inline Statement read_statement(const Json& j) {
  if (!j.is_object() || j.size() != 4) malformed("stmt must be an object with ctx, left, right and type");
  try {
    NamedCtx c = parse_ctx(text(j, "ctx"));
    return Statement{c.ctx, parse_term(text(j, "left"), c.names), parse_term(text(j, "right"), c.names),
                     parse_type(text(j, "type"))};
  } catch (const ParseError& e) {
    malformed(std::string("in stmt: ") + e.what());
  } catch (const UnboundVariable& e) {
    malformed(std::string("in stmt: ") + e.what());
  }
}

inline Trace read_trace(const Json& j) {
  if (!j.is_array()) malformed("trace must be an array");
  Trace out;
  for (const Json& s : j) {
    expect_keys(s, {"depth"});
    out.push_back(Step{natural(s["depth"], "step depth")});
  }
  return out;
}

inline std::string rule_of(const Json& node) {
  if (!node.is_object()) malformed("derivation node must be an object");
  return text(node, "rule");
}

class AlgReader {
 public:
  std::vector<Statement> statements;

  TmEqDeriv tm(const Json& node) {
    std::string rule = rule_of(node);
    if (rule == "alg-arr") {
      expect_keys(node, {"rule", "stmt", "body"});
      statements.push_back(read_statement(node["stmt"]));
      return TmEqDeriv::arrow(tm(node["body"]));
    }
    if (rule == "alg-base") {
      expect_keys(node, {"rule", "stmt", "left_trace", "right_trace", "paths"});
      statements.push_back(read_statement(node["stmt"]));
      Trace l = read_trace(node["left_trace"]);
      Trace r = read_trace(node["right_trace"]);
      return TmEqDeriv::base(std::move(l), std::move(r), path(node["paths"]));
    }
    malformed("expected an alg-arr or alg-base node, found '" + rule + "'");
  }

  PathEqDeriv path(const Json& node) {
    std::string rule = rule_of(node);
    if (rule == "p-var") {
      expect_keys(node, {"rule", "stmt", "index"});
      statements.push_back(read_statement(node["stmt"]));
      return PathEqDeriv::var(natural(node["index"], "index"));
    }
    if (rule == "p-app") {
      expect_keys(node, {"rule", "stmt", "fun", "arg"});
      statements.push_back(read_statement(node["stmt"]));
      PathEqDeriv fun = path(node["fun"]);
      return PathEqDeriv::app(std::move(fun), tm(node["arg"]));
    }
    malformed("expected a p-var or p-app node, found '" + rule + "'");
  }
};

inline DeclDeriv read_decl(const Json& node) {
  std::string rule = rule_of(node);
  auto premises = [&](std::initializer_list<const char*> keys) {
    std::vector<const char*> all{"rule", "stmt"};
    all.insert(all.end(), keys.begin(), keys.end());
    for (auto it = node.begin(); it != node.end(); ++it) {
      bool known = false;
      for (const char* k : all) known = known || it.key() == k;
      if (!known) malformed("unexpected field '" + it.key() + "'");
    }
    std::vector<DeclDeriv> out;
    for (const char* k : keys) out.push_back(read_decl(field(node, k)));
    return out;
  };
  auto stmt = [&] { return read_statement(field(node, "stmt")); };
  if (rule == "dec-beta") return DeclDeriv::make(DeclRule::Beta, stmt(), premises({"body", "arg"}));
  if (rule == "dec-lam") return DeclDeriv::make(DeclRule::Lam, stmt(), premises({"body"}));
  if (rule == "dec-ext") return DeclDeriv::make(DeclRule::Ext, stmt(), premises({"body"}));
  if (rule == "dec-app") return DeclDeriv::make(DeclRule::App, stmt(), premises({"fun", "arg"}));
  if (rule == "dec-sym") return DeclDeriv::make(DeclRule::Sym, stmt(), premises({"inner"}));
  if (rule == "dec-trans") return DeclDeriv::make(DeclRule::Trans, stmt(), premises({"left", "right"}));
  if (rule == "dec-var") {
    expect_keys(node, {"rule", "stmt", "index"});
    return DeclDeriv::make(DeclRule::Var, stmt(), {}, natural(node["index"], "index"));
  }
  malformed("expected a declarative rule, found '" + rule + "'");
}

}  // namespace detail

/// A certificate as read from disk: its root statement, the derivation, and
/// every node's claimed statement in pre-order.
struct ParsedCertificate {
  Statement statement;
  TmEqDeriv derivation;
  std::vector<Statement> statements;
};

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedCertificate(std::string("not valid JSON: ") + e.what());
  }
}

inline ParsedCertificate read_certificate(const Json& j) {
  detail::AlgReader r;
  TmEqDeriv d = r.tm(j);
  Statement root = r.statements.front();
  return ParsedCertificate{std::move(root), std::move(d), std::move(r.statements)};
}

inline DeclDeriv read_decl(const Json& j) { return detail::read_decl(j); }

/// Checks a parsed certificate: the derivation must prove its root statement
/// and every node must state exactly what it proves.
inline bool verify_certificate(const ParsedCertificate& c) {
  if (!check_tm_eq(c.statement, c.derivation)) return false;
  return certificate_statements(c.statement, c.derivation) == c.statements;
}

}  // namespace algeq
