#pragma once

// Curry-style typing for the simply typed lambda calculus.
//
// Checking is bidirectional: lambdas are checked against arrows, variables and
// applications synthesize. Terms carry no annotations, so a lambda in head
// position (a beta-redex) synthesizes an arrow over a fresh metavariable and
// the metavariables are solved by first-order unification. Metavariables left
// unsolved may be instantiated with the base type.

#include <algeq/errors.hpp>
#include <algeq/syntax.hpp>

#include <cstddef>
#include <optional>
#include <sstream>
#include <vector>

namespace algeq {
namespace detail {

class Unifier {
 public:
  using Id = std::size_t;

  Id base() { return push({Kind::Base, 0, 0, kUnbound}); }
  Id fresh() { return push({Kind::Meta, 0, 0, kUnbound}); }
  Id arrow(Id domain, Id codomain) { return push({Kind::Arrow, domain, codomain, kUnbound}); }

  Id from(const Tp& t) {
    if (t.is_base()) return base();
    Id d = from(t.domain());
    return arrow(d, from(t.codomain()));
  }

  Id resolve(Id id) const {
    while (nodes_[id].kind == Kind::Meta && nodes_[id].link != kUnbound) id = nodes_[id].link;
    return id;
  }

  bool is_base(Id id) const { return nodes_[resolve(id)].kind == Kind::Base; }
  bool is_arrow(Id id) const { return nodes_[resolve(id)].kind == Kind::Arrow; }
  bool is_meta(Id id) const { return nodes_[resolve(id)].kind == Kind::Meta; }
  Id domain(Id id) const { return nodes_[resolve(id)].left; }
  Id codomain(Id id) const { return nodes_[resolve(id)].right; }

  bool unify(Id a, Id b) {
    a = resolve(a);
    b = resolve(b);
    if (a == b) return true;
    const Node& na = nodes_[a];
    const Node& nb = nodes_[b];
    if (na.kind == Kind::Meta) return bind(a, b);
    if (nb.kind == Kind::Meta) return bind(b, a);
    if (na.kind != nb.kind) return false;
    if (na.kind == Kind::Base) return true;
    Id al = na.left, ar = na.right, bl = nb.left, br = nb.right;
    return unify(al, bl) && unify(ar, br);
  }

  /// Reads a solved type back; unsolved metavariables default to the base type.
  Tp zonk(Id id) const {
    id = resolve(id);
    const Node& n = nodes_[id];
    if (n.kind == Kind::Arrow) return Tp::arrow(zonk(n.left), zonk(n.right));
    return Tp::base();
  }

 private:
  enum class Kind { Base, Arrow, Meta };
  static constexpr Id kUnbound = static_cast<Id>(-1);

  struct Node {
    Kind kind;
    Id left;
    Id right;
    Id link;
  };

  Id push(Node n) {
    nodes_.push_back(n);
    return nodes_.size() - 1;
  }

  bool occurs(Id meta, Id in) const {
    in = resolve(in);
    if (in == meta) return true;
    const Node& n = nodes_[in];
    return n.kind == Kind::Arrow && (occurs(meta, n.left) || occurs(meta, n.right));
  }

  bool bind(Id meta, Id target) {
    if (occurs(meta, target)) return false;
    nodes_[meta].link = target;
    return true;
  }

  std::vector<Node> nodes_;
};

class Checker {
 public:
  using Id = Unifier::Id;

  explicit Checker(const Ctx& ctx, std::vector<Id>* app_arguments = nullptr) : app_arguments_(app_arguments) {
    for (const Tp& t : ctx.entries()) scope_.push_back(unifier_.from(t));
  }

  Unifier& unifier() { return unifier_; }

  bool check(const Tm& m, Id expected) {
    if (m.is_lam()) {
      Id t = unifier_.resolve(expected);
      if (unifier_.is_base(t)) return false;
      if (unifier_.is_meta(t)) {
        Id d = unifier_.fresh();
        Id c = unifier_.fresh();
        if (!unifier_.unify(t, unifier_.arrow(d, c))) return false;
        t = unifier_.resolve(t);
      }
      scope_.push_back(unifier_.domain(t));
      bool ok = check(m.body(), unifier_.codomain(t));
      scope_.pop_back();
      return ok;
    }
    auto actual = infer(m);
    return actual && unifier_.unify(*actual, expected);
  }

  std::optional<Id> infer(const Tm& m) {
    switch (m.kind()) {
      case Tm::Kind::Var:
        if (m.index() >= scope_.size()) return std::nullopt;
        return scope_[scope_.size() - 1 - m.index()];
      case Tm::Kind::Lam: {
        Id d = unifier_.fresh();
        scope_.push_back(d);
        auto c = infer(m.body());
        scope_.pop_back();
        if (!c) return std::nullopt;
        return unifier_.arrow(d, *c);
      }
      case Tm::Kind::App: {
        std::size_t slot = 0;
        if (app_arguments_) {
          slot = app_arguments_->size();
          app_arguments_->push_back(0);
        }
        auto f = infer(m.fun());
        if (!f) return std::nullopt;
        Id ft = unifier_.resolve(*f);
        if (unifier_.is_base(ft)) return std::nullopt;
        if (unifier_.is_meta(ft)) {
          Id d = unifier_.fresh();
          Id c = unifier_.fresh();
          if (!unifier_.unify(ft, unifier_.arrow(d, c))) return std::nullopt;
          ft = unifier_.resolve(ft);
        }
        if (app_arguments_) (*app_arguments_)[slot] = unifier_.domain(ft);
        if (!check(m.arg(), unifier_.domain(ft))) return std::nullopt;
        return unifier_.codomain(ft);
      }
    }
    return std::nullopt;
  }

 private:
  Unifier unifier_;
  std::vector<Id> scope_;
  std::vector<Id>* app_arguments_;
};

}  // namespace detail

/// True iff `m` has type `t` in `ctx`. Ill-scoped terms are simply ill-typed.
inline bool type_check(const Ctx& ctx, const Tm& m, const Tp& t) {
  detail::Checker checker(ctx);
  return checker.check(m, checker.unifier().from(t));
}

/// Argument types of every application node of `m` in pre-order, for a typing
/// of `m` at `t` in `ctx`; nullopt if `m` is ill-typed. Unconstrained
/// argument types are instantiated with the base type.
inline std::optional<std::vector<Tp>> application_argument_types(const Ctx& ctx, const Tm& m, const Tp& t) {
  std::vector<detail::Checker::Id> ids;
  detail::Checker checker(ctx, &ids);
  if (!checker.check(m, checker.unifier().from(t))) return std::nullopt;
  std::vector<Tp> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(checker.unifier().zonk(id));
  return out;
}

/// Type of a path, read off the head variable's declared type. Arguments are
/// checked against the domains they meet.
inline Tp infer_path_type(const Ctx& ctx, const Tm& p) {
  switch (p.kind()) {
    case Tm::Kind::Var:
      if (p.index() >= ctx.size()) throw ScopeError("variable index out of scope in path");
      return ctx.at(p.index());
    case Tm::Kind::Lam:
      throw TypeError(TypeError::Kind::NotAPath, "a lambda abstraction is not a path");
    case Tm::Kind::App: {
      if (!is_path(p)) throw TypeError(TypeError::Kind::NotAPath, "application head is not a variable");
      Tp f = infer_path_type(ctx, p.fun());
      if (!f.is_arrow()) {
        std::ostringstream msg;
        msg << "path of type " << f << " applied to an argument";
        throw TypeError(TypeError::Kind::IllTyped, msg.str());
      }
      if (!type_check(ctx, p.arg(), f.domain())) {
        std::ostringstream msg;
        msg << "argument does not have type " << f.domain();
        throw TypeError(TypeError::Kind::IllTyped, msg.str());
      }
      return f.codomain();
    }
  }
  throw TypeError(TypeError::Kind::NotAPath, "not a path");
}

/// Non-throwing form of infer_path_type: nullopt for non-paths, ill-scoped or
/// ill-typed input.
inline std::optional<Tp> path_type(const Ctx& ctx, const Tm& p) {
  if (!is_path(p)) return std::nullopt;
  try {
    return infer_path_type(ctx, p);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace algeq
