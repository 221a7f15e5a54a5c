#pragma once

// Declarative equality derivations.
//
// Every node records the statement it concludes, so a derivation can be
// checked locally and serialized without reconstruction. The smart
// constructors (DeclDeriv::var, ::lam, ...) compute conclusions from premises;
// DeclDeriv::make builds an arbitrary, unchecked node.

#include <algeq/errors.hpp>
#include <algeq/subst.hpp>
#include <algeq/syntax.hpp>
#include <algeq/typing.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace algeq {

enum class DeclRule { Beta, Lam, Ext, Var, App, Sym, Trans };

inline std::string_view rule_name(DeclRule r) {
  switch (r) {
    case DeclRule::Beta:
      return "dec-beta";
    case DeclRule::Lam:
      return "dec-lam";
    case DeclRule::Ext:
      return "dec-ext";
    case DeclRule::Var:
      return "dec-var";
    case DeclRule::App:
      return "dec-app";
    case DeclRule::Sym:
      return "dec-sym";
    case DeclRule::Trans:
      return "dec-trans";
  }
  return "?";
}

/// Type of Var(k) in ctx. Top is index 0; Pop steps past one binder.
inline Tp lookup(const Ctx& ctx, std::size_t k) { return ctx.at(k); }

namespace detail {

/// Inverse of shift(m, 1): nullopt if Var(0) occurs free.
inline std::optional<Tm> unshift(const Tm& m, std::size_t cutoff = 0) {
  switch (m.kind()) {
    case Tm::Kind::Var:
      if (m.index() < cutoff) return m;
      if (m.index() == cutoff) return std::nullopt;
      return Tm::var(m.index() - 1);
    case Tm::Kind::Lam: {
      auto b = unshift(m.body(), cutoff + 1);
      if (!b) return std::nullopt;
      return Tm::lam(std::move(*b));
    }
    case Tm::Kind::App: {
      auto f = unshift(m.fun(), cutoff);
      if (!f) return std::nullopt;
      auto a = unshift(m.arg(), cutoff);
      if (!a) return std::nullopt;
      return Tm::app(std::move(*f), std::move(*a));
    }
  }
  return std::nullopt;
}

inline Ctx drop_innermost(const Ctx& ctx) {
  if (ctx.empty()) throw InvalidDerivation("premise context is empty where a binder was expected");
  std::vector<Tp> entries = ctx.entries();
  entries.pop_back();
  return Ctx(std::move(entries));
}

}  // namespace detail

class DeclDeriv {
 public:
  /// Unchecked node; check_decl validates it.
  static DeclDeriv make(DeclRule rule, Statement conclusion, std::vector<DeclDeriv> premises, std::size_t index = 0) {
    return DeclDeriv{std::make_shared<const Node>(Node{rule, std::move(conclusion), std::move(premises), index})};
  }

  static DeclDeriv var(const Ctx& ctx, std::size_t k) {
    Tp t = lookup(ctx, k);
    return make(DeclRule::Var, Statement{ctx, Tm::var(k), Tm::var(k), t}, {}, k);
  }

  static DeclDeriv lam(DeclDeriv body) {
    const Statement& b = body.conclusion();
    Ctx ctx = detail::drop_innermost(b.ctx);
    Statement st{ctx, Tm::lam(b.left), Tm::lam(b.right), Tp::arrow(b.ctx.at(0), b.type)};
    return make(DeclRule::Lam, std::move(st), {std::move(body)});
  }

  static DeclDeriv ext(DeclDeriv body) {
    const Statement& b = body.conclusion();
    Ctx ctx = detail::drop_innermost(b.ctx);
    auto strip = [](const Tm& probe) -> Tm {
      if (!probe.is_app() || !(probe.arg() == Tm::var(0))) {
        throw InvalidDerivation("dec-ext premise is not an application to the fresh variable");
      }
      auto m = detail::unshift(probe.fun());
      if (!m) throw InvalidDerivation("dec-ext premise mentions the fresh variable in function position");
      return *m;
    };
    Statement st{ctx, strip(b.left), strip(b.right), Tp::arrow(b.ctx.at(0), b.type)};
    return make(DeclRule::Ext, std::move(st), {std::move(body)});
  }

  static DeclDeriv beta(DeclDeriv body, DeclDeriv arg) {
    const Statement& b = body.conclusion();
    const Statement& a = arg.conclusion();
    if (!(b.ctx == a.ctx.extended(a.type))) throw InvalidDerivation("dec-beta premises disagree on the context");
    Tm left = Tm::app(Tm::lam(b.left), a.left);
    Tm right = apply_tm(extend(id_subst(a.ctx.size()), a.right), b.right);
    Statement st{a.ctx, std::move(left), std::move(right), b.type};
    return make(DeclRule::Beta, std::move(st), {std::move(body), std::move(arg)});
  }

  static DeclDeriv app(DeclDeriv fun, DeclDeriv arg) {
    const Statement& f = fun.conclusion();
    const Statement& a = arg.conclusion();
    if (!(f.ctx == a.ctx) || !f.type.is_arrow() || !(f.type.domain() == a.type)) {
      throw InvalidDerivation("dec-app premises do not fit together");
    }
    Statement st{f.ctx, Tm::app(f.left, a.left), Tm::app(f.right, a.right), f.type.codomain()};
    return make(DeclRule::App, std::move(st), {std::move(fun), std::move(arg)});
  }

  static DeclDeriv sym(DeclDeriv inner) {
    const Statement& s = inner.conclusion();
    Statement st{s.ctx, s.right, s.left, s.type};
    return make(DeclRule::Sym, std::move(st), {std::move(inner)});
  }

  static DeclDeriv trans(DeclDeriv left, DeclDeriv right) {
    const Statement& l = left.conclusion();
    const Statement& r = right.conclusion();
    if (!(l.ctx == r.ctx) || !(l.type == r.type) || !(l.right == r.left)) {
      throw MiddleTermMismatch("dec-trans premises do not share a middle term");
    }
    Statement st{l.ctx, l.left, r.right, l.type};
    return make(DeclRule::Trans, std::move(st), {std::move(left), std::move(right)});
  }

  DeclRule rule() const noexcept { return node_->rule; }
  const Statement& conclusion() const noexcept { return node_->conclusion; }
  const std::vector<DeclDeriv>& premises() const noexcept { return node_->premises; }
  /// Variable index of a dec-var node.
  std::size_t index() const noexcept { return node_->index; }

  const DeclDeriv& premise(std::size_t k) const {
    if (k >= premises().size()) throw ContractError("missing premise in declarative derivation");
    return premises()[k];
  }

  friend bool operator==(const DeclDeriv& a, const DeclDeriv& b) {
    if (a.node_ == b.node_) return true;
    return a.rule() == b.rule() && a.index() == b.index() && a.conclusion() == b.conclusion() &&
           a.premises() == b.premises();
  }

 private:
  struct Node {
    DeclRule rule;
    Statement conclusion;
    std::vector<DeclDeriv> premises;
    std::size_t index;
  };
  explicit DeclDeriv(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

inline std::size_t depth(const DeclDeriv& d) {
  std::size_t inner = 0;
  for (const DeclDeriv& p : d.premises()) inner = std::max(inner, depth(p));
  return inner + 1;
}

// ---------------------------------------------------------------------------
// Checker

namespace detail {

inline bool premise_count_is(const DeclDeriv& d, std::size_t n) { return d.premises().size() == n; }

inline bool valid_decl(const DeclDeriv& d) {
  const Statement& st = d.conclusion();
  const Ctx& ctx = st.ctx;
  switch (d.rule()) {
    case DeclRule::Var: {
      if (!premise_count_is(d, 0) || d.index() >= ctx.size()) return false;
      return st.left == Tm::var(d.index()) && st.right == Tm::var(d.index()) && st.type == ctx.at(d.index());
    }
    case DeclRule::Lam: {
      if (!premise_count_is(d, 1) || !st.left.is_lam() || !st.right.is_lam() || !st.type.is_arrow()) return false;
      const DeclDeriv& body = d.premise(0);
      Statement expected{ctx.extended(st.type.domain()), st.left.body(), st.right.body(), st.type.codomain()};
      return body.conclusion() == expected && valid_decl(body);
    }
    case DeclRule::Ext: {
      if (!premise_count_is(d, 1) || !st.type.is_arrow()) return false;
      const DeclDeriv& body = d.premise(0);
      Statement expected{ctx.extended(st.type.domain()), apply_to_fresh(st.left), apply_to_fresh(st.right),
                         st.type.codomain()};
      return body.conclusion() == expected && valid_decl(body);
    }
    case DeclRule::Beta: {
      if (!premise_count_is(d, 2) || !st.left.is_app() || !st.left.fun().is_lam()) return false;
      const DeclDeriv& body = d.premise(0);
      const DeclDeriv& arg = d.premise(1);
      const Statement& a = arg.conclusion();
      const Statement& b = body.conclusion();
      if (!(a.ctx == ctx) || !(a.left == st.left.arg())) return false;
      if (!(b.ctx == ctx.extended(a.type)) || !(b.left == st.left.fun().body()) || !(b.type == st.type)) return false;
      if (!is_well_scoped(b.right, b.ctx.size()) || !is_well_scoped(a.right, ctx.size())) return false;
      Tm contracted = apply_tm(extend(id_subst(ctx.size()), a.right), b.right);
      return st.right == contracted && valid_decl(body) && valid_decl(arg);
    }
    case DeclRule::App: {
      if (!premise_count_is(d, 2) || !st.left.is_app() || !st.right.is_app()) return false;
      const DeclDeriv& fun = d.premise(0);
      const DeclDeriv& arg = d.premise(1);
      const Statement& a = arg.conclusion();
      Statement expected_fun{ctx, st.left.fun(), st.right.fun(), Tp::arrow(a.type, st.type)};
      Statement expected_arg{ctx, st.left.arg(), st.right.arg(), a.type};
      return fun.conclusion() == expected_fun && a == expected_arg && valid_decl(fun) && valid_decl(arg);
    }
    case DeclRule::Sym: {
      if (!premise_count_is(d, 1)) return false;
      const DeclDeriv& inner = d.premise(0);
      return inner.conclusion() == Statement{ctx, st.right, st.left, st.type} && valid_decl(inner);
    }
    case DeclRule::Trans: {
      if (!premise_count_is(d, 2)) return false;
      const Statement& l = d.premise(0).conclusion();
      const Statement& r = d.premise(1).conclusion();
      if (!(l.ctx == ctx) || !(r.ctx == ctx) || !(l.type == st.type) || !(r.type == st.type)) return false;
      if (!(l.left == st.left) || !(r.right == st.right) || !(l.right == r.left)) return false;
      return valid_decl(d.premise(0)) && valid_decl(d.premise(1));
    }
  }
  return false;
}

}  // namespace detail

/// True iff `d` validly derives ctx |- m == n : t.
inline bool check_decl(const Ctx& ctx, const DeclDeriv& d, const Tm& m, const Tm& n, const Tp& t) {
  return d.conclusion() == Statement{ctx, m, n, t} && detail::valid_decl(d);
}

inline bool check_decl(const DeclDeriv& d) { return detail::valid_decl(d); }

// ---------------------------------------------------------------------------
// Constructions

namespace detail {

inline DeclDeriv refl_from(const Ctx& ctx, const Tm& m, const Tp& t, const std::vector<Tp>& arg_types,
                           std::size_t& next) {
  switch (m.kind()) {
    case Tm::Kind::Var:
      return DeclDeriv::var(ctx, m.index());
    case Tm::Kind::Lam:
      return DeclDeriv::lam(refl_from(ctx.extended(t.domain()), m.body(), t.codomain(), arg_types, next));
    case Tm::Kind::App: {
      const Tp& a = arg_types.at(next++);
      DeclDeriv f = refl_from(ctx, m.fun(), Tp::arrow(a, t), arg_types, next);
      DeclDeriv x = refl_from(ctx, m.arg(), a, arg_types, next);
      return DeclDeriv::app(std::move(f), std::move(x));
    }
  }
  throw ContractError("unreachable term kind");
}

}  // namespace detail

/// Reflexivity derivation of ctx |- m == m : t, built from congruence rules.
inline DeclDeriv refl_decl(const Ctx& ctx, const Tm& m, const Tp& t) {
  auto arg_types = application_argument_types(ctx, m, t);
  if (!arg_types) throw ContractError("refl_decl: term is not well-typed at the given type");
  std::size_t next = 0;
  return detail::refl_from(ctx, m, t, *arg_types, next);
}

namespace detail {

inline DeclDeriv weaken_decl_at(const DeclDeriv& d, const Tp& fresh, std::size_t outer) {
  const Statement& st = d.conclusion();
  std::size_t cutoff = st.ctx.size() - outer;
  std::vector<Tp> entries = st.ctx.entries();
  entries.insert(entries.begin() + static_cast<std::ptrdiff_t>(outer), fresh);
  Statement moved{Ctx(std::move(entries)), shift(st.left, 1, cutoff), shift(st.right, 1, cutoff), st.type};
  std::vector<DeclDeriv> premises;
  premises.reserve(d.premises().size());
  for (const DeclDeriv& p : d.premises()) premises.push_back(weaken_decl_at(p, fresh, outer));
  std::size_t index = d.index();
  if (d.rule() == DeclRule::Var && index >= cutoff) ++index;
  return DeclDeriv::make(d.rule(), std::move(moved), std::move(premises), index);
}

}  // namespace detail

/// Moves a derivation in ctx to ctx & fresh.
inline DeclDeriv weaken_decl(const DeclDeriv& d, const Tp& fresh) {
  return detail::weaken_decl_at(d, fresh, d.conclusion().ctx.size());
}

/// ctx |- m == \x. m x : A -> B, by extensionality over a symmetric beta step.
inline DeclDeriv eta_expand_decl(const Ctx& ctx, const Tm& m, const Tp& t) {
  if (!t.is_arrow()) throw ContractError("eta expansion at base type");
  Ctx inner = ctx.extended(t.domain()).extended(t.domain());
  DeclDeriv body = refl_decl(inner, Tm::app(shift(m, 2), Tm::var(0)), t.codomain());
  DeclDeriv contracted = DeclDeriv::beta(std::move(body), DeclDeriv::var(ctx.extended(t.domain()), 0));
  return DeclDeriv::ext(DeclDeriv::sym(std::move(contracted)));
}

// ---------------------------------------------------------------------------
// Random generation

struct GeneratedDecl {
  Ctx ctx;
  DeclDeriv deriv;
  Tm left;
  Tm right;
  Tp type;
};

/// Top-down random rule application with backtracking. Every result passes
/// check_decl and has depth <= the requested bound.
class DeclGenerator {
 public:
  explicit DeclGenerator(std::uint64_t seed, std::size_t max_type_depth = 2) : rng_(seed), max_type_depth_(max_type_depth) {}

  Tp random_type(std::size_t max_depth) {
    if (max_depth == 0 || coin(0.5)) return Tp::base();
    Tp d = random_type(max_depth - 1);
    return Tp::arrow(std::move(d), random_type(max_depth - 1));
  }

  std::optional<DeclDeriv> derive(const Ctx& ctx, const Tp& t, std::size_t budget) {
    if (budget == 0) return std::nullopt;
    std::vector<DeclRule> rules{DeclRule::Var, DeclRule::Lam, DeclRule::Ext, DeclRule::Beta,
                                DeclRule::App, DeclRule::Sym, DeclRule::Trans};
    std::shuffle(rules.begin(), rules.end(), rng_);
    for (DeclRule r : rules) {
      if (auto d = try_rule(r, ctx, t, budget); d && depth(*d) <= budget) return d;
    }
    return std::nullopt;
  }

  GeneratedDecl generate(std::size_t depth_bound) {
    if (depth_bound == 0) throw GenerationFailed("depth bound must be at least 1");
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::size_t n = 1 + uniform(3);
      std::vector<Tp> entries;
      for (std::size_t k = 0; k < n; ++k) entries.push_back(random_type(max_type_depth_));
      Ctx ctx(std::move(entries));
      Tp t = (depth_bound == 1 || coin(0.5)) ? ctx.at(uniform(n)) : random_type(max_type_depth_);
      if (auto d = derive(ctx, t, depth_bound)) {
        const Statement& st = d->conclusion();
        return GeneratedDecl{st.ctx, *d, st.left, st.right, st.type};
      }
    }
    throw GenerationFailed("no derivation found within the depth bound");
  }

 private:
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::size_t uniform(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  // Argument types for app/beta stay small so that premises remain closable.
  Tp small_type() { return random_type(max_type_depth_ == 0 ? 0 : 1); }

  static std::optional<DeclDeriv> within(std::optional<DeclDeriv> d, std::size_t budget) {
    if (d && depth(*d) <= budget) return d;
    return std::nullopt;
  }

  std::optional<DeclDeriv> try_rule(DeclRule r, const Ctx& ctx, const Tp& t, std::size_t budget) {
    switch (r) {
      case DeclRule::Var: {
        std::vector<std::size_t> hits;
        for (std::size_t k = 0; k < ctx.size(); ++k)
          if (ctx.at(k) == t) hits.push_back(k);
        if (hits.empty()) return std::nullopt;
        return DeclDeriv::var(ctx, hits[uniform(hits.size())]);
      }
      case DeclRule::Lam: {
        if (budget < 2 || !t.is_arrow()) return std::nullopt;
        auto body = derive(ctx.extended(t.domain()), t.codomain(), budget - 1);
        if (!body) return std::nullopt;
        return DeclDeriv::lam(std::move(*body));
      }
      case DeclRule::Ext: {
        if (budget < 3 || !t.is_arrow()) return std::nullopt;
        auto inner = derive(ctx, t, budget - 2);
        if (!inner) return std::nullopt;
        DeclDeriv probe = DeclDeriv::app(weaken_decl(*inner, t.domain()), DeclDeriv::var(ctx.extended(t.domain()), 0));
        return DeclDeriv::ext(std::move(probe));
      }
      case DeclRule::Beta: {
        if (budget < 2) return std::nullopt;
        Tp a = small_type();
        auto body = derive(ctx.extended(a), t, budget - 1);
        if (!body) return std::nullopt;
        auto arg = derive(ctx, a, budget - 1);
        if (!arg) return std::nullopt;
        return DeclDeriv::beta(std::move(*body), std::move(*arg));
      }
      case DeclRule::App: {
        if (budget < 2) return std::nullopt;
        Tp a = small_type();
        auto fun = derive(ctx, Tp::arrow(a, t), budget - 1);
        if (!fun) return std::nullopt;
        auto arg = derive(ctx, a, budget - 1);
        if (!arg) return std::nullopt;
        return DeclDeriv::app(std::move(*fun), std::move(*arg));
      }
      case DeclRule::Sym: {
        if (budget < 2) return std::nullopt;
        auto inner = derive(ctx, t, budget - 1);
        if (!inner) return std::nullopt;
        return DeclDeriv::sym(std::move(*inner));
      }
      case DeclRule::Trans: {
        if (budget < 2) return std::nullopt;
        auto left = derive(ctx, t, budget - 1);
        if (!left) return std::nullopt;
        auto right = step_from(ctx, left->conclusion().right, t, budget - 1);
        if (!right) return std::nullopt;
        return DeclDeriv::trans(std::move(*left), std::move(*right));
      }
    }
    return std::nullopt;
  }

  /// A derivation whose left-hand side is exactly `m`.
  std::optional<DeclDeriv> step_from(const Ctx& ctx, const Tm& m, const Tp& t, std::size_t budget) {
    enum class Move { Refl, Beta, Eta, UnderLam, InFun, InArg };
    std::vector<Move> moves{Move::Refl, Move::Beta, Move::Eta, Move::UnderLam, Move::InFun, Move::InArg};
    std::shuffle(moves.begin(), moves.end(), rng_);
    auto arg_types = application_argument_types(ctx, m, t);
    if (!arg_types) return std::nullopt;
    for (Move mv : moves) {
      std::optional<DeclDeriv> d;
      switch (mv) {
        case Move::Refl:
          d = refl_decl(ctx, m, t);
          break;
        case Move::Beta:
          if (m.is_app() && m.fun().is_lam()) {
            const Tp& a = arg_types->front();
            d = DeclDeriv::beta(refl_decl(ctx.extended(a), m.fun().body(), t), refl_decl(ctx, m.arg(), a));
          }
          break;
        case Move::Eta:
          if (t.is_arrow()) d = eta_expand_decl(ctx, m, t);
          break;
        case Move::UnderLam:
          if (m.is_lam() && budget >= 2) {
            auto body = step_from(ctx.extended(t.domain()), m.body(), t.codomain(), budget - 1);
            if (body) d = DeclDeriv::lam(std::move(*body));
          }
          break;
        case Move::InFun:
        case Move::InArg:
          if (m.is_app() && budget >= 2) {
            const Tp& a = arg_types->front();
            bool fun_side = mv == Move::InFun;
            auto moved = fun_side ? step_from(ctx, m.fun(), Tp::arrow(a, t), budget - 1)
                                  : step_from(ctx, m.arg(), a, budget - 1);
            if (moved) {
              d = fun_side ? DeclDeriv::app(std::move(*moved), refl_decl(ctx, m.arg(), a))
                           : DeclDeriv::app(refl_decl(ctx, m.fun(), Tp::arrow(a, t)), std::move(*moved));
            }
          }
          break;
      }
      if (auto ok = within(std::move(d), budget)) return ok;
    }
    return std::nullopt;
  }

  std::mt19937_64 rng_;
  std::size_t max_type_depth_;
};

/// One generated derivation of depth <= depth_bound, determined by `seed`.
inline GeneratedDecl gen_decl(std::uint64_t seed, std::size_t depth_bound) {
  return DeclGenerator(seed).generate(depth_bound);
}

}  // namespace algeq
