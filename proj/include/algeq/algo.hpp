#pragma once

// Algorithmic equality: type-directed term equivalence and syntax-directed
// path equivalence, with certificate trees.
//
//   alg-base:  M ->* P   N ->* Q   P <-> Q : i        ==>  M <=> N : i
//   alg-arr:   ctx, x:A |- M x <=> N x : B            ==>  M <=> N : A -> B
//   p-var:     x:T in ctx                             ==>  x <-> x : T
//   p-app:     P <-> Q : A -> B    M <=> N : A        ==>  P M <-> Q N : B
//
// Derivations do not store their statements; every operation walks a
// derivation together with the statement it is meant to prove.

#include <algeq/errors.hpp>
#include <algeq/reduction.hpp>
#include <algeq/subst.hpp>
#include <algeq/syntax.hpp>
#include <algeq/typing.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <utility>

namespace algeq {

class TmEqDeriv;

class PathEqDeriv {
 public:
  static PathEqDeriv var(std::size_t index);
  static PathEqDeriv app(PathEqDeriv fun, TmEqDeriv arg);

  bool is_var() const noexcept;
  bool is_app() const noexcept { return !is_var(); }
  std::size_t index() const;
  const PathEqDeriv& fun() const;
  const TmEqDeriv& arg() const;

  friend bool operator==(const PathEqDeriv& a, const PathEqDeriv& b);

 private:
  struct Node;
  explicit PathEqDeriv(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class TmEqDeriv {
 public:
  static TmEqDeriv base(Trace left, Trace right, PathEqDeriv paths);
  static TmEqDeriv arrow(TmEqDeriv body);

  bool is_base() const noexcept;
  bool is_arrow() const noexcept { return !is_base(); }
  const Trace& left_trace() const;
  const Trace& right_trace() const;
  const PathEqDeriv& paths() const;
  const TmEqDeriv& body() const;

  friend bool operator==(const TmEqDeriv& a, const TmEqDeriv& b);

 private:
  struct Node;
  explicit TmEqDeriv(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct PathEqDeriv::Node {
  std::size_t index;
  std::optional<PathEqDeriv> fun;
  std::optional<TmEqDeriv> arg;
};

struct TmEqDeriv::Node {
  Trace left;
  Trace right;
  std::optional<PathEqDeriv> paths;
  std::optional<TmEqDeriv> body;
};

inline PathEqDeriv PathEqDeriv::var(std::size_t index) {
  return PathEqDeriv{std::make_shared<const Node>(Node{index, std::nullopt, std::nullopt})};
}
inline PathEqDeriv PathEqDeriv::app(PathEqDeriv fun, TmEqDeriv arg) {
  return PathEqDeriv{std::make_shared<const Node>(Node{0, std::move(fun), std::move(arg)})};
}
inline bool PathEqDeriv::is_var() const noexcept { return !node_->fun.has_value(); }
inline std::size_t PathEqDeriv::index() const {
  if (!is_var()) throw ContractError("index() on a p-app node");
  return node_->index;
}
inline const PathEqDeriv& PathEqDeriv::fun() const {
  if (is_var()) throw ContractError("fun() on a p-var node");
  return *node_->fun;
}
inline const TmEqDeriv& PathEqDeriv::arg() const {
  if (is_var()) throw ContractError("arg() on a p-var node");
  return *node_->arg;
}

inline TmEqDeriv TmEqDeriv::base(Trace left, Trace right, PathEqDeriv paths) {
  return TmEqDeriv{std::make_shared<const Node>(Node{std::move(left), std::move(right), std::move(paths), std::nullopt})};
}
inline TmEqDeriv TmEqDeriv::arrow(TmEqDeriv body) {
  return TmEqDeriv{std::make_shared<const Node>(Node{{}, {}, std::nullopt, std::move(body)})};
}
inline bool TmEqDeriv::is_base() const noexcept { return node_->paths.has_value(); }
inline const Trace& TmEqDeriv::left_trace() const {
  if (!is_base()) throw ContractError("left_trace() on an alg-arr node");
  return node_->left;
}
inline const Trace& TmEqDeriv::right_trace() const {
  if (!is_base()) throw ContractError("right_trace() on an alg-arr node");
  return node_->right;
}
inline const PathEqDeriv& TmEqDeriv::paths() const {
  if (!is_base()) throw ContractError("paths() on an alg-arr node");
  return *node_->paths;
}
inline const TmEqDeriv& TmEqDeriv::body() const {
  if (is_base()) throw ContractError("body() on an alg-base node");
  return *node_->body;
}

inline bool operator==(const PathEqDeriv& a, const PathEqDeriv& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) return a.index() == b.index();
  return a.fun() == b.fun() && a.arg() == b.arg();
}

inline bool operator==(const TmEqDeriv& a, const TmEqDeriv& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_base() != b.is_base()) return false;
  if (a.is_arrow()) return a.body() == b.body();
  return a.left_trace() == b.left_trace() && a.right_trace() == b.right_trace() && a.paths() == b.paths();
}

inline std::ostream& operator<<(std::ostream& os, const Trace& t) {
  os << "[";
  for (std::size_t k = 0; k < t.size(); ++k) os << (k ? "," : "") << t[k].depth;
  return os << "]";
}

inline std::ostream& operator<<(std::ostream& os, const TmEqDeriv& d);

inline std::ostream& operator<<(std::ostream& os, const PathEqDeriv& d) {
  if (d.is_var()) return os << "PVar(" << d.index() << ")";
  return os << "PApp(" << d.fun() << ", " << d.arg() << ")";
}

inline std::ostream& operator<<(std::ostream& os, const TmEqDeriv& d) {
  if (d.is_arrow()) return os << "AlgArr(" << d.body() << ")";
  return os << "AlgBase(" << d.left_trace() << ", " << d.right_trace() << ", " << d.paths() << ")";
}

// ---------------------------------------------------------------------------
// Decision procedure

namespace detail {

inline std::optional<TmEqDeriv> decide_tm(const Ctx& ctx, const Tm& m, const Tm& n, const Tp& t, std::size_t fuel);

inline std::optional<std::pair<PathEqDeriv, Tp>> decide_path(const Ctx& ctx, const Tm& p, const Tm& q,
                                                             std::size_t fuel) {
  if (p.is_var() && q.is_var()) {
    if (p.index() != q.index() || p.index() >= ctx.size()) return std::nullopt;
    return std::pair{PathEqDeriv::var(p.index()), ctx.at(p.index())};
  }
  if (p.is_app() && q.is_app()) {
    auto head = decide_path(ctx, p.fun(), q.fun(), fuel);
    if (!head || !head->second.is_arrow()) return std::nullopt;
    auto arg = decide_tm(ctx, p.arg(), q.arg(), head->second.domain(), fuel);
    if (!arg) return std::nullopt;
    return std::pair{PathEqDeriv::app(std::move(head->first), std::move(*arg)), head->second.codomain()};
  }
  return std::nullopt;
}

inline std::optional<TmEqDeriv> decide_tm(const Ctx& ctx, const Tm& m, const Tm& n, const Tp& t, std::size_t fuel) {
  if (t.is_arrow()) {
    auto body = decide_tm(ctx.extended(t.domain()), apply_to_fresh(m), apply_to_fresh(n), t.codomain(), fuel);
    if (!body) return std::nullopt;
    return TmEqDeriv::arrow(std::move(*body));
  }
  auto [p, left] = whnf(m, fuel);
  auto [q, right] = whnf(n, fuel);
  if (!is_path(p) || !is_path(q)) return std::nullopt;
  auto paths = decide_path(ctx, p, q, fuel);
  if (!paths || !paths->second.is_base()) return std::nullopt;
  return TmEqDeriv::base(std::move(left), std::move(right), std::move(paths->first));
}

}  // namespace detail

/// Decides ctx |- m <=> n : t. Both terms must have type t; ill-typed input is
/// a ContractError, never a "not equal" answer. Each weak head normalization
/// is bounded by `fuel` steps (FuelExhausted).
inline std::optional<TmEqDeriv> decide_tm_eq(const Ctx& ctx, const Tm& m, const Tm& n, const Tp& t,
                                             std::size_t fuel = kDefaultFuel) {
  if (!type_check(ctx, m, t)) throw ContractError("left-hand term is not well-typed at the queried type");
  if (!type_check(ctx, n, t)) throw ContractError("right-hand term is not well-typed at the queried type");
  return detail::decide_tm(ctx, m, n, t, fuel);
}

/// Decides ctx |- p <-> q, returning the derivation and the common type.
inline std::optional<std::pair<PathEqDeriv, Tp>> decide_path_eq(const Ctx& ctx, const Tm& p, const Tm& q,
                                                                std::size_t fuel = kDefaultFuel) {
  if (!is_path(p) || !is_path(q)) throw ContractError("decide_path_eq expects two paths");
  if (!is_well_scoped(p, ctx.size()) || !is_well_scoped(q, ctx.size())) {
    throw ScopeError("decide_path_eq: path not well-scoped in context");
  }
  return detail::decide_path(ctx, p, q, fuel);
}

// ---------------------------------------------------------------------------
// Checker

inline std::optional<Tp> check_path_eq(const Ctx& ctx, const PathEqDeriv& d, const Tm& p, const Tm& q);

inline bool check_tm_eq(const Ctx& ctx, const TmEqDeriv& d, const Tm& m, const Tm& n, const Tp& t) {
  if (d.is_arrow()) {
    if (!t.is_arrow()) return false;
    return check_tm_eq(ctx.extended(t.domain()), d.body(), apply_to_fresh(m), apply_to_fresh(n), t.codomain());
  }
  if (!t.is_base()) return false;
  auto p = replay(m, d.left_trace());
  auto q = replay(n, d.right_trace());
  if (!p || !q) return false;
  auto pt = check_path_eq(ctx, d.paths(), *p, *q);
  return pt && pt->is_base();
}

inline bool check_tm_eq(const Statement& st, const TmEqDeriv& d) {
  return check_tm_eq(st.ctx, d, st.left, st.right, st.type);
}

/// The type at which `d` proves p <-> q, or nullopt if `d` is not a valid
/// derivation of that judgment.
inline std::optional<Tp> check_path_eq(const Ctx& ctx, const PathEqDeriv& d, const Tm& p, const Tm& q) {
  if (d.is_var()) {
    if (!p.is_var() || !q.is_var()) return std::nullopt;
    if (p.index() != d.index() || q.index() != d.index() || d.index() >= ctx.size()) return std::nullopt;
    return ctx.at(d.index());
  }
  if (!p.is_app() || !q.is_app()) return std::nullopt;
  auto f = check_path_eq(ctx, d.fun(), p.fun(), q.fun());
  if (!f || !f->is_arrow()) return std::nullopt;
  if (!check_tm_eq(ctx, d.arg(), p.arg(), q.arg(), f->domain())) return std::nullopt;
  return f->codomain();
}

// ---------------------------------------------------------------------------
// Weakening under path substitutions
//
// Traces are unchanged: a head redex sits on a spine of App nodes ending in a
// Lam, none of which a substitution touches. A p-var node becomes the
// reflexivity derivation of the path the variable is mapped to.

namespace detail {

inline std::pair<PathEqDeriv, Tp> weaken_path(const PathSubst& pi, const PathEqDeriv& d, const Tm& p, const Tm& q);

inline TmEqDeriv weaken_tm(const PathSubst& pi, const TmEqDeriv& d, const Tm& m, const Tm& n, const Tp& t) {
  if (d.is_arrow()) {
    if (!t.is_arrow()) throw InvalidDerivation("alg-arr node at base type");
    return TmEqDeriv::arrow(
        weaken_tm(pi.lifted(t.domain()), d.body(), apply_to_fresh(m), apply_to_fresh(n), t.codomain()));
  }
  auto p = replay(m, d.left_trace());
  auto q = replay(n, d.right_trace());
  if (!p || !q) throw InvalidDerivation("alg-base trace does not replay");
  return TmEqDeriv::base(d.left_trace(), d.right_trace(), weaken_path(pi, d.paths(), *p, *q).first);
}

inline std::pair<PathEqDeriv, Tp> weaken_path(const PathSubst& pi, const PathEqDeriv& d, const Tm& p, const Tm& q) {
  if (d.is_var()) {
    if (d.index() >= pi.from().size()) throw InvalidDerivation("p-var index outside the substitution's domain");
    const Tm& entry = pi.subst().at(d.index());
    auto refl = decide_path(pi.to(), entry, entry, kDefaultFuel);
    if (!refl || !(refl->second == pi.from().at(d.index()))) {
      throw InvalidPathSubst("path substitution entry is not self-related at its declared type");
    }
    return *refl;
  }
  if (!p.is_app() || !q.is_app()) throw InvalidDerivation("p-app node against a non-application");
  auto [f, ft] = weaken_path(pi, d.fun(), p.fun(), q.fun());
  if (!ft.is_arrow()) throw InvalidDerivation("p-app head is not of arrow type");
  TmEqDeriv a = weaken_tm(pi, d.arg(), p.arg(), q.arg(), ft.domain());
  return {PathEqDeriv::app(std::move(f), std::move(a)), ft.codomain()};
}

}  // namespace detail

/// Transports a derivation of pi.from() |- m <=> n : t to
/// pi.to() |- m[pi] <=> n[pi] : t.
inline TmEqDeriv weaken_tm_eq(const PathSubst& pi, const TmEqDeriv& d, const Tm& m, const Tm& n, const Tp& t) {
  return detail::weaken_tm(pi, d, m, n, t);
}

inline PathEqDeriv weaken_path_eq(const PathSubst& pi, const PathEqDeriv& d, const Tm& p, const Tm& q) {
  return detail::weaken_path(pi, d, p, q).first;
}

// ---------------------------------------------------------------------------
// Symmetry and transitivity

inline TmEqDeriv sym_tm_eq(const TmEqDeriv& d);

inline PathEqDeriv sym_path_eq(const PathEqDeriv& d) {
  if (d.is_var()) return d;
  return PathEqDeriv::app(sym_path_eq(d.fun()), sym_tm_eq(d.arg()));
}

inline TmEqDeriv sym_tm_eq(const TmEqDeriv& d) {
  if (d.is_arrow()) return TmEqDeriv::arrow(sym_tm_eq(d.body()));
  return TmEqDeriv::base(d.right_trace(), d.left_trace(), sym_path_eq(d.paths()));
}

inline TmEqDeriv trans_tm_eq(const TmEqDeriv& d1, const TmEqDeriv& d2);

/// d1 : P <-> Q and d2 : Q <-> R give P <-> R. Both derivations share Q, so
/// they have the same shape on it; anything else is a MiddleTermMismatch.
inline PathEqDeriv trans_path_eq(const PathEqDeriv& d1, const PathEqDeriv& d2) {
  if (d1.is_var() && d2.is_var()) {
    if (d1.index() != d2.index()) throw MiddleTermMismatch("p-var indices disagree on the middle path");
    return d1;
  }
  if (d1.is_app() && d2.is_app()) {
    return PathEqDeriv::app(trans_path_eq(d1.fun(), d2.fun()), trans_tm_eq(d1.arg(), d2.arg()));
  }
  throw MiddleTermMismatch("path derivations disagree on the shape of the middle path");
}

/// d1 : M <=> N and d2 : N <=> O give M <=> O. At base type both derivations
/// reduce N to weak head normal form; by determinacy of weak head reduction
/// the two traces must coincide.
inline TmEqDeriv trans_tm_eq(const TmEqDeriv& d1, const TmEqDeriv& d2) {
  if (d1.is_arrow() && d2.is_arrow()) return TmEqDeriv::arrow(trans_tm_eq(d1.body(), d2.body()));
  if (d1.is_base() && d2.is_base()) {
    if (!(d1.right_trace() == d2.left_trace())) {
      throw MiddleTermMismatch("middle term reduces along different traces");
    }
    return TmEqDeriv::base(d1.left_trace(), d2.right_trace(), trans_path_eq(d1.paths(), d2.paths()));
  }
  throw MiddleTermMismatch("derivations are at different types");
}

/// Statement-level transitivity: checks that the middle terms agree.
inline TmEqDeriv trans_tm_eq(const Statement& s1, const TmEqDeriv& d1, const Statement& s2, const TmEqDeriv& d2) {
  if (!(s1.ctx == s2.ctx) || !(s1.type == s2.type) || !(s1.right == s2.left)) {
    throw MiddleTermMismatch("transitivity applied to statements that do not chain");
  }
  return trans_tm_eq(d1, d2);
}

}  // namespace algeq
