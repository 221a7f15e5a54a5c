#pragma once

// Simultaneous substitutions as first-class data.
//
// A Subst maps every variable of a domain context of length size() to a term
// over some codomain context. Entries are stored leftmost first, so the last
// entry replaces Var(0). Application traverses eagerly; there are no closure
// nodes inside terms.

#include <algeq/errors.hpp>
#include <algeq/syntax.hpp>
#include <algeq/typing.hpp>

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace algeq {

class Subst {
 public:
  Subst() = default;
  explicit Subst(std::vector<Tm> entries) : entries_(std::move(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<Tm>& entries() const noexcept { return entries_; }

  /// Replacement for Var(index).
  const Tm& at(std::size_t index) const {
    if (index >= entries_.size()) {
      throw ScopeError("substitution of domain length " + std::to_string(entries_.size()) +
                       " applied to Var(" + std::to_string(index) + ")");
    }
    return entries_[entries_.size() - 1 - index];
  }

  friend bool operator==(const Subst&, const Subst&) = default;

 private:
  std::vector<Tm> entries_;
};

inline Subst id_subst(std::size_t n) {
  std::vector<Tm> entries;
  entries.reserve(n);
  for (std::size_t k = n; k > 0; --k) entries.push_back(Tm::var(k - 1));
  return Subst(std::move(entries));
}

inline Subst weaken(const Subst& s, std::size_t by) {
  std::vector<Tm> entries;
  entries.reserve(s.size());
  for (const Tm& e : s.entries()) entries.push_back(shift(e, by));
  return Subst(std::move(entries));
}

/// (s, m): m becomes the replacement for the new innermost domain variable.
inline Subst extend(const Subst& s, Tm m) {
  std::vector<Tm> entries = s.entries();
  entries.push_back(std::move(m));
  return Subst(std::move(entries));
}

/// The substitution used under a binder: (weaken(s, 1), Var 0).
inline Subst lift(const Subst& s) { return extend(weaken(s, 1), Tm::var(0)); }

inline Tm apply_tm(const Subst& s, const Tm& m) {
  switch (m.kind()) {
    case Tm::Kind::Var:
      return s.at(m.index());
    case Tm::Kind::Lam:
      return Tm::lam(apply_tm(lift(s), m.body()));
    case Tm::Kind::App:
      return Tm::app(apply_tm(s, m.fun()), apply_tm(s, m.arg()));
  }
  return m;
}

/// s followed by t: apply_tm(compose(s, t), m) == apply_tm(t, apply_tm(s, m)).
inline Subst compose(const Subst& s, const Subst& t) {
  std::vector<Tm> entries;
  entries.reserve(s.size());
  for (const Tm& e : s.entries()) entries.push_back(apply_tm(t, e));
  return Subst(std::move(entries));
}

/// body[arg/0], where `body` lives one binder below `arg`. This is the
/// beta-reduction instance apply_tm(extend(id, arg), body).
inline Tm instantiate(const Tm& body, const Tm& arg) {
  std::size_t outer = std::max(scope_bound(body) == 0 ? 0 : scope_bound(body) - 1, scope_bound(arg));
  return apply_tm(extend(id_subst(outer), arg), body);
}

/// True iff `s` is a path substitution from `from` into `to`: one entry per
/// variable of `from`, each a path of the declared type in `to`.
inline bool is_path_subst(const Ctx& from, const Subst& s, const Ctx& to) {
  if (s.size() != from.size()) return false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto t = path_type(to, s.at(k));
    if (!t || !(*t == from.at(k))) return false;
  }
  return true;
}

/// A substitution validated to be a path substitution between two contexts.
class PathSubst {
 public:
  PathSubst(Ctx from, Subst s, Ctx to) : from_(std::move(from)), subst_(std::move(s)), to_(std::move(to)) {
    if (!is_path_subst(from_, subst_, to_)) throw InvalidPathSubst("not a path substitution between the given contexts");
  }

  static PathSubst identity(const Ctx& ctx) { return PathSubst(ctx, id_subst(ctx.size()), ctx); }

  /// ctx -> ctx ++ extra, the weakening past `extra`.
  static PathSubst weakening(const Ctx& ctx, const Ctx& extra) {
    return PathSubst(ctx, weaken(id_subst(ctx.size()), extra.size()), ctx.concat(extra));
  }

  const Ctx& from() const noexcept { return from_; }
  const Subst& subst() const noexcept { return subst_; }
  const Ctx& to() const noexcept { return to_; }

  /// Under a binder of type t: from & t -> to & t.
  PathSubst lifted(const Tp& t) const { return PathSubst(from_.extended(t), lift(subst_), to_.extended(t)); }

  Tm operator()(const Tm& m) const { return apply_tm(subst_, m); }

  friend bool operator==(const PathSubst&, const PathSubst&) = default;

 private:
  Ctx from_;
  Subst subst_;
  Ctx to_;
};

/// pi then rho; closed because a path under a path substitution is a path of
/// the same type.
inline PathSubst compose(const PathSubst& pi, const PathSubst& rho) {
  if (!(pi.to() == rho.from())) throw InvalidPathSubst("composed path substitutions do not meet");
  return PathSubst(pi.from(), compose(pi.subst(), rho.subst()), rho.to());
}

inline std::ostream& operator<<(std::ostream& os, const Subst& s) {
  os << "[";
  for (std::size_t k = 0; k < s.entries().size(); ++k) {
    if (k != 0) os << ", ";
    os << s.entries()[k];
  }
  return os << "]";
}

}  // namespace algeq
