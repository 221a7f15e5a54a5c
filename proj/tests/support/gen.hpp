#pragma once

// Random inputs for property tests. Generators build terms with a known type
// and pairs with a known beta-eta relationship, so tests never need the
// engine to tell them what they generated.

#include <algeq/subst.hpp>
#include <algeq/syntax.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace gen {

using algeq::Ctx;
using algeq::Subst;
using algeq::Tm;
using algeq::Tp;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline Tp type(Rng& r, std::size_t max_depth) {
  if (max_depth == 0 || r.chance(0.4)) return Tp::base();
  Tp d = type(r, max_depth - 1);
  return Tp::arrow(std::move(d), type(r, max_depth - 1));
}

inline Ctx context(Rng& r, std::size_t len, std::size_t max_depth) {
  Ctx c;
  for (std::size_t j = 0; j < len; ++j) c = c.extended(type(r, max_depth));
  return c;
}

/// Any well-scoped term (no typing), for substitution laws.
inline Tm scoped_term(Rng& r, std::size_t scope, std::size_t budget) {
  std::size_t pick = r.below(budget <= 1 ? 1 : 3);
  if (pick == 0 || budget <= 1) {
    if (scope == 0) return Tm::lam(scoped_term(r, 1, budget > 1 ? budget - 1 : 1));
    return Tm::var(r.below(scope));
  }
  if (pick == 1) return Tm::lam(scoped_term(r, scope + 1, budget - 1));
  std::size_t left = 1 + r.below(budget - 1);
  Tm f = scoped_term(r, scope, left);
  return Tm::app(std::move(f), scoped_term(r, scope, budget - left));
}

inline Subst scoped_subst(Rng& r, std::size_t from, std::size_t to, std::size_t budget) {
  std::vector<Tm> entries;
  for (std::size_t j = 0; j < from; ++j) entries.push_back(scoped_term(r, to, 1 + r.below(budget)));
  return Subst(std::move(entries));
}

// ---------------------------------------------------------------------------
// Typed terms.

/// Peels `t` off the end of `head`: the argument types a variable of type
/// `head` must receive to reach `t`, if any.
inline std::optional<std::vector<Tp>> spine_to(Tp head, const Tp& t) {
  std::vector<Tp> args;
  for (;;) {
    if (head == t) return args;
    if (!head.is_arrow()) return std::nullopt;
    args.push_back(head.domain());
    head = head.codomain();
  }
}

inline std::optional<Tm> term(Rng& r, const Ctx& ctx, const Tp& t, std::size_t budget);

/// A path of type `t`, or nullopt if no variable's type ends in `t`.
inline std::optional<Tm> path(Rng& r, const Ctx& ctx, const Tp& t, std::size_t budget) {
  std::vector<std::pair<std::size_t, std::vector<Tp>>> heads;
  for (std::size_t k = 0; k < ctx.size(); ++k)
    if (auto args = spine_to(ctx.at(k), t); args && (budget > 0 || args->empty()))
      heads.emplace_back(k, std::move(*args));
  if (heads.empty()) return std::nullopt;
  auto& [k, args] = heads[r.below(heads.size())];
  Tm out = Tm::var(k);
  // Arguments get strictly less budget, so generation always terminates.
  std::size_t share = args.empty() ? 0 : (budget - 1) / args.size();
  for (const Tp& a : args) {
    auto x = term(r, ctx, a, share);
    if (!x) return std::nullopt;
    out = Tm::app(std::move(out), std::move(*x));
  }
  return out;
}

/// A term of type `t`: a path, a lambda, or a beta-redex, chosen at random.
inline std::optional<Tm> term(Rng& r, const Ctx& ctx, const Tp& t, std::size_t budget) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::size_t pick = budget <= 1 ? r.below(2) : r.below(5);
    if (pick == 0) {
      if (auto p = path(r, ctx, t, budget)) return p;
    }
    if (pick <= 2 && t.is_arrow()) {
      if (auto b = term(r, ctx.extended(t.domain()), t.codomain(), budget > 0 ? budget - 1 : 0)) {
        return Tm::lam(std::move(*b));
      }
    }
    if (pick >= 3) {
      Tp s = type(r, 1);
      auto body = term(r, ctx.extended(s), t, budget / 2);
      auto arg = term(r, ctx, s, budget / 2);
      if (body && arg) return Tm::app(Tm::lam(std::move(*body)), std::move(*arg));
    }
  }
  if (auto p = path(r, ctx, t, budget)) return p;
  if (t.is_arrow()) {
    if (auto b = term(r, ctx.extended(t.domain()), t.codomain(), 0)) return Tm::lam(std::move(*b));
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Beta-eta equal pairs.

/// Wraps `m : t` in a redex or an eta-expansion that reduces back to it.
inline Tm expand(Rng& r, const Ctx& ctx, const Tm& m, const Tp& t) {
  switch (r.below(t.is_arrow() ? 3 : 2)) {
    case 0: {
      // (\_. m) a for an arbitrary a
      Tp s = type(r, 1);
      auto a = term(r, ctx, s, 3);
      if (a) return Tm::app(Tm::lam(algeq::shift(m, 1)), std::move(*a));
      return Tm::app(Tm::lam(Tm::var(0)), m);
    }
    case 1:
      return Tm::app(Tm::lam(Tm::var(0)), m);
    default:
      return Tm::lam(Tm::app(algeq::shift(m, 1), Tm::var(0)));
  }
}

/// Two terms of type `t` that are beta-eta equal by construction.
inline std::optional<std::pair<Tm, Tm>> equal_pair(Rng& r, const Ctx& ctx, const Tp& t, std::size_t budget) {
  std::optional<std::pair<Tm, Tm>> core;
  if (t.is_arrow() && (budget <= 1 || r.chance(0.5))) {
    auto b = equal_pair(r, ctx.extended(t.domain()), t.codomain(), budget > 0 ? budget - 1 : 0);
    if (b) core = std::pair{Tm::lam(std::move(b->first)), Tm::lam(std::move(b->second))};
  }
  if (!core) {
    std::vector<std::pair<std::size_t, std::vector<Tp>>> heads;
    for (std::size_t k = 0; k < ctx.size(); ++k)
      if (auto args = spine_to(ctx.at(k), t); args && (budget > 0 || args->empty()))
        heads.emplace_back(k, std::move(*args));
    if (!heads.empty()) {
      auto& [k, args] = heads[r.below(heads.size())];
      Tm left = Tm::var(k), right = Tm::var(k);
      std::size_t share = args.empty() ? 0 : (budget - 1) / args.size();
      bool ok = true;
      for (const Tp& a : args) {
        auto x = equal_pair(r, ctx, a, share);
        if (!x) {
          ok = false;
          break;
        }
        left = Tm::app(std::move(left), std::move(x->first));
        right = Tm::app(std::move(right), std::move(x->second));
      }
      if (ok) core = std::pair{std::move(left), std::move(right)};
    }
  }
  if (!core && t.is_arrow()) {
    auto b = equal_pair(r, ctx.extended(t.domain()), t.codomain(), 0);
    if (b) core = std::pair{Tm::lam(std::move(b->first)), Tm::lam(std::move(b->second))};
  }
  if (!core) return std::nullopt;
  if (r.chance(0.3)) core->first = expand(r, ctx, core->first, t);
  if (r.chance(0.3)) core->second = expand(r, ctx, core->second, t);
  return core;
}

// ---------------------------------------------------------------------------
// Path substitutions.

/// A random path substitution from `from` into `to`, where Var(k + shift_by)
/// in `to` has the type of Var(k) in `from` (e.g. to = from.concat(extra)).
/// Entry k is either that variable or another path of the right type.
inline Subst path_subst(Rng& r, const Ctx& from, const Ctx& to, std::size_t shift_by) {
  std::vector<Tm> entries;
  for (std::size_t j = 0; j < from.size(); ++j) {
    std::size_t k = from.size() - 1 - j;
    Tm entry = Tm::var(k + shift_by);
    if (r.chance(0.5)) {
      if (auto p = path(r, to, from.at(k), 3)) entry = std::move(*p);
    }
    entries.push_back(std::move(entry));
  }
  return Subst(std::move(entries));
}

// ---------------------------------------------------------------------------
// Head expansions: terms that weak-head reduce to a given one along a known
// trace of (depth) steps.

inline std::size_t spine_length(const Tm& m) {
  std::size_t n = 0;
  for (const Tm* cur = &m; cur->is_app(); cur = &cur->fun()) ++n;
  return n;
}

// Replaces the spine prefix at `depth` by (\_. prefix) a.
inline Tm expand_at(const Tm& m, std::size_t depth, const Tm& a) {
  if (depth == 0) return Tm::app(Tm::lam(algeq::shift(m, 1)), a);
  return Tm::app(expand_at(m.fun(), depth - 1, a), m.arg());
}

/// A term reducing to `m` in `steps` head steps, with their depths in order.
inline std::pair<Tm, std::vector<std::size_t>> head_expansion(Rng& r, const Ctx& ctx, const Tm& m,
                                                                  std::size_t steps) {
  Tm cur = m;
  std::vector<std::size_t> depths;
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t d = r.below(spine_length(cur) + 1);
    Tp s = type(r, 1);
    Tm a = term(r, ctx, s, 2).value_or(Tm::lam(Tm::var(0)));
    cur = expand_at(cur, d, a);
    depths.insert(depths.begin(), d);
  }
  return {cur, depths};
}

}  // namespace gen
