#pragma once

// Weak head reduction with replayable traces.

#include <algeq/errors.hpp>
#include <algeq/subst.hpp>
#include <algeq/syntax.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace algeq {

/// One head step: beta at the redex reached by descending `depth` times into
/// the function position. depth 0 is BetaHead; depth k+1 is AppLeft of a depth
/// k step.
struct Step {
  std::size_t depth = 0;

  static Step beta() { return Step{0}; }
  static Step app_left(Step inner) { return Step{inner.depth + 1}; }

  friend bool operator==(const Step&, const Step&) = default;
};

/// A multi-step reduction; empty is reflexivity.
using Trace = std::vector<Step>;

inline Trace concat(Trace a, const Trace& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// The trace of App(M, N) induced by a trace of M.
inline Trace lift_under_application(const Trace& t) {
  Trace out;
  out.reserve(t.size());
  for (Step s : t) out.push_back(Step::app_left(s));
  return out;
}

namespace detail {

inline std::optional<Tm> contract_at(const Tm& m, std::size_t depth) {
  if (!m.is_app()) return std::nullopt;
  if (depth == 0) {
    if (!m.fun().is_lam()) return std::nullopt;
    return instantiate(m.fun().body(), m.arg());
  }
  auto f = contract_at(m.fun(), depth - 1);
  if (!f) return std::nullopt;
  return Tm::app(std::move(*f), m.arg());
}

}  // namespace detail

/// Applies one step if it is legal at its stated position.
inline std::optional<Tm> apply_step(const Tm& m, Step s) { return detail::contract_at(m, s.depth); }

/// The unique weak head step of `m`, or nullopt if `m` is a lambda or a path.
inline std::optional<std::pair<Tm, Step>> whstep(const Tm& m) {
  std::size_t depth = 0;
  const Tm* cur = &m;
  while (cur->is_app()) {
    if (cur->fun().is_lam()) {
      Step s{depth};
      return std::pair{*detail::contract_at(m, depth), s};
    }
    cur = &cur->fun();
    ++depth;
  }
  return std::nullopt;
}

/// Endpoint of replaying `trace` from `m`, or nullopt if some step is illegal.
inline std::optional<Tm> replay(const Tm& m, const Trace& trace) {
  Tm cur = m;
  for (Step s : trace) {
    auto next = apply_step(cur, s);
    if (!next) return std::nullopt;
    cur = std::move(*next);
  }
  return cur;
}

inline bool check_mstep(const Tm& from, const Trace& trace, const Tm& to) {
  auto end = replay(from, trace);
  return end && *end == to;
}

inline constexpr std::size_t kDefaultFuel = 10000;

/// Weak head normal form together with the trace reaching it.
/// Throws FuelExhausted after more than `fuel` steps.
inline std::pair<Tm, Trace> whnf(const Tm& m, std::size_t fuel) {
  Tm cur = m;
  Trace trace;
  while (auto step = whstep(cur)) {
    if (trace.size() == fuel) throw FuelExhausted(fuel);
    cur = std::move(step->first);
    trace.push_back(step->second);
  }
  return {std::move(cur), std::move(trace)};
}

inline bool is_whnf(const Tm& m) { return m.is_lam() || is_path(m); }

}  // namespace algeq
