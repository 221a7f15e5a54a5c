#pragma once

// The logical relation ctx |- M ~ N : T as executable evidence.
//
// At base type a witness holds an algorithmic derivation. At A -> B it holds a
// mapping that, for any path substitution pi : ctx -> ctx' and any witness
// ctx' |- N1 ~ N2 : A, produces a witness ctx' |- M[pi] N1 ~ N[pi] N2 : B.
// Every witness carries its statement; applying a mapping checks that the
// result proves exactly the promised statement, so substitution identities
// that the proof relies on are checked structurally each time they are used.

#include <algeq/algo.hpp>
#include <algeq/decl.hpp>
#include <algeq/errors.hpp>
#include <algeq/reduction.hpp>
#include <algeq/subst.hpp>
#include <algeq/syntax.hpp>

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace algeq {

class LogWitness {
 public:
  using Mapping = std::function<LogWitness(const PathSubst& pi, const LogWitness& arg)>;

  static LogWitness base(Statement st, TmEqDeriv d) {
    if (!st.type.is_base()) throw ContractError("base witness at arrow type");
    return LogWitness{std::make_shared<const Node>(Node{std::move(st), std::move(d), {}})};
  }

  static LogWitness arrow(Statement st, Mapping f) {
    if (!st.type.is_arrow()) throw ContractError("arrow witness at base type");
    return LogWitness{std::make_shared<const Node>(Node{std::move(st), std::nullopt, std::move(f)})};
  }

  const Statement& statement() const noexcept { return node_->statement; }
  const Ctx& ctx() const noexcept { return node_->statement.ctx; }
  const Tm& left() const noexcept { return node_->statement.left; }
  const Tm& right() const noexcept { return node_->statement.right; }
  const Tp& type() const noexcept { return node_->statement.type; }
  bool is_base() const noexcept { return node_->derivation.has_value(); }

  const TmEqDeriv& derivation() const {
    if (!is_base()) throw ContractError("derivation() on an arrow witness");
    return *node_->derivation;
  }

  /// Runs the mapping of an arrow witness.
  LogWitness apply(const PathSubst& pi, const LogWitness& arg) const {
    if (is_base()) throw ContractError("apply() on a base witness");
    if (!(pi.from() == ctx())) throw ContractError("path substitution does not start at the witness context");
    if (!(arg.ctx() == pi.to()) || !(arg.type() == type().domain())) {
      throw ContractError("argument witness does not live in the target context at the domain type");
    }
    LogWitness out = node_->mapping(pi, arg);
    Statement expected{pi.to(), Tm::app(pi(left()), arg.left()), Tm::app(pi(right()), arg.right()),
                       type().codomain()};
    if (!(out.statement() == expected)) {
      std::ostringstream msg;
      msg << "witness mapping produced " << out.statement() << ", expected " << expected;
      throw ContractError(msg.str());
    }
    return out;
  }

 private:
  struct Node {
    Statement statement;
    std::optional<TmEqDeriv> derivation;
    Mapping mapping;
  };
  explicit LogWitness(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Main lemma

inline TmEqDeriv reify(const LogWitness& w);

/// Path equivalence is included in the logical relation.
inline LogWitness reflect(const Statement& st, const PathEqDeriv& d) {
  if (st.type.is_base()) return LogWitness::base(st, TmEqDeriv::base({}, {}, d));
  return LogWitness::arrow(st, [st, d](const PathSubst& pi, const LogWitness& arg) {
    PathEqDeriv head = weaken_path_eq(pi, d, st.left, st.right);
    PathEqDeriv applied = PathEqDeriv::app(std::move(head), reify(arg));
    Statement next{pi.to(), Tm::app(pi(st.left), arg.left()), Tm::app(pi(st.right), arg.right()),
                   st.type.codomain()};
    return reflect(next, applied);
  });
}

/// The logical relation is included in algorithmic equality. At arrow type the
/// mapping is run on the weakening past one fresh variable.
inline TmEqDeriv reify(const LogWitness& w) {
  if (w.is_base()) return w.derivation();
  const Tp& domain = w.type().domain();
  PathSubst pi = PathSubst::weakening(w.ctx(), Ctx({domain}));
  Ctx extended = w.ctx().extended(domain);
  LogWitness fresh = reflect(Statement{extended, Tm::var(0), Tm::var(0), domain}, PathEqDeriv::var(0));
  return TmEqDeriv::arrow(reify(w.apply(pi, fresh)));
}

// ---------------------------------------------------------------------------
// Monotonicity and weak head closure

inline LogWitness log_monotone(const PathSubst& pi, const LogWitness& w) {
  if (!(pi.from() == w.ctx())) throw InvalidPathSubst("path substitution does not start at the witness context");
  Statement st{pi.to(), pi(w.left()), pi(w.right()), w.type()};
  if (w.is_base()) {
    return LogWitness::base(std::move(st), weaken_tm_eq(pi, w.derivation(), w.left(), w.right(), w.type()));
  }
  return LogWitness::arrow(std::move(st), [pi, w](const PathSubst& next, const LogWitness& arg) {
    return w.apply(compose(pi, next), arg);
  });
}

/// Backward closure under weak head reduction: from m1 ->* w.left and
/// m2 ->* w.right, a witness for m1 ~ m2.
inline LogWitness closed(const Tm& m1, const Trace& t1, const Tm& m2, const Trace& t2, const LogWitness& w) {
  if (!check_mstep(m1, t1, w.left())) throw InvalidTrace("left trace does not reach the witness's left term");
  if (!check_mstep(m2, t2, w.right())) throw InvalidTrace("right trace does not reach the witness's right term");
  Statement st{w.ctx(), m1, m2, w.type()};
  if (w.is_base()) {
    const TmEqDeriv& d = w.derivation();
    return LogWitness::base(std::move(st), TmEqDeriv::base(concat(t1, d.left_trace()), concat(t2, d.right_trace()),
                                                           d.paths()));
  }
  return LogWitness::arrow(std::move(st), [m1, t1, m2, t2, w](const PathSubst& pi, const LogWitness& arg) {
    LogWitness inner = w.apply(pi, arg);
    return closed(Tm::app(pi(m1), arg.left()), lift_under_application(t1), Tm::app(pi(m2), arg.right()),
                  lift_under_application(t2), inner);
  });
}

// ---------------------------------------------------------------------------
// Symmetry and transitivity

inline LogWitness log_sym(const LogWitness& w) {
  Statement st{w.ctx(), w.right(), w.left(), w.type()};
  if (w.is_base()) return LogWitness::base(std::move(st), sym_tm_eq(w.derivation()));
  return LogWitness::arrow(std::move(st), [w](const PathSubst& pi, const LogWitness& arg) {
    return log_sym(w.apply(pi, log_sym(arg)));
  });
}

inline LogWitness log_trans(const LogWitness& w1, const LogWitness& w2) {
  if (!(w1.ctx() == w2.ctx()) || !(w1.type() == w2.type()) || !(w1.right() == w2.left())) {
    throw MiddleTermMismatch("logical transitivity on witnesses that do not chain");
  }
  Statement st{w1.ctx(), w1.left(), w2.right(), w1.type()};
  if (w1.is_base()) return LogWitness::base(std::move(st), trans_tm_eq(w1.derivation(), w2.derivation()));
  return LogWitness::arrow(std::move(st), [w1, w2](const PathSubst& pi, const LogWitness& arg) {
    // arg : N1 ~ N2, so arg ; sym(arg) : N1 ~ N1.
    LogWitness first = w1.apply(pi, log_trans(arg, log_sym(arg)));
    LogWitness second = w2.apply(pi, arg);
    return log_trans(first, second);
  });
}

// ---------------------------------------------------------------------------
// Related substitutions

/// target |- s1 ~ s2 : source, one witness per source variable (leftmost first).
class LogSubEnv {
 public:
  explicit LogSubEnv(Ctx target) : target_(std::move(target)) {}

  /// Extends the domain by one variable related by `w`.
  LogSubEnv dot(const LogWitness& w) const {
    if (!(w.ctx() == target_)) throw ContractError("witness does not live in the environment's target context");
    LogSubEnv out = *this;
    out.source_ = source_.extended(w.type());
    out.s1_ = extend(s1_, w.left());
    out.s2_ = extend(s2_, w.right());
    out.witnesses_.push_back(w);
    return out;
  }

  const Ctx& target() const noexcept { return target_; }
  const Ctx& source() const noexcept { return source_; }
  const Subst& s1() const noexcept { return s1_; }
  const Subst& s2() const noexcept { return s2_; }
  const std::vector<LogWitness>& witnesses() const noexcept { return witnesses_; }

  /// Witness for source variable Var(index).
  const LogWitness& at(std::size_t index) const {
    if (index >= witnesses_.size()) throw IndexOutOfRange(index);
    return witnesses_[witnesses_.size() - 1 - index];
  }

 private:
  Ctx target_;
  Ctx source_;
  Subst s1_;
  Subst s2_;
  std::vector<LogWitness> witnesses_;
};

inline LogSubEnv wkn_logsub(const PathSubst& pi, const LogSubEnv& env) {
  if (!(pi.from() == env.target())) throw InvalidPathSubst("path substitution does not start at the environment target");
  LogSubEnv out(pi.to());
  for (const LogWitness& w : env.witnesses()) out = out.dot(log_monotone(pi, w));
  return out;
}

/// target |- s2 ~ s1 : source.
inline LogSubEnv sym_logsub(const LogSubEnv& env) {
  LogSubEnv out(env.target());
  for (const LogWitness& w : env.witnesses()) out = out.dot(log_sym(w));
  return out;
}

/// target |- s2 ~ s2 : source, via symmetry then transitivity.
inline LogSubEnv right_refl_logsub(const LogSubEnv& env) {
  LogSubEnv out(env.target());
  for (const LogWitness& w : env.witnesses()) out = out.dot(log_trans(log_sym(w), w));
  return out;
}

/// ctx |- id ~ id : ctx, each variable reflected from its p-var derivation.
inline LogSubEnv id_logsub(const Ctx& ctx) {
  LogSubEnv out(ctx);
  for (std::size_t k = ctx.size(); k > 0; --k) {
    std::size_t index = k - 1;
    out = out.dot(reflect(Statement{ctx, Tm::var(index), Tm::var(index), ctx.at(index)}, PathEqDeriv::var(index)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fundamental theorem and completeness

/// From a declarative derivation of source |- M1 == M2 : T and related
/// substitutions target |- s1 ~ s2 : source, a witness for
/// target |- M1[s1] ~ M2[s2] : T.
inline LogWitness fundamental(const DeclDeriv& d, const LogSubEnv& env) {
  const Statement& st = d.conclusion();
  if (!(st.ctx == env.source())) throw ContractError("derivation context differs from the environment's source");
  Statement goal{env.target(), apply_tm(env.s1(), st.left), apply_tm(env.s2(), st.right), st.type};

  auto result = [&]() -> LogWitness {
    switch (d.rule()) {
      case DeclRule::Var:
        return env.at(d.index());

      case DeclRule::Lam: {
        DeclDeriv body = d.premise(0);
        return LogWitness::arrow(goal, [goal, body, env](const PathSubst& pi, const LogWitness& arg) {
          LogWitness ih = fundamental(body, wkn_logsub(pi, env).dot(arg));
          return closed(Tm::app(pi(goal.left), arg.left()), {Step::beta()}, Tm::app(pi(goal.right), arg.right()),
                        {Step::beta()}, ih);
        });
      }

      case DeclRule::Ext: {
        DeclDeriv body = d.premise(0);
        return LogWitness::arrow(goal, [body, env](const PathSubst& pi, const LogWitness& arg) {
          return fundamental(body, wkn_logsub(pi, env).dot(arg));
        });
      }

      case DeclRule::Beta: {
        LogWitness arg = fundamental(d.premise(1), env);
        LogWitness ih = fundamental(d.premise(0), env.dot(arg));
        return closed(goal.left, {Step::beta()}, goal.right, {}, ih);
      }

      case DeclRule::App: {
        LogWitness fun = fundamental(d.premise(0), env);
        LogWitness arg = fundamental(d.premise(1), env);
        return fun.apply(PathSubst::identity(env.target()), arg);
      }

      case DeclRule::Sym:
        return log_sym(fundamental(d.premise(0), sym_logsub(env)));

      case DeclRule::Trans:
        return log_trans(fundamental(d.premise(0), env), fundamental(d.premise(1), right_refl_logsub(env)));
    }
    throw ContractError("unknown declarative rule");
  }();

  if (!(result.statement() == goal)) {
    std::ostringstream msg;
    msg << "fundamental theorem produced " << result.statement() << ", expected " << goal;
    throw ContractError(msg.str());
  }
  return result;
}

/// Translates a declarative derivation of ctx |- M == N : T into an
/// algorithmic derivation of ctx |- M <=> N : T.
inline TmEqDeriv completeness(const Ctx& ctx, const DeclDeriv& d) {
  if (!(d.conclusion().ctx == ctx) || !check_decl(d)) throw InvalidDerivation("declarative derivation does not check");
  LogWitness w = fundamental(d, id_logsub(ctx));
  const Statement& st = d.conclusion();
  if (!(w.left() == st.left) || !(w.right() == st.right)) {
    throw ContractError("identity substitution changed the statement");
  }
  return reify(w);
}

}  // namespace algeq
