#pragma once

// Object-language types, de Bruijn terms and typing contexts.
//
// All three are immutable values with structural equality. Terms and types
// share subtrees through shared_ptr, so copying is O(1).

#include <algeq/errors.hpp>

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace algeq {

class Tp {
 public:
  static Tp base() { return Tp{}; }
  static Tp arrow(Tp domain, Tp codomain);

  bool is_base() const noexcept { return node_ == nullptr; }
  bool is_arrow() const noexcept { return node_ != nullptr; }

  const Tp& domain() const;
  const Tp& codomain() const;

  friend bool operator==(const Tp& a, const Tp& b);

 private:
  struct Node;
  Tp() = default;
  explicit Tp(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Tp::Node {
  Tp domain;
  Tp codomain;
};

inline Tp Tp::arrow(Tp domain, Tp codomain) {
  return Tp{std::make_shared<const Node>(Node{std::move(domain), std::move(codomain)})};
}

inline const Tp& Tp::domain() const {
  if (!is_arrow()) throw ContractError("base type has no domain");
  return node_->domain;
}

inline const Tp& Tp::codomain() const {
  if (!is_arrow()) throw ContractError("base type has no codomain");
  return node_->codomain;
}

inline bool operator==(const Tp& a, const Tp& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_base() || b.is_base()) return false;
  return a.node_->domain == b.node_->domain && a.node_->codomain == b.node_->codomain;
}

/// Right-nested arrow: arrows({A, B}, C) = A -> B -> C.
inline Tp arrows(const std::vector<Tp>& domains, Tp result) {
  for (auto it = domains.rbegin(); it != domains.rend(); ++it) result = Tp::arrow(*it, std::move(result));
  return result;
}

/// Depth of the arrow tree; the base type has depth 0.
inline std::size_t depth(const Tp& t) {
  if (t.is_base()) return 0;
  return 1 + std::max(depth(t.domain()), depth(t.codomain()));
}

class Tm {
 public:
  enum class Kind { Var, Lam, App };

  static Tm var(std::size_t index);
  static Tm lam(Tm body);
  static Tm app(Tm fun, Tm arg);

  Kind kind() const noexcept;
  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_lam() const noexcept { return kind() == Kind::Lam; }
  bool is_app() const noexcept { return kind() == Kind::App; }

  std::size_t index() const;
  const Tm& body() const;
  const Tm& fun() const;
  const Tm& arg() const;

  friend bool operator==(const Tm& a, const Tm& b);

 private:
  struct Node;
  explicit Tm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Tm::Node {
  Kind kind;
  std::size_t index;
  std::optional<Tm> first;
  std::optional<Tm> second;
};

inline Tm Tm::var(std::size_t index) {
  return Tm{std::make_shared<const Node>(Node{Kind::Var, index, std::nullopt, std::nullopt})};
}
inline Tm Tm::lam(Tm body) {
  return Tm{std::make_shared<const Node>(Node{Kind::Lam, 0, std::move(body), std::nullopt})};
}
inline Tm Tm::app(Tm fun, Tm arg) {
  return Tm{std::make_shared<const Node>(Node{Kind::App, 0, std::move(fun), std::move(arg)})};
}

inline Tm::Kind Tm::kind() const noexcept { return node_->kind; }

inline std::size_t Tm::index() const {
  if (!is_var()) throw ContractError("index() on a non-variable term");
  return node_->index;
}
inline const Tm& Tm::body() const {
  if (!is_lam()) throw ContractError("body() on a non-lambda term");
  return *node_->first;
}
inline const Tm& Tm::fun() const {
  if (!is_app()) throw ContractError("fun() on a non-application term");
  return *node_->first;
}
inline const Tm& Tm::arg() const {
  if (!is_app()) throw ContractError("arg() on a non-application term");
  return *node_->second;
}

inline bool operator==(const Tm& a, const Tm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Tm::Kind::Var:
      return a.node_->index == b.node_->index;
    case Tm::Kind::Lam:
      return *a.node_->first == *b.node_->first;
    case Tm::Kind::App:
      return *a.node_->first == *b.node_->first && *a.node_->second == *b.node_->second;
  }
  return false;
}

/// Typing context. Entries are stored leftmost first; de Bruijn index 0 is the
/// rightmost (most recently bound) entry.
class Ctx {
 public:
  Ctx() = default;
  explicit Ctx(std::vector<Tp> entries) : entries_(std::move(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<Tp>& entries() const noexcept { return entries_; }

  const Tp& at(std::size_t index) const {
    if (index >= entries_.size()) throw IndexOutOfRange(index);
    return entries_[entries_.size() - 1 - index];
  }

  Ctx extended(Tp t) const {
    Ctx out = *this;
    out.entries_.push_back(std::move(t));
    return out;
  }

  /// This context followed by `inner` (inner's entries become the innermost).
  Ctx concat(const Ctx& inner) const {
    Ctx out = *this;
    out.entries_.insert(out.entries_.end(), inner.entries_.begin(), inner.entries_.end());
    return out;
  }

  friend bool operator==(const Ctx&, const Ctx&) = default;

 private:
  std::vector<Tp> entries_;
};

/// The statement ctx |- left ~ right : type shared by every equality judgment.
struct Statement {
  Ctx ctx;
  Tm left;
  Tm right;
  Tp type;

  friend bool operator==(const Statement&, const Statement&) = default;
};

inline std::size_t size(const Tm& m) {
  switch (m.kind()) {
    case Tm::Kind::Var:
      return 1;
    case Tm::Kind::Lam:
      return 1 + size(m.body());
    case Tm::Kind::App:
      return 1 + size(m.fun()) + size(m.arg());
  }
  return 0;
}

/// Smallest context length in which `m` is well-scoped.
inline std::size_t scope_bound(const Tm& m) {
  switch (m.kind()) {
    case Tm::Kind::Var:
      return m.index() + 1;
    case Tm::Kind::Lam: {
      std::size_t inner = scope_bound(m.body());
      return inner == 0 ? 0 : inner - 1;
    }
    case Tm::Kind::App:
      return std::max(scope_bound(m.fun()), scope_bound(m.arg()));
  }
  return 0;
}

inline bool is_well_scoped(const Tm& m, std::size_t ctx_length) { return scope_bound(m) <= ctx_length; }

/// Adds `by` to every free index >= cutoff.
inline Tm shift(const Tm& m, std::size_t by, std::size_t cutoff = 0) {
  if (by == 0) return m;
  switch (m.kind()) {
    case Tm::Kind::Var:
      return m.index() >= cutoff ? Tm::var(m.index() + by) : m;
    case Tm::Kind::Lam:
      return Tm::lam(shift(m.body(), by, cutoff + 1));
    case Tm::Kind::App:
      return Tm::app(shift(m.fun(), by, cutoff), shift(m.arg(), by, cutoff));
  }
  return m;
}

/// A path is a variable applied to zero or more arguments.
inline bool is_path(const Tm& m) {
  const Tm* head = &m;
  while (head->is_app()) head = &head->fun();
  return head->is_var();
}

/// App(M, Var 0) with M shifted past the new binder; the fresh-variable probe
/// used by extensionality and the arrow case of algorithmic equality.
inline Tm apply_to_fresh(const Tm& m) { return Tm::app(shift(m, 1), Tm::var(0)); }

inline std::ostream& operator<<(std::ostream& os, const Tp& t) {
  if (t.is_base()) return os << "i";
  if (t.domain().is_arrow()) {
    os << "(" << t.domain() << ")";
  } else {
    os << t.domain();
  }
  return os << " -> " << t.codomain();
}

inline std::ostream& operator<<(std::ostream& os, const Tm& m) {
  switch (m.kind()) {
    case Tm::Kind::Var:
      return os << "Var(" << m.index() << ")";
    case Tm::Kind::Lam:
      return os << "Lam(" << m.body() << ")";
    case Tm::Kind::App:
      return os << "App(" << m.fun() << ", " << m.arg() << ")";
  }
  return os;
}

inline std::ostream& operator<<(std::ostream& os, const Ctx& ctx) {
  os << "[";
  for (std::size_t k = 0; k < ctx.entries().size(); ++k) {
    if (k != 0) os << ", ";
    os << ctx.entries()[k];
  }
  return os << "]";
}

inline std::ostream& operator<<(std::ostream& os, const Statement& st) {
  return os << st.ctx << " |- " << st.left << " ~ " << st.right << " : " << st.type;
}

}  // namespace algeq
