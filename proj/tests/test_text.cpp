#include <algeq/errors.hpp>
#include <algeq/text.hpp>

#include <gtest/gtest.h>

#include "support/gen.hpp"

using namespace algeq;

namespace {

const Tp i = Tp::base();
Tp arr(Tp a, Tp b) { return Tp::arrow(std::move(a), std::move(b)); }
Tm v(std::size_t k) { return Tm::var(k); }
Tm lam(Tm b) { return Tm::lam(std::move(b)); }
Tm app(Tm f, Tm a) { return Tm::app(std::move(f), std::move(a)); }

}  // namespace

TEST(ParseType, Associativity) {
  EXPECT_EQ(parse_type("i"), i);
  EXPECT_EQ(parse_type("i -> i -> i"), arr(i, arr(i, i)));
  EXPECT_EQ(parse_type("(i -> i) -> i"), arr(arr(i, i), i));
  EXPECT_EQ(parse_type("((i))->i"), arr(i, i));
}

TEST(ParseTerm, Examples) {
  EXPECT_EQ(parse_term("\\x. x"), lam(v(0)));
  EXPECT_EQ(parse_term("\xce\xbb" "x. x"), lam(v(0)));
  EXPECT_EQ(parse_term("\\y. f y", {"f"}), lam(app(v(1), v(0))));
  EXPECT_EQ(parse_term("f x y", {"f", "x", "y"}), app(app(v(2), v(1)), v(0)));
  EXPECT_EQ(parse_term("f (x y)", {"f", "x", "y"}), app(v(2), app(v(1), v(0))));
  EXPECT_EQ(parse_term("f \\z. z", {"f"}), app(v(0), lam(v(0))));
  EXPECT_EQ(parse_term("(\\x. x) y", {"y"}), app(lam(v(0)), v(0)));
}

TEST(ParseTerm, ShadowingResolvesInnermost) {
  EXPECT_EQ(parse_term("\\x. \\x. x"), lam(lam(v(0))));
  EXPECT_EQ(parse_term("\\x. x", {"x"}), lam(v(0)));
  EXPECT_EQ(parse_term("x", {"x", "x"}), v(0));
}

TEST(ParseCtx, Examples) {
  NamedCtx c = parse_ctx("f : i -> i, x : i");
  EXPECT_EQ(c.ctx, Ctx({arr(i, i), i}));
  EXPECT_EQ(c.names, (std::vector<std::string>{"f", "x"}));
  EXPECT_EQ(parse_ctx("").ctx.size(), 0u);
  EXPECT_EQ(parse_ctx("   ").ctx.size(), 0u);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_term("y"), UnboundVariable);
  try {
    parse_term("\\x.\n  x )");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 5u);
  }
  try {
    parse_type("i ->");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 5u);
  }
  EXPECT_THROW(parse_term(""), ParseError);
  EXPECT_THROW(parse_term("\\. x"), ParseError);
  EXPECT_THROW(parse_ctx("x i"), ParseError);
  EXPECT_THROW(parse_type("j"), ParseError);
  EXPECT_THROW(parse_term("x # y", {"x", "y"}), ParseError);
}

TEST(Print, Examples) {
  EXPECT_EQ(print_type(arr(arr(i, i), arr(i, i))), "(i -> i) -> i -> i");
  EXPECT_EQ(print_term(lam(app(v(1), v(0))), {"f"}), "\\x1. f x1");
  EXPECT_EQ(print_term(app(lam(v(0)), v(0)), {"y"}), "(\\x1. x1) y");
  EXPECT_EQ(print_term(app(v(0), app(v(0), v(0))), {"f"}), "f (f f)");
  // A binder name that would capture a context name gets primed.
  EXPECT_EQ(print_term(lam(v(1)), {"x1"}), "\\x1'. x1");
  EXPECT_EQ(print_ctx(Ctx({i, arr(i, i)})), "x0:i, x1:i -> i");
  EXPECT_THROW(print_term(v(1), {"a"}), ScopeError);
}

TEST(Print, RoundTripsThroughTheParser) {
  gen::Rng r(41);
  for (int n = 0; n < 10000; ++n) {
    std::size_t scope = r.below(4);
    Tm m = gen::scoped_term(r, scope, 12);
    auto names = canonical_names(scope);
    std::string text = print_term(m, names);
    ASSERT_EQ(parse_term(text, names), m) << text;

    Tp t = gen::type(r, 3);
    ASSERT_EQ(parse_type(print_type(t)), t);
  }
}

TEST(Print, RoundTripsWithUserNames) {
  gen::Rng r(42);
  std::vector<std::string> names{"f", "x1", "g"};
  for (int n = 0; n < 2000; ++n) {
    Tm m = gen::scoped_term(r, 3, 10);
    std::string text = print_term(m, names);
    ASSERT_EQ(parse_term(text, names), m) << text;
  }
  Ctx c = gen::context(r, 3, 2);
  EXPECT_EQ(parse_ctx(print_ctx(c)).ctx, c);
}
