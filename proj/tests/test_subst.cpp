#include <algeq/errors.hpp>
#include <algeq/subst.hpp>

#include <gtest/gtest.h>

#include "support/gen.hpp"
#include "support/oracle.hpp"

using namespace algeq;

namespace {

const Tp i = Tp::base();
Tp arr(Tp a, Tp b) { return Tp::arrow(std::move(a), std::move(b)); }
Tm v(std::size_t k) { return Tm::var(k); }
Tm lam(Tm b) { return Tm::lam(std::move(b)); }
Tm app(Tm f, Tm a) { return Tm::app(std::move(f), std::move(a)); }

}  // namespace

TEST(IdSubst, Examples) {
  EXPECT_TRUE(id_subst(0).empty());
  EXPECT_EQ(id_subst(2).entries(), (std::vector<Tm>{v(1), v(0)}));
  gen::Rng r(1);
  for (int n = 0; n < 500; ++n) {
    Tm m = gen::scoped_term(r, 3, 8);
    EXPECT_EQ(apply_tm(id_subst(3), m), m);
  }
}

TEST(Weaken, Examples) {
  EXPECT_EQ(weaken(id_subst(1), 1).entries(), std::vector<Tm>{v(1)});
  EXPECT_TRUE(weaken(Subst{}, 5).empty());
  gen::Rng r(2);
  for (int n = 0; n < 1000; ++n) {
    Subst s = gen::scoped_subst(r, r.below(4), 1 + r.below(3), 6);
    EXPECT_EQ(weaken(weaken(s, 1), 1).entries(), weaken(s, 2).entries());
  }
}

TEST(Extend, Examples) {
  EXPECT_EQ(extend(Subst{}, lam(v(0))).entries(), std::vector<Tm>{lam(v(0))});
  EXPECT_EQ(apply_tm(extend(id_subst(3), v(0)), v(0)), v(0));
  EXPECT_EQ(extend(id_subst(2), v(5)).at(0), v(5));
  EXPECT_EQ(extend(id_subst(2), v(5)).at(2), v(1));
}

TEST(Compose, IdentityLaws) {
  gen::Rng r(3);
  for (int n = 0; n < 1000; ++n) {
    std::size_t a = r.below(4), b = 1 + r.below(3);
    Subst s = gen::scoped_subst(r, a, b, 6);
    EXPECT_EQ(compose(id_subst(a), s).entries(), s.entries());
    EXPECT_EQ(compose(s, id_subst(b)).entries(), s.entries());
  }
}

TEST(Compose, Associative) {
  gen::Rng r(4);
  for (int n = 0; n < 1000; ++n) {
    std::size_t a = r.below(3), b = 1 + r.below(3), c = 1 + r.below(3), d = 1 + r.below(3);
    Subst s = gen::scoped_subst(r, a, b, 5), t = gen::scoped_subst(r, b, c, 5), u = gen::scoped_subst(r, c, d, 5);
    EXPECT_EQ(compose(compose(s, t), u).entries(), compose(s, compose(t, u)).entries());
  }
}

TEST(Compose, AgreesWithTwoPasses) {
  gen::Rng r(5);
  for (int n = 0; n < 10000; ++n) {
    std::size_t a = r.below(4), b = 1 + r.below(3), c = 1 + r.below(3);
    Subst s = gen::scoped_subst(r, a, b, 5), t = gen::scoped_subst(r, b, c, 5);
    Tm m = gen::scoped_term(r, a, 8);
    ASSERT_EQ(apply_tm(compose(s, t), m), apply_tm(t, apply_tm(s, m)));
  }
}

TEST(Extend, ExchangesWithComposition) {
  gen::Rng r(6);
  for (int n = 0; n < 1000; ++n) {
    std::size_t a = r.below(4), b = 1 + r.below(3), c = 1 + r.below(3);
    Subst s = gen::scoped_subst(r, a, b, 5), t = gen::scoped_subst(r, b, c, 5);
    Tm x = gen::scoped_term(r, b, 5);
    EXPECT_EQ(compose(extend(s, x), t).entries(), extend(compose(s, t), apply_tm(t, x)).entries());
  }
}

TEST(Lift, LiftingLaw) {
  gen::Rng r(7);
  for (int n = 0; n < 10000; ++n) {
    std::size_t a = r.below(4), b = 1 + r.below(3);
    Subst s = gen::scoped_subst(r, a, b, 5);
    Tm x = gen::scoped_term(r, b, 5);
    Tm body = gen::scoped_term(r, a + 1, 8);
    ASSERT_EQ(apply_tm(extend(s, x), body), apply_tm(extend(id_subst(b), x), apply_tm(lift(s), body)));
  }
}

TEST(ApplyTm, Examples) {
  EXPECT_EQ(apply_tm(Subst({v(0)}), app(lam(v(0)), v(0))), app(lam(v(0)), v(0)));
  // beta of (\x. x x) y with y = Var(3)
  Tm reduct = instantiate(app(v(0), v(0)), v(3));
  EXPECT_EQ(reduct, app(v(3), v(3)));
  EXPECT_EQ(reduct, oracle::beta(app(v(0), v(0)), v(3)));
}

TEST(ApplyTm, InstantiateAgreesWithSingleVariableSubstitution) {
  gen::Rng r(8);
  for (int n = 0; n < 10000; ++n) {
    std::size_t scope = r.below(4);
    Tm body = gen::scoped_term(r, scope + 1, 9);
    Tm arg = gen::scoped_term(r, scope, 5);
    ASSERT_EQ(instantiate(body, arg), oracle::beta(body, arg)) << body << " / " << arg;
  }
}

TEST(ApplyTm, OutOfScopeIsAContractViolation) {
  EXPECT_THROW(apply_tm(Subst{}, v(0)), ScopeError);
  EXPECT_THROW(apply_tm(id_subst(1), app(v(0), v(1))), ScopeError);
  EXPECT_NO_THROW(apply_tm(Subst{}, lam(v(0))));
}

TEST(PathSubstitutions, Recognition) {
  Ctx g({arr(i, i), i});
  EXPECT_TRUE(is_path_subst(g, id_subst(2), g));
  EXPECT_TRUE(is_path_subst(g, weaken(id_subst(2), 2), g.concat(Ctx({i, arr(i, i)}))));
  EXPECT_FALSE(is_path_subst(g, Subst({lam(v(0)), v(0)}), g));
  EXPECT_FALSE(is_path_subst(g, id_subst(1), g));
  // x:i |-> f y in f:i->i, y:i
  EXPECT_TRUE(is_path_subst(Ctx({i}), Subst({app(v(1), v(0))}), Ctx({arr(i, i), i})));
  EXPECT_FALSE(is_path_subst(Ctx({i}), Subst({v(1)}), Ctx({arr(i, i), i})));
  EXPECT_THROW(PathSubst(Ctx({i}), Subst({v(1)}), Ctx({arr(i, i), i})), InvalidPathSubst);
}

TEST(PathSubstitutions, ClosedUnderWeakeningAndComposition) {
  gen::Rng r(9);
  for (int n = 0; n < 1000; ++n) {
    Ctx a = gen::context(r, 1 + r.below(3), 2);
    Ctx extra1 = gen::context(r, r.below(3), 2);
    Ctx b = a.concat(extra1);
    PathSubst pi(a, gen::path_subst(r, a, b, extra1.size()), b);
    Ctx extra2 = gen::context(r, r.below(3), 2);
    Ctx c = b.concat(extra2);
    PathSubst rho(b, gen::path_subst(r, b, c, extra2.size()), c);

    EXPECT_TRUE(is_path_subst(a, weaken(pi.subst(), 1), b.extended(i)));
    PathSubst both = compose(pi, rho);
    EXPECT_TRUE(is_path_subst(a, both.subst(), c));
    EXPECT_TRUE(is_path_subst(a.extended(i), pi.lifted(i).subst(), b.extended(i)));
  }
  EXPECT_TRUE(PathSubst::weakening(Ctx({i}), Ctx({i, i})).subst().entries() == std::vector<Tm>{v(2)});
}
