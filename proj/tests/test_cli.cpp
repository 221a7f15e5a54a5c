#include <algeq/cli.hpp>
#include <algeq/text.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "support/gen.hpp"
#include "support/golden.hpp"

using namespace algeq;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome eq(const std::string& ctx, const std::string& l, const std::string& r, const std::string& t,
       cli::Options o = {}) {
  std::ostringstream out, err;
  int code = cli::eq(ctx, l, r, t, o, out, err);
  return {code, out.str(), err.str()};
}

Outcome verify(const std::string& path, cli::Options o = {}) {
  std::ostringstream out, err;
  int code = cli::verify(path, o, out, err);
  return {code, out.str(), err.str()};
}

Outcome translate(const std::string& path, cli::Options o = {}) {
  std::ostringstream out, err;
  int code = cli::translate(path, o, out, err);
  return {code, out.str(), err.str()};
}

Outcome whnf(const std::string& ctx, const std::string& m, cli::Options o = {}) {
  std::ostringstream out, err;
  int code = cli::whnf(ctx, m, o, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("algeq_test_" + name)).string();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

}  // namespace

TEST(Eq, ExitCodes) {
  EXPECT_EQ(eq("", "\\x. x", "\\y. (\\z. z) y", "i -> i").code, 0);
  EXPECT_EQ(eq("", "\\x. \\y. x", "\\x. \\y. y", "i -> i -> i").code, 1);
  EXPECT_EQ(eq("", "\\x. x", "y", "i -> i").code, 2);
  EXPECT_EQ(eq("", "\\x. x", "\\x. x", "i ->").code, 2);
  EXPECT_EQ(eq("x:i", "x x", "x", "i").code, 2);
  EXPECT_EQ(eq("", "\\x. x", "\\x. x", "i").code, 2);

  cli::Options o;
  o.fuel = 0;
  EXPECT_EQ(eq("x:i", "(\\y. y) x", "x", "i", o).code, 3);
  o.fuel = 1;
  EXPECT_EQ(eq("x:i", "(\\y. y) x", "x", "i", o).code, 0);
}

TEST(Eq, Messages) {
  Outcome r = eq("", "\\x. x", "y", "i -> i");
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("parse-error"), std::string::npos);

  cli::Options o;
  o.json = true;
  Outcome j = eq("", "\\x. x", "y", "i -> i", o);
  Json parsed = Json::parse(j.out);
  EXPECT_EQ(parsed["result"], "parse-error");
  EXPECT_TRUE(parsed.contains("message"));

  EXPECT_EQ(eq("", "\\x. \\y. x", "\\x. \\y. y", "i -> i -> i", o).out, "{\"result\":\"not-equivalent\"}\n");
  EXPECT_EQ(eq("x:i", "x", "x", "i").out, "equivalent\n");
}

TEST(Eq, CertificatesAlwaysVerify) {
  gen::Rng r(61);
  std::string path = temp_path("cert.json");
  std::size_t tried = 0;
  for (int n = 0; n < 150; ++n) {
    Ctx ctx = gen::context(r, r.below(3), 2);
    Tp t = gen::type(r, 2);
    auto p = gen::equal_pair(r, ctx, t, 6);
    if (!p) continue;
    auto names = canonical_names(ctx.size());
    cli::Options o;
    o.cert = path;
    Outcome e = eq(print_ctx(ctx, names), print_term(p->first, names), print_term(p->second, names), print_type(t), o);
    ASSERT_EQ(e.code, 0) << e.err;
    Outcome v = verify(path);
    ASSERT_EQ(v.code, 0) << v.out;
    EXPECT_EQ(v.out, "valid\n");
    ++tried;
  }
  EXPECT_GT(tried, 50u);
  std::remove(path.c_str());
}

TEST(Verify, MutationsAreInvalidOrMalformed) {
  std::string path = temp_path("mut.json");
  cli::Options o;
  o.cert = path;
  ASSERT_EQ(eq("f:i->i", "f", "\\y. f y", "i -> i", o).code, 0);
  std::string good = *cli::detail::read_file(path);

  write(path, good);
  EXPECT_EQ(verify(path).code, 0);

  std::string dropped = good;
  dropped.replace(dropped.find("\"right_trace\":[{\"depth\":0}]"), 27, "\"right_trace\":[]");
  write(path, dropped);
  EXPECT_EQ(verify(path).code, 1);

  std::string relabeled = good;
  relabeled.replace(relabeled.find("\"type\":\"i -> i\""), 15, "\"type\":\"i\"");
  write(path, relabeled);
  EXPECT_EQ(verify(path).code, 1);

  write(path, good.substr(0, good.size() / 2));
  EXPECT_EQ(verify(path).code, 2);
  write(path, "[]");
  EXPECT_EQ(verify(path).code, 2);
  std::remove(path.c_str());
  EXPECT_EQ(verify(path).code, 2);
}

TEST(Translate, WritesAVerifiableCertificate) {
  std::string src = temp_path("decl.json");
  std::string dst = temp_path("decl_cert.json");
  Ctx f({Tp::arrow(Tp::base(), Tp::base())});
  write(src, dump(to_json(eta_expand_decl(f, Tm::var(0), f.at(0)))));

  cli::Options o;
  o.cert = dst;
  Outcome t = translate(src, o);
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.out, "translated\n");
  EXPECT_EQ(verify(dst).code, 0);

  // Without --cert the certificate goes to stdout.
  Outcome plain = translate(src);
  EXPECT_EQ(plain.out, *cli::detail::read_file(dst));

  write(src, "{\"rule\":\"dec-var\"}");
  EXPECT_EQ(translate(src).code, 2);
  std::remove(src.c_str());
  std::remove(dst.c_str());
}

TEST(Whnf, OutputForms) {
  Outcome r = whnf("f:i->i->i, y:i", "(\\x. f x x) y y");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "f y y y\napp-left^1 beta\n");

  cli::Options o;
  o.json = true;
  EXPECT_EQ(whnf("z:i", "(\\x. x) z", o).out, "{\"normal_form\":\"z\",\"trace\":[{\"depth\":0}]}\n");
  EXPECT_EQ(whnf("", "y").code, 2);
  o.fuel = 10;
  EXPECT_EQ(whnf("", "(\\x. x x) (\\x. x x)", o).code, 3);
}

TEST(Binary, GoldenTranscripts) {
  for (const golden::Case& c : golden::cases()) {
    EXPECT_EQ(golden::run(ALGEQ_CLI, c.args), golden::expected(c.name)) << c.name;
  }
}

TEST(Binary, UsageErrors) {
  EXPECT_EQ(golden::run(ALGEQ_CLI, {}), "exit 2\n");
  EXPECT_EQ(golden::run(ALGEQ_CLI, {"eq", "x:i"}), "exit 2\n");
  EXPECT_EQ(golden::run(ALGEQ_CLI, {"whnf", "", "\\x. x", "--fuel", "-1"}), "exit 2\n");
}
