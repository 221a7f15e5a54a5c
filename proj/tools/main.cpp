#include <algeq/cli.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Algorithmic equality for the simply typed lambda calculus"};
  app.require_subcommand(1);

  algeq::cli::Options opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--cert", opts.cert, "Write the certificate to this path");
    sub->add_option("--fuel", opts.fuel, "Step bound for each weak head normalization")->check(CLI::NonNegativeNumber);
    sub->add_flag("--json", opts.json, "Machine-readable output");
  };

  std::string ctx, left, right, type, file, term;

  auto* eq = app.add_subcommand("eq", "Decide ctx |- M <=> N : T");
  eq->add_option("ctx", ctx, "Context, e.g. \"f:i->i, x:i\"")->required();
  eq->add_option("left", left)->required();
  eq->add_option("right", right)->required();
  eq->add_option("type", type)->required();
  add_common(eq);

  auto* verify = app.add_subcommand("verify", "Check a certificate");
  verify->add_option("file", file)->required();
  add_common(verify);

  auto* translate = app.add_subcommand("translate", "Turn a declarative derivation into a certificate");
  translate->add_option("file", file)->required();
  add_common(translate);

  auto* whnf = app.add_subcommand("whnf", "Weak head normalize a term");
  whnf->add_option("ctx", ctx)->required();
  whnf->add_option("term", term)->required();
  add_common(whnf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : algeq::cli::BadInput;
  }

  if (eq->parsed()) return algeq::cli::eq(ctx, left, right, type, opts, std::cout, std::cerr);
  if (verify->parsed()) return algeq::cli::verify(file, opts, std::cout, std::cerr);
  if (translate->parsed()) return algeq::cli::translate(file, opts, std::cout, std::cerr);
  return algeq::cli::whnf(ctx, term, opts, std::cout, std::cerr);
}
