#pragma once

// The four commands behind the algeq executable. Each returns its exit code
// and writes to the given streams, so they can be driven without a process.
//
//   eq        0 equivalent, 1 not equivalent, 2 parse/type error, 3 out of fuel
//   verify    0 valid, 1 invalid, 2 malformed
//   translate 0 translated, 1 invalid declarative derivation, 2 malformed
//   whnf      0 normalized, 2 parse error, 3 out of fuel

#include <algeq/algo.hpp>
#include <algeq/certificate.hpp>
#include <algeq/decl.hpp>
#include <algeq/errors.hpp>
#include <algeq/logrel.hpp>
#include <algeq/reduction.hpp>
#include <algeq/text.hpp>
#include <algeq/typing.hpp>

#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace algeq::cli {

enum Exit : int { Ok = 0, Negative = 1, BadInput = 2, OutOfFuel = 3 };

struct Options {
  std::optional<std::string> cert;
  std::size_t fuel = kDefaultFuel;
  bool json = false;
};

namespace detail {

inline void report(const Options& o, std::ostream& out, std::ostream& err, const std::string& result,
                   const std::string& message) {
  if (o.json) {
    out << Json{{"result", result}, {"message", message}}.dump() << "\n";
  } else {
    err << result << ": " << message << "\n";
  }
}

inline bool write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  f << contents;
  return static_cast<bool>(f);
}

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace detail

inline int eq(const std::string& ctx_text, const std::string& left, const std::string& right,
              const std::string& type_text, const Options& o, std::ostream& out, std::ostream& err) {
  std::optional<Statement> parsed;
  try {
    NamedCtx c = parse_ctx(ctx_text);
    parsed = Statement{c.ctx, parse_term(left, c.names), parse_term(right, c.names), parse_type(type_text)};
  } catch (const ParseError& e) {
    detail::report(o, out, err, "parse-error", e.what());
    return BadInput;
  } catch (const UnboundVariable& e) {
    detail::report(o, out, err, "parse-error", e.what());
    return BadInput;
  }
  const Statement& st = *parsed;
  if (!type_check(st.ctx, st.left, st.type)) {
    detail::report(o, out, err, "type-error", "left term does not have type " + print_type(st.type));
    return BadInput;
  }
  if (!type_check(st.ctx, st.right, st.type)) {
    detail::report(o, out, err, "type-error", "right term does not have type " + print_type(st.type));
    return BadInput;
  }

  std::optional<TmEqDeriv> d;
  try {
    d = decide_tm_eq(st.ctx, st.left, st.right, st.type, o.fuel);
  } catch (const FuelExhausted& e) {
    detail::report(o, out, err, "out-of-fuel", e.what());
    return OutOfFuel;
  }
  if (!d) {
    if (o.json) {
      out << Json{{"result", "not-equivalent"}}.dump() << "\n";
    } else {
      out << "not equivalent\n";
    }
    return Negative;
  }

  Json cert = to_json(st, *d);
  if (o.cert && !detail::write_file(*o.cert, dump(cert))) {
    detail::report(o, out, err, "io-error", "cannot write " + *o.cert);
    return BadInput;
  }
  if (o.json) {
    out << Json{{"result", "equivalent"}, {"certificate", cert}}.dump() << "\n";
  } else {
    out << "equivalent\n";
  }
  return Ok;
}

inline int verify(const std::string& path, const Options& o, std::ostream& out, std::ostream& err) {
  auto contents = detail::read_file(path);
  if (!contents) {
    detail::report(o, out, err, "malformed", "cannot read " + path);
    return BadInput;
  }
  std::optional<ParsedCertificate> parsed;
  try {
    parsed = read_certificate(parse_json(*contents));
  } catch (const MalformedCertificate& e) {
    detail::report(o, out, err, "malformed", e.what());
    return BadInput;
  }
  const ParsedCertificate& c = *parsed;

  std::string reason;
  if (!check_tm_eq(c.statement, c.derivation)) {
    reason = "derivation does not prove its root statement";
  } else if (certificate_statements(c.statement, c.derivation) != c.statements) {
    reason = "a node's stmt differs from the judgment it derives";
  }
  if (!reason.empty()) {
    if (o.json) {
      out << Json{{"result", "invalid"}, {"message", reason}}.dump() << "\n";
    } else {
      out << "invalid: " << reason << "\n";
    }
    return Negative;
  }
  if (o.json) {
    out << Json{{"result", "valid"}}.dump() << "\n";
  } else {
    out << "valid\n";
  }
  return Ok;
}

inline int translate(const std::string& path, const Options& o, std::ostream& out, std::ostream& err) {
  auto contents = detail::read_file(path);
  if (!contents) {
    detail::report(o, out, err, "malformed", "cannot read " + path);
    return BadInput;
  }
  std::optional<DeclDeriv> parsed;
  try {
    parsed = read_decl(parse_json(*contents));
  } catch (const MalformedCertificate& e) {
    detail::report(o, out, err, "malformed", e.what());
    return BadInput;
  }
  const DeclDeriv& d = *parsed;
  if (!check_decl(d)) {
    detail::report(o, out, err, "invalid", "not a valid declarative derivation");
    return Negative;
  }

  const Statement& st = d.conclusion();
  Json cert = to_json(st, completeness(st.ctx, d));
  if (o.cert) {
    if (!detail::write_file(*o.cert, dump(cert))) {
      detail::report(o, out, err, "io-error", "cannot write " + *o.cert);
      return BadInput;
    }
    if (o.json) {
      out << Json{{"result", "translated"}, {"certificate", cert}}.dump() << "\n";
    } else {
      out << "translated\n";
    }
  } else {
    out << (o.json ? Json{{"result", "translated"}, {"certificate", cert}}.dump() + "\n" : dump(cert));
  }
  return Ok;
}

/// "beta" for a head redex, "app-left^k beta" for one k levels down the spine.
inline std::string describe(Step s) {
  return s.depth == 0 ? "beta" : "app-left^" + std::to_string(s.depth) + " beta";
}

inline int whnf(const std::string& ctx_text, const std::string& term, const Options& o, std::ostream& out,
                std::ostream& err) {
  NamedCtx c;
  std::optional<Tm> m;
  try {
    c = parse_ctx(ctx_text);
    m = parse_term(term, c.names);
  } catch (const ParseError& e) {
    detail::report(o, out, err, "parse-error", e.what());
    return BadInput;
  } catch (const UnboundVariable& e) {
    detail::report(o, out, err, "parse-error", e.what());
    return BadInput;
  }
  try {
    auto [nf, trace] = algeq::whnf(*m, o.fuel);
    if (o.json) {
      out << Json{{"normal_form", print_term(nf, c.names)}, {"trace", trace_json(trace)}}.dump() << "\n";
    } else {
      out << print_term(nf, c.names) << "\n";
      for (Step s : trace) out << describe(s) << "\n";
    }
  } catch (const FuelExhausted& e) {
    detail::report(o, out, err, "out-of-fuel", e.what());
    return OutOfFuel;
  }
  return Ok;
}

}  // namespace algeq::cli
