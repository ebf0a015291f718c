#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dlpq/dlpq.hpp"
#include "verify.hpp"

namespace dlpq::cli {

enum ExitCode { kOk = 0, kDomainError = 1, kUsageError = 2 };

struct Config {
  std::string command;
  std::string signature;
  std::string backend;
  bool json = false;
  std::string conjugate;
  std::string method;
  std::string format = "csv";
  std::string suite = "all";
  Tolerance tol;
  std::string input;
};

// Raised for malformed flags that CLI11 itself accepts.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Signature parse_signature(const std::string &text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw UsageError("--signature must be 'p,q', got '" + text + "'");
  auto read = [&](std::string_view part) {
    int v = -1;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || end != part.data() + part.size() || part.empty())
      throw UsageError("--signature must be 'p,q', got '" + text + "'");
    return v;
  };
  const std::string_view view(text);
  return Signature(read(view.substr(0, comma)), read(view.substr(comma + 1)));
}

inline ConjMask parse_conjugation(const std::string &text, const Signature &sig) {
  ConjMask mask{};
  if (text.empty())
    return mask;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int g = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), g);
    if (ec != std::errc{} || end != item.data() + item.size())
      throw UsageError("--conjugate takes generator indices like '1,3', got '" + text + "'");
    if (g < 1 || g > sig.n())
      throw Error(ErrorCode::GeneratorOutOfRange,
                  "conjugation generator " + std::to_string(g) + " exceeds n = " +
                      std::to_string(sig.n()));
    mask = mask ^ ConjMask(BladeMask{1} << (g - 1));
  }
  return mask;
}

template <Scalar S> Element<S> read_input(const std::string &input, const Signature &sig) {
  const auto first = input.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && input[first] == '[') {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::parse_error &e) {
      throw Error(ErrorCode::SyntaxError, std::string("coefficient array: ") + e.what());
    }
    return element_from_json<S>(j, sig);
  }
  return parse_element<S>(input, sig);
}

// Element text for humans; the blade grammar stops at e9, so larger
// signatures print the coefficient array.
template <Scalar S> std::string element_text(const Element<S> &u) {
  if (u.signature().n() > 9)
    return element_to_json(u).dump();
  return format_element(u);
}

inline std::string mask_text(ConjMask mask) {
  std::string out = "{";
  bool first = true;
  for (int g = 1; mask.bits >> (g - 1); ++g)
    if (mask.bits >> (g - 1) & 1U) {
      out += (first ? "" : ",") + std::to_string(g);
      first = false;
    }
  return out + "}";
}

struct Result {
  json value;
  std::string text;
  std::vector<std::string> diagnostics;
  int exit_code = kOk;
};

template <Scalar S> S determinant_by(const Element<S> &u, const std::string &method, const Tolerance &tol) {
  if (method.empty() || method == "recursive")
    return det_recursive(u);
  if (method == "full")
    return det_full_product(u, tol);
  if (method == "fl")
    return charpoly_fl(u).det;
  if (method == "matrix")
    return oracle_det(u);
  throw UsageError("det --method must be recursive, full, fl or matrix");
}

template <Scalar S>
CharPoly<S> charpoly_by(const Element<S> &u, const std::string &method, const Tolerance &tol) {
  if (method.empty() || method == "symmetric")
    return charpoly_symmetric(u, tol);
  if (method == "fl")
    return charpoly_fl(u).charpoly;
  if (method == "matrix")
    return oracle_charpoly(u);
  throw UsageError("charpoly --method must be symmetric, fl or matrix");
}

template <Scalar S> Result execute(const Config &cfg, const Signature &sig) {
  auto u = read_input<S>(cfg.input, sig);
  const ConjMask conj = parse_conjugation(cfg.conjugate, sig);
  if (conj.bits != 0)
    u = conjugate(u, conj);

  Result r;
  const std::string &cmd = cfg.command;
  if (cmd == "eval") {
    r.value = element_to_json(u);
    r.text = element_text(u);
  } else if (cmd == "det") {
    const S det = determinant_by(u, cfg.method, cfg.tol);
    r.value = scalar_to_json(det);
    r.text = ScalarTraits<S>::to_string(det);
  } else if (cmd == "trace") {
    const S tr = trace(u);
    r.value = scalar_to_json(tr);
    r.text = ScalarTraits<S>::to_string(tr);
  } else if (cmd == "charpoly") {
    const auto poly = charpoly_by(u, cfg.method, cfg.tol);
    r.value = charpoly_to_json(poly);
    r.text = poly.to_string();
  } else if (cmd == "adjoint") {
    const auto adj = adjoint_by_elimination(u);
    r.value = element_to_json(adj);
    r.text = element_text(adj);
  } else if (cmd == "inverse") {
    try {
      const auto inv = inverse(u, cfg.tol);
      r.value = element_to_json(inv);
      r.text = element_text(inv);
    } catch (const NotInvertibleError &e) {
      r.diagnostics.push_back(e.what());
      if (!u.is_zero()) {
        const auto report = classify(u, cfg.tol);
        if (report.witness)
          r.diagnostics.push_back("hint: zero divisor, U*V = 0 for V = " +
                                  element_text(*report.witness) + " (see `dlpq witness`)");
        else
          r.diagnostics.push_back("hint: run `dlpq witness` for a zero-divisor report");
      }
      r.value = nullptr;
      r.exit_code = kDomainError;
    }
  } else if (cmd == "matrix") {
    const auto m = represent(u);
    r.value = matrix_to_json(m);
    if (cfg.format == "json")
      r.text = r.value.dump();
    else if (cfg.format == "csv")
      r.text = matrix_to_csv(m);
    else
      throw UsageError("matrix --format must be csv or json");
    if (!r.text.empty() && r.text.back() == '\n')
      r.text.pop_back();
  } else if (cmd == "witness") {
    const auto report = classify(u, cfg.tol);
    r.value = witness_report_to_json(report);
    std::ostringstream out;
    out << "unit: " << (report.is_unit ? "yes" : "no") << '\n'
        << "det: " << ScalarTraits<S>::to_string(report.det) << '\n'
        << "witness: " << (report.witness ? element_text(*report.witness) : "none") << '\n'
        << "path:";
    for (auto mask : report.witness_path)
      out << ' ' << mask_text(mask);
    out << '\n' << "method: " << witness_method_name(report.method);
    r.text = out.str();
    if (!report.is_unit && !report.witness) {
      r.diagnostics.push_back("no witness verified within tolerance");
      r.exit_code = kDomainError;
    }
  } else if (cmd == "verify") {
    const auto checks = run_suite(u, cfg.suite, cfg.tol);
    r.value = checks_to_json(checks);
    r.text = checks_to_text(checks);
    if (!all_passed(checks))
      r.exit_code = kDomainError;
  }
  return r;
}

inline int exit_code_for(ErrorCode code) {
  switch (code) {
  case ErrorCode::SyntaxError:
  case ErrorCode::BladeError:
  case ErrorCode::InvalidSignature:
  case ErrorCode::InvalidScalar:
  case ErrorCode::MaskOutOfRange:
    return kUsageError;
  default:
    return kDomainError;
  }
}

inline void add_common_options(CLI::App &sub, Config &cfg) {
  sub.add_option("-s,--signature", cfg.signature, "signature as p,q (p generators square to +1, q to -1)")
      ->required();
  sub.add_option("-b,--backend", cfg.backend,
                 "scalar backend: float64 or rational (default: $DLPQ_BACKEND, else float64)");
  sub.add_flag("--json", cfg.json, "emit one JSON object {command, signature, input, result, diagnostics}");
  sub.add_option("-c,--conjugate", cfg.conjugate,
                 "apply the conjugation negating the listed generators first, e.g. 1,3");
  sub.add_option("--singular-tol", cfg.tol.singular, "float singularity threshold")
      ->capture_default_str();
  sub.add_option("--leak-tol", cfg.tol.grade_leak, "float grade-leak tolerance")->capture_default_str();
  sub.add_option("--residual-tol", cfg.tol.witness_residual, "float witness residual tolerance")
      ->capture_default_str();
  sub.add_option("input", cfg.input,
                 "element expression such as \"1 + 2*e1 - 1/2*e12\", or a JSON coefficient array "
                 "ordered by blade mask 0..2^n-1 (bit i-1 set means e_i present)")
      ->required();
}

// `args` excludes the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
               const char *env_backend) {
  CLI::App app{"Arithmetic, determinants, characteristic polynomials, inverses and "
               "zero-divisor witnesses in DL(p,q).\n"
               "Use `--` before an input that starts with '-'."};
  app.name("dlpq");
  app.require_subcommand(1);
  Config cfg;

  const std::vector<std::pair<const char *, const char *>> commands = {
      {"eval", "evaluate and print the element in canonical form"},
      {"det", "determinant"},
      {"trace", "trace"},
      {"charpoly", "characteristic polynomial, coefficients c_0..c_N"},
      {"adjoint", "adjoint (product of the non-trivial conjugates)"},
      {"inverse", "inverse; exit 1 with a witness hint when not invertible"},
      {"matrix", "matrix representation"},
      {"witness", "unit / zero-divisor classification with a verified witness"},
      {"verify", "run property suites on the element"},
  };
  for (const auto &[name, help] : commands) {
    auto *sub = app.add_subcommand(name, help);
    add_common_options(*sub, cfg);
    const std::string cmd = name;
    if (cmd == "det")
      sub->add_option("-m,--method", cfg.method, "recursive (default), full, fl or matrix");
    if (cmd == "charpoly")
      sub->add_option("-m,--method", cfg.method, "symmetric (default), fl or matrix");
    if (cmd == "matrix")
      sub->add_option("-f,--format", cfg.format, "csv (default) or json");
    if (cmd == "verify")
      sub->add_option("--suite", cfg.suite, "conjugation, det, charpoly, inverse or all")
          ->capture_default_str();
    sub->final_callback([&cfg, cmd] { cfg.command = cmd; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  json sig_json = nullptr;
  Result result;
  try {
    if (cfg.backend.empty())
      cfg.backend = env_backend && *env_backend ? env_backend : "float64";
    if (cfg.backend != "float64" && cfg.backend != "rational")
      throw UsageError("backend must be float64 or rational, got '" + cfg.backend + "'");
    if (cfg.command == "verify" && cfg.suite != "conjugation" && cfg.suite != "det" &&
        cfg.suite != "charpoly" && cfg.suite != "inverse" && cfg.suite != "all")
      throw UsageError("--suite must be conjugation, det, charpoly, inverse or all");
    const Signature sig = parse_signature(cfg.signature);
    sig_json = json{{"p", sig.p()}, {"q", sig.q()}};
    result = cfg.backend == "rational" ? execute<Rational>(cfg, sig) : execute<double>(cfg, sig);
  } catch (const UsageError &e) {
    result = Result{nullptr, {}, {std::string("USAGE: ") + e.what()}, kUsageError};
  } catch (const Error &e) {
    result = Result{nullptr, {}, {e.what()}, exit_code_for(e.code())};
  }

  for (const auto &d : result.diagnostics)
    err << d << '\n';
  if (cfg.json) {
    json diagnostics = json::array();
    for (const auto &d : result.diagnostics)
      diagnostics.push_back(d);
    json doc = {{"command", cfg.command},
                {"signature", sig_json},
                {"input", cfg.input},
                {"result", result.value},
                {"diagnostics", diagnostics}};
    out << doc.dump() << '\n';
  } else if (!result.text.empty()) {
    out << result.text << '\n';
  }
  return result.exit_code;
}

} // namespace dlpq::cli
