// exactsos: prove, verify and export positivity certificates.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "exactsos/certificate.hpp"
#include "exactsos/newton.hpp"
#include "exactsos/provers.hpp"
#include "exactsos/sdpa.hpp"

namespace fs = std::filesystem;
using namespace exactsos;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNotInCone = 2, kExhausted = 3, kVerifyFailed = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

/// A file path if such a file exists, an inline expression otherwise.
std::string text_or_file(const std::string& arg) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

Polynomial load_poly(const std::string& arg, std::size_t nvars) { return parse_polynomial(text_or_file(arg), nvars); }

/// One constraint per line (file) or ';'-separated (inline); '#' starts a comment.
std::vector<Polynomial> load_constraints(const std::string& arg, std::size_t nvars) {
  std::string text = text_or_file(arg);
  for (char& c : text)
    if (c == ';') c = '\n';
  std::vector<Polynomial> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_polynomial(line, nvars));
  }
  if (out.empty()) throw UsageError("no constraints given");
  return out;
}

/// "p/q", "p" or "2^e".
Rational parse_rational_arg(const std::string& s, const char* what) {
  try {
    if (auto caret = s.find('^'); caret != std::string::npos) {
      if (s.substr(0, caret) != "2") throw Error("only powers of two are accepted");
      return pow2(std::stol(s.substr(caret + 1)));
    }
    Rational q;
    if (q.set_str(s, 10) != 0) throw Error("not a rational");
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    throw UsageError(std::string("bad value for ") + what + ": '" + s + "'");
  }
}

struct ProblemArgs {
  std::string mode = "intsos";
  std::string poly;
  std::size_t vars = 0;
  std::string constraints;
};

struct ProveArgs {
  ProblemArgs p;
  std::string eps, R;
  long delta = 0, delta_c = 0;
  int max_eps_halvings = -1, max_escalations = -1;
  int k_max = -1, D_max = -1;
  std::string out, report;
};

void add_problem_options(CLI::App* cmd, ProblemArgs& a) {
  cmd->add_option("--mode", a.mode, "intsos | polya | putinar")
      ->check(CLI::IsMember({"intsos", "polya", "putinar"}));
  cmd->add_option("--poly", a.poly, "polynomial expression or file")->required();
  cmd->add_option("--vars", a.vars, "number of variables x1..xn")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--constraints", a.constraints, "constraints g_j >= 0: file, or inline separated by ';'");
}

ProverConfig config_from(const ProveArgs& a) {
  ProverConfig cfg;
  if (!a.eps.empty()) cfg.eps0 = parse_rational_arg(a.eps, "--eps");
  if (!a.R.empty()) cfg.R = parse_rational_arg(a.R, "--R");
  if (a.delta > 0) cfg.delta = a.delta;
  if (a.delta_c > 0) cfg.delta_c = a.delta_c;
  if (a.max_eps_halvings >= 0) cfg.max_eps_halvings = a.max_eps_halvings;
  if (a.max_escalations >= 0) cfg.max_escalations = a.max_escalations;
  if (a.k_max >= 0) cfg.k_max = static_cast<std::uint32_t>(a.k_max);
  if (a.D_max >= 0) cfg.D_max = static_cast<std::uint32_t>(a.D_max);
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

json stats_json(const RunStats& st, const std::string& mode) {
  json j;
  j["timings_ms"] = {{"polytope", st.polytope_ms},
                     {"sdp", st.sdp_ms},
                     {"cholesky", st.cholesky_ms},
                     {"absorb", st.absorb_ms},
                     {"verify", st.verify_ms}};
  if (!st.loop.empty()) {
    json fin = {{"eps", to_fraction_string(st.final_eps)},
                {"delta", st.final_delta},
                {"R", to_fraction_string(st.final_R)},
                {"delta_c", st.final_delta_c}};
    if (mode == "polya") fin["D"] = st.final_degree;
    if (mode == "putinar") {
      fin["k"] = st.final_degree;
      fin["D"] = 2 * st.final_degree;
    }
    j["final"] = fin;
  }
  j["sdp_calls"] = st.sdp_calls;
  j["eps_halvings"] = st.eps_halvings;
  j["escalations"] = st.escalations;
  return j;
}

void emit_report(const std::string& dest, const json& report) {
  if (dest.empty()) return;
  if (dest == "-")
    std::cout << report.dump(2) << "\n";
  else
    write_file(dest, report.dump(2) + "\n");
}

int cmd_prove(const ProveArgs& a) {
  const ProverConfig cfg = config_from(a);
  const Polynomial f = load_poly(a.p.poly, a.p.vars);
  RunStats st;
  json report;
  report["mode"] = a.p.mode;
  int code = kOk;
  try {
    Certificate cert;
    if (a.p.mode == "intsos") {
      cert = intsos(f, cfg, &st);
    } else if (a.p.mode == "polya") {
      cert = polyasos(f, cfg, &st);
    } else {
      if (a.p.constraints.empty()) throw UsageError("--mode putinar needs --constraints");
      cert = putinarsos(f, SemialgebraicSet{load_constraints(a.p.constraints, a.p.vars)}, cfg, &st);
    }
    report["status"] = "ok";
    report["bitsize"] = bitsize(cert).value;
    if (!a.out.empty()) {
      write_file(a.out, serialize(cert));
      report["certificate"] = a.out;
    } else {
      report["certificate"] = nullptr;
    }
  } catch (const ProverError& e) {
    report["status"] = to_string(e.kind());
    report["message"] = e.what();
    report["certificate"] = nullptr;
    switch (e.kind()) {
      case ProverError::Kind::NotInInteriorSuspected: code = kNotInCone; break;
      case ProverError::Kind::PrecisionExhausted:
      case ProverError::Kind::DegreeCapExhausted: code = kExhausted; break;
      default: code = kUsage;
    }
    std::cerr << "exactsos: " << e.what() << "\n";
  }
  json s = stats_json(st, a.p.mode);
  report.update(s);
  emit_report(a.report, report);
  return code;
}

int cmd_verify(const std::string& cert_path, const std::string& poly, std::size_t vars, const std::string& report) {
  const Certificate cert = deserialize(read_file(cert_path));
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport r = verify(cert);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  bool target_ok = true;
  if (!poly.empty()) {
    const Polynomial& target = std::visit([](const auto& c) -> const Polynomial& { return c.target; }, cert);
    if (vars == 0) vars = target.nvars();
    target_ok = target.nvars() == vars && target == load_poly(poly, vars);
  }
  json j;
  j["status"] = r.pass && target_ok ? "ok" : "verification_failed";
  j["identity_ok"] = r.identity_ok;
  j["weights_nonnegative"] = r.weights_nonnegative;
  j["degree_ok"] = r.degree_ok;
  j["aux_ok"] = r.aux_ok;
  j["target_matches"] = target_ok;
  j["residual_terms"] = r.residual_support.size();
  j["residual_bitsize"] = r.residual_bitsize.value;
  j["bitsize"] = bitsize(cert).value;
  j["timings_ms"] = {{"verify", ms}};
  emit_report(report, j);
  if (!(r.pass && target_ok)) {
    for (const auto& p : r.problems) std::cerr << "exactsos: " << p << "\n";
    if (!target_ok) std::cerr << "exactsos: certificate target differs from --poly\n";
    return kVerifyFailed;
  }
  return kOk;
}

struct ExportArgs {
  ProblemArgs p;
  std::string eps = "0";
  unsigned polya_degree = 0;
  int k = -1;
  std::string format = "sdpa-sparse";
  std::string out;
};

int cmd_export(const ExportArgs& a) {
  const Polynomial f = load_poly(a.p.poly, a.p.vars);
  const Rational eps = parse_rational_arg(a.eps, "--eps");
  if (eps < 0) throw UsageError("--eps must be nonnegative");
  std::string text;
  if (a.p.mode == "putinar") {
    if (a.p.constraints.empty()) throw UsageError("--mode putinar needs --constraints");
    const auto g = load_constraints(a.p.constraints, a.p.vars);
    std::uint32_t k = static_cast<std::uint32_t>((f.degree() + 1) / 2);
    for (const auto& c : g) k = std::max(k, static_cast<std::uint32_t>((c.degree() + 1) / 2));
    k = std::max<std::uint32_t>(k, 1);
    if (a.k >= 0) k = static_cast<std::uint32_t>(a.k);
    const HalfBasis b = full_basis(a.p.vars, k);
    const Polynomial f_eps = f - eps * sum_of_even_monomials(b.points, a.p.vars);
    text = export_sdpa(build_putinar_problem(f_eps, g, k));
  } else {
    Polynomial lifted = f;
    if (a.p.mode == "polya") lifted = f * sum_of_squared_variables(a.p.vars).pow(a.polya_degree);
    if (lifted.is_zero()) throw UsageError("polynomial is zero");
    const HalfBasis b = half_lattice_points(newton_polytope(lifted));
    const Polynomial f_eps = lifted - eps * sum_of_even_monomials(b.points, a.p.vars);
    text = export_sdpa(build_gram_problem(f_eps, b));
  }
  if (a.out.empty() || a.out == "-")
    std::cout << text;
  else
    write_file(a.out, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rational certificates of polynomial positivity"};
  app.require_subcommand(1);

  ProveArgs pa;
  CLI::App* prove = app.add_subcommand("prove", "compute and verify a certificate");
  add_problem_options(prove, pa.p);
  prove->add_option("--eps", pa.eps, "initial perturbation (rational, default 1)");
  prove->add_option("--delta", pa.delta, "SDP accuracy exponent (default 60)");
  prove->add_option("--R", pa.R, "Frobenius bound, rational or 2^e (default 2^60)");
  prove->add_option("--delta-c", pa.delta_c, "Cholesky precision (default 10)");
  prove->add_option("--max-eps-halvings", pa.max_eps_halvings);
  prove->add_option("--max-escalations", pa.max_escalations);
  prove->add_option("--k-max", pa.k_max, "Putinar truncation cap");
  prove->add_option("--D-max", pa.D_max, "Polya / Putinar degree cap");
  prove->add_option("--out", pa.out, "certificate JSON path");
  prove->add_option("--report", pa.report, "report JSON path, '-' for stdout");

  std::string cert_path, vpoly, vreport;
  std::size_t vvars = 0;
  CLI::App* ver = app.add_subcommand("verify", "check a certificate exactly");
  ver->add_option("--cert", cert_path, "certificate JSON")->required();
  ver->add_option("--poly", vpoly, "expected target polynomial (expression or file)");
  ver->add_option("--vars", vvars, "number of variables for --poly");
  ver->add_option("--report", vreport, "report JSON path, '-' for stdout");

  ExportArgs ea;
  CLI::App* exp = app.add_subcommand("export-sdp", "write the Gram SDP for an external solver");
  add_problem_options(exp, ea.p);
  exp->add_option("--eps", ea.eps, "perturbation subtracted before export (default 0)");
  exp->add_option("--polya-degree", ea.polya_degree, "D for --mode polya");
  exp->add_option("--k", ea.k, "truncation order for --mode putinar");
  exp->add_option("--format", ea.format)->check(CLI::IsMember({"sdpa-sparse"}));
  exp->add_option("--out", ea.out, "output path, default stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*prove) return cmd_prove(pa);
    if (*ver) return cmd_verify(cert_path, vpoly, vvars, vreport);
    if (*exp) return cmd_export(ea);
  } catch (const UsageError& e) {
    std::cerr << "exactsos: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "exactsos: parse error at offset " << e.position() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const SchemaError& e) {
    std::cerr << "exactsos: malformed certificate: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "exactsos: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
