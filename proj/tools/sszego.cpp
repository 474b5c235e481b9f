// Command-line front end: verify / eigen / factorize / compose / gegenbauer /
// narayana / iterate. Exit codes: 0 all verified, 1 refuted or degenerate,
// 2 usage or input error.
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sszego/css.hpp"
#include "sszego/errors.hpp"
#include "sszego/harness.hpp"
#include "sszego/phi.hpp"
#include "sszego/special.hpp"

using namespace sszego;

namespace {

// A bad value for a named flag.
struct UsageError : std::runtime_error {
  UsageError(const std::string& flag, const std::string& msg) : std::runtime_error(flag + ": " + msg) {}
};

Polynomial poly_arg(const std::string& flag, const std::string& text) {
  try {
    return Polynomial::parse(text);
  } catch (const ParseError& e) {
    throw UsageError(flag, e.what());
  }
}

Rational rational_arg(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw UsageError(flag, e.what());
  }
}

std::string interval_text(const Rational& lo, const Rational& hi) {
  if (lo == hi) return to_string(lo);
  return "[" + to_string(lo) + ", " + to_string(hi) + "]";
}

int print_interlace(const std::string& title, const InterlaceResult& r) {
  std::cout << title << ": " << to_string(r.verdict);
  if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
  std::cout << '\n';
  for (const auto& w : r.witnesses) std::cout << "  " << w.name << " in " << interval_text(w.lo, w.hi) << '\n';
  return r.verdict == Verdict::holds ? 0 : 1;
}

// ---- verify -------------------------------------------------------------------

struct VerifyArgs {
  std::string config;
  std::vector<std::string> checks;
  std::size_t n_min = 5;
  std::size_t n_max = 12;
  std::optional<std::size_t> j_min, j_max, k_min, k_max;
  std::uint64_t seed = 1;
  std::string width = "1/1000000";
  std::size_t trials = 100;
  std::size_t iterations = 40;
  std::size_t threads = 1;
  std::string report;
  bool json_stdout = false;
  std::size_t max_n = 24;
};

// Exact Phi has entries of size C(n,j)^(n-2); past the ceiling the cost grows
// steeply, so larger n must be asked for explicitly.
bool builds_phi(CheckId id) {
  return id != CheckId::gegenbauer && id != CheckId::narayana_recurrence && id != CheckId::narayana_interlace;
}

void check_ceiling(const std::string& flag, std::size_t n, std::size_t max_n) {
  if (n > max_n) {
    throw UsageError(flag, std::to_string(n) + " exceeds the n ceiling " + std::to_string(max_n) + "; raise it with --max-n");
  }
}

std::optional<IndexRange> range_arg(const std::string& name, const std::optional<std::size_t>& lo,
                                    const std::optional<std::size_t>& hi) {
  if (!lo && !hi) return std::nullopt;
  if (!lo || !hi) throw UsageError("--" + name + "-min/--" + name + "-max", "both bounds are required");
  if (*lo > *hi) throw UsageError("--" + name + "-min", "exceeds --" + name + "-max");
  return IndexRange{*lo, *hi};
}

int run_verify(const VerifyArgs& a) {
  std::vector<CheckSpec> specs;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw UsageError("--config", "cannot read '" + a.config + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      specs = parse_config(buf.str());
    } catch (const ParseError& e) {
      throw UsageError("--config", e.what());
    }
  }
  if (a.n_min > a.n_max) throw UsageError("--n-min", "exceeds --n-max");
  for (const auto& name : a.checks) {
    CheckSpec s;
    try {
      s.check = parse_check_id(name);
    } catch (const ParseError& e) {
      throw UsageError("--check", e.what());
    }
    s.n_min = a.n_min;
    s.n_max = a.n_max;
    s.j = range_arg("j", a.j_min, a.j_max);
    s.k = range_arg("k", a.k_min, a.k_max);
    s.seed = a.seed;
    s.width = rational_arg("--width", a.width);
    if (s.width <= 0) throw UsageError("--width", "must be positive");
    s.trials = a.trials;
    s.iterations = a.iterations;
    specs.push_back(s);
  }
  if (specs.empty()) throw UsageError("--check", "give at least one --check or a --config file");
  for (const auto& s : specs) {
    if (builds_phi(s.check)) check_ceiling(a.checks.empty() ? "--config" : "--n-max", s.n_max, a.max_n);
  }

  const auto reports = run_suite(specs, a.threads);
  if (a.json_stdout) {
    std::cout << report_json(reports);
  } else {
    for (const auto& r : reports) {
      std::cout << to_string(r.status) << ' ' << to_string(r.check) << ' ' << r.params.dump();
      if (!r.detail.empty()) std::cout << " : " << r.detail;
      std::cout << '\n';
    }
  }
  if (!a.report.empty()) {
    std::ofstream out(a.report);
    if (!out) throw UsageError("--report", "cannot write '" + a.report + "'");
    out << report_json(reports);
  }
  return suite_exit_code(reports);
}

// ---- eigen ---------------------------------------------------------------------

int run_eigen(std::size_t n, const std::string& emit) {
  const EigenSystem es = eigensystem(PhiMap(n));
  if (emit == "csv") {
    std::cout << eigensystem_csv(es);
  } else if (emit == "json") {
    nlohmann::json out{{"n", n}};
    for (std::size_t k = 1; k <= es.lambdas.size(); ++k) {
      out["lambdas"].push_back(to_string(es.lambdas[k - 1]));
      out["eigenpolys"].push_back(es.eigenpolys[k - 1].to_string());
    }
    out["q"] = nlohmann::json::array();
    for (const auto& q : es.qpolys) out["q"].push_back(q.to_string());
    std::cout << out.dump(2) << '\n';
  } else {
    for (std::size_t k = 1; k <= es.lambdas.size(); ++k) {
      std::cout << "lambda_" << k << " = " << to_string(es.lambdas[k - 1]) << "   eigenpoly " << es.eigenpolys[k - 1].to_string()
                << '\n';
    }
    for (std::size_t j = 0; j < es.qpolys.size(); ++j) std::cout << "Q_" << j << " = " << es.qpolys[j].to_string() << '\n';
  }
  return 0;
}

// ---- factorize -----------------------------------------------------------------

int run_factorize(std::size_t n, const std::string& poly_text, const std::string& width_text, bool json) {
  const Polynomial p = poly_arg("--poly", poly_text);
  const Rational width = rational_arg("--width", width_text);
  if (width <= 0) throw UsageError("--width", "must be positive");
  if (p.is_zero()) throw UsageError("--poly", "zero polynomial");
  if (p.deg() > n) throw UsageError("--poly", "degree " + std::to_string(p.deg()) + " exceeds --n " + std::to_string(n));
  if (p(Rational(-1)) != 0) throw UsageError("--poly", "polynomial must vanish at -1");

  const FactorizationResult fr = factor_polynomial(PhiMap(n), p, width);
  nlohmann::json params = nlohmann::json::array();
  for (const auto& fp : fr.finite_params) {
    nlohmann::json e{{"multiplicity", fp.multiplicity}};
    if (const auto* r = std::get_if<Rational>(&fp.value)) {
      e["value"] = to_string(*r);
    } else if (const auto* iv = std::get_if<IsolatingInterval>(&fp.value)) {
      e["lo"] = to_string(iv->lo());
      e["hi"] = to_string(iv->hi());
    } else {
      const auto& z = std::get<ComplexRoot>(fp.value);
      e["re"] = z.value.real();
      e["im"] = z.value.imag();
      e["error_bound"] = z.error_bound;
    }
    params.push_back(e);
  }
  if (json) {
    nlohmann::json out{{"n", n},
                       {"k_inf", fr.k_inf_count},
                       {"scalar", to_string(fr.scalar)},
                       {"parameter_polynomial", fr.parameter_polynomial.to_string()},
                       {"parameters", params}};
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::cout << "scalar " << to_string(fr.scalar) << '\n' << "k_inf " << fr.k_inf_count << '\n';
  for (const auto& e : params) {
    std::cout << "a ";
    if (e.contains("value")) std::cout << e["value"].get<std::string>();
    else if (e.contains("lo")) std::cout << "[" << e["lo"].get<std::string>() << ", " << e["hi"].get<std::string>() << "]";
    else std::cout << e["re"].get<double>() << (e["im"].get<double>() < 0 ? " - " : " + ") << std::abs(e["im"].get<double>())
                   << "i (+- " << e["error_bound"].get<double>() << ")";
    if (e["multiplicity"].get<std::size_t>() > 1) std::cout << " x" << e["multiplicity"].get<std::size_t>();
    std::cout << '\n';
  }
  return 0;
}

// ---- compose / gegenbauer / narayana / iterate ---------------------------------

int run_compose(std::size_t n, const std::vector<std::string>& polys) {
  const CompositionContext ctx(n);
  std::vector<Polynomial> ps;
  for (const auto& t : polys) {
    Polynomial p = poly_arg("--poly", t);
    if (!p.is_zero() && p.deg() > n) throw UsageError("--poly", "degree of '" + t + "' exceeds --n");
    ps.push_back(std::move(p));
  }
  std::cout << css_compose_many(ctx, ps).to_string() << '\n';
  return 0;
}

int run_gegenbauer(std::size_t n, const std::optional<std::size_t>& k, const std::string& width_text) {
  const GegenbauerResult g = gegenbauer(n);
  std::cout << "G_" << n << " = " << g.poly.to_string() << '\n' << "a_sq = " << to_string(g.a_sq) << '\n';
  if (!k) return 0;
  if (n < 4 || *k > n - 4) throw UsageError("--k", "must satisfy 0 <= k <= n-4");
  const Rational width = rational_arg("--width", width_text);
  const GegenbauerCheck c = gegenbauer_interlace_check(n, *k, width);
  std::cout << "leibniz_identity " << (c.leibniz_identity ? "holds" : "fails") << '\n'
            << "opposite_signs " << (c.opposite_signs ? "holds" : "fails") << '\n'
            << "extreme_roots_bounded " << (c.extreme_roots_bounded ? "holds" : "fails") << '\n';
  const int code = print_interlace("interlace", c.interlace);
  return (code == 0 && c.leibniz_identity && c.opposite_signs && c.extreme_roots_bounded) ? 0 : 1;
}

int run_narayana(std::size_t n, bool interlace, const std::string& width_text) {
  std::cout << "N_" << n << " = " << narayana(n).to_string() << '\n';
  if (!interlace) return 0;
  if (n < 3) throw UsageError("--n", "interlacing needs n >= 3");
  const NarayanaInterlacing r = narayana_interlacing(n, rational_arg("--width", width_text));
  const int a = print_interlace("first (N_{n-1}, N_n)", r.first);
  const int b = print_interlace("second (N_{n-2}, N_n)", r.second);
  return std::max(a, b);
}

int run_iterate(std::size_t n, const std::string& poly_text, std::size_t k, bool profile,
                const std::optional<std::size_t>& j) {
  const Polynomial p = poly_arg("--poly", poly_text);
  if (p.is_zero()) throw UsageError("--poly", "zero polynomial");
  if (p.deg() > n) throw UsageError("--poly", "degree exceeds --n");
  if (p(Rational(-1)) != 0) throw UsageError("--poly", "polynomial must vanish at -1");
  const PhiMap m(n);
  if (!profile) {
    std::cout << phi_iterate(m, p, k).to_string() << '\n';
    return 0;
  }
  const EigenSystem es = eigensystem(m);
  ConvergenceProfile prof;
  try {
    prof = convergence_profile(m, es, p, k, j);
  } catch (const PreconditionError& e) {
    throw UsageError(j ? "--j" : "--poly", e.what());
  }
  std::cout << "dominant W_" << prof.dominant_index << '\n';
  for (const auto& pt : prof.points) {
    std::cout << "k=" << pt.k << " distance=" << pt.distance << " positive_roots=" << pt.positive_roots << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur-Szego composition toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t max_n = 24;
  app.add_option("--max-n", max_n, "largest n for exact Phi construction (default 24)")->check(CLI::Range(3, 200));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run checks and emit a report");
  verify->add_option("--config", va.config, "key=value check file");
  verify->add_option("--check", va.checks, "check id (repeatable)");
  verify->add_option("--n-min", va.n_min)->check(CLI::Range(2, 200));
  verify->add_option("--n-max", va.n_max)->check(CLI::Range(2, 200));
  verify->add_option("--j-min", va.j_min);
  verify->add_option("--j-max", va.j_max);
  verify->add_option("--k-min", va.k_min);
  verify->add_option("--k-max", va.k_max);
  verify->add_option("--seed", va.seed);
  verify->add_option("--width", va.width, "witness width, e.g. 1/1000000");
  verify->add_option("--trials", va.trials)->check(CLI::PositiveNumber);
  verify->add_option("--iterations", va.iterations);
  verify->add_option("--threads", va.threads)->check(CLI::Range(1, 256));
  verify->add_option("--report", va.report, "write JSON report here");
  verify->add_flag("--json", va.json_stdout, "print the JSON report to stdout");

  std::size_t n = 0;
  std::string emit = "text";
  auto* eigen = app.add_subcommand("eigen", "eigenvalues and Q_j polynomials");
  eigen->add_option("--n", n)->required()->check(CLI::Range(3, 200));
  eigen->add_option("--emit", emit)->check(CLI::IsMember({"csv", "json", "text"}));

  std::string poly;
  std::string width = "1/1000000";
  bool json = false;
  auto* factorize = app.add_subcommand("factorize", "composition-factor parameters of a polynomial");
  factorize->add_option("--n", n)->required()->check(CLI::Range(3, 200));
  factorize->add_option("--poly", poly, "ascending coefficients, e.g. 0,1,2,1")->required();
  factorize->add_option("--width", width);
  factorize->add_flag("--json", json);

  std::vector<std::string> polys;
  auto* compose = app.add_subcommand("compose", "Schur-Szego composition of the given polynomials");
  compose->add_option("--n", n)->required()->check(CLI::Range(2, 200));
  compose->add_option("--poly", polys)->required();

  std::optional<std::size_t> k_opt;
  auto* geg = app.add_subcommand("gegenbauer", "G_n and the derivative interlacing check");
  geg->add_option("--n", n)->required()->check(CLI::Range(3, 200));
  geg->add_option("--k", k_opt, "derivative order to check");
  geg->add_option("--width", width);

  bool interlace = false;
  auto* nar = app.add_subcommand("narayana", "Narayana polynomial N_n");
  nar->add_option("--n", n)->required()->check(CLI::Range(1, 500));
  nar->add_flag("--interlace", interlace);
  nar->add_option("--width", width);

  std::size_t k_iter = 1;
  bool profile = false;
  std::optional<std::size_t> j_opt;
  auto* iterate = app.add_subcommand("iterate", "apply Phi repeatedly");
  iterate->add_option("--n", n)->required()->check(CLI::Range(3, 200));
  iterate->add_option("--poly", poly)->required();
  iterate->add_option("--k", k_iter, "number of iterations");
  iterate->add_flag("--profile", profile, "report root distances to the dominant W_j");
  iterate->add_option("--j", j_opt, "W index for --profile");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    va.max_n = max_n;
    if (*eigen || *factorize || *iterate) check_ceiling("--n", n, max_n);
    if (*verify) return run_verify(va);
    if (*eigen) return run_eigen(n, emit);
    if (*factorize) return run_factorize(n, poly, width, json);
    if (*compose) return run_compose(n, polys);
    if (*geg) return run_gegenbauer(n, k_opt, width);
    if (*nar) return run_narayana(n, interlace, width);
    if (*iterate) return run_iterate(n, poly, k_iter, profile, j_opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
