// Command-line front end: exact q-deformed Euler numbers, the signed
// q-measure, stabilized p-adic integrals, and the self-check suites, over
// the exact-rational or fixed-precision p-adic backend.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_support.hpp"
#include "qeuler/euler.hpp"
#include "qeuler/integral.hpp"
#include "qeuler/integrand_spec.hpp"
#include "qeuler/measure.hpp"
#include "qeuler/series.hpp"

using nlohmann::ordered_json;
using namespace qeuler;

namespace {

struct RunConfig {
  long p = 3;
  std::string q_text;
  Rational q;
  std::string backend = "rational";
  long prec = 6;
  long n_max = -1;  // resolved per command (precision + degree + 2)
  std::string format = "text";
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--p", cfg.p, "odd prime p")->required();
  cmd->add_option("--q", cfg.q_text, "rational q, \"num\" or \"num/den\"")
      ->required();
  cmd->add_option("--backend", cfg.backend, "scalar backend")
      ->check(CLI::IsMember({"rational", "padic"}));
  cmd->add_option("--prec", cfg.prec, "requested p-adic precision M");
  cmd->add_option("--N-max", cfg.n_max,
                  "maximum refinement level before reporting NOT-CONVERGED");
  cmd->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
}

void emit(const RunConfig& cfg, const ordered_json& doc,
          const std::vector<std::string>& text_lines,
          const std::vector<std::string>& csv_lines) {
  if (cfg.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    for (const auto& line : csv_lines) std::cout << line << "\n";
  } else {
    for (const auto& line : text_lines) std::cout << line << "\n";
  }
}

/// Size the p-adic working precision so that the m * v_p(q-1) digits the
/// closed forms and integrands spend on (1-q)^(-m) still leave the
/// requested precision certified.
template <class F>
int dispatch(const RunConfig& cfg, long max_degree, F&& run) {
  if (cfg.prec < 1) throw DomainError("--prec must be >= 1");
  if (cfg.backend == "padic") {
    long k = 0;
    Rational qm1 = cfg.q - Rational(1);
    if (!qm1.is_zero()) k = std::max(0L, qm1.valuation(cfg.p));
    PadicDomain dom(cfg.p, cfg.prec + max_degree * k + 4);
    return run(make_q_from_rational(dom, cfg.q));
  }
  RationalDomain dom(cfg.p);
  return run(make_q_from_rational(dom, cfg.q));
}

void require_deformed_q(const RunConfig& cfg) {
  if (cfg.q == Rational(1))
    throw DomainError(
        "q = 1 is the classical limit and the q-deformed closed forms are "
        "singular there; use the 'classical' subcommand");
}

ordered_json meta(const RunConfig& cfg) {
  return ordered_json{
      {"p", cfg.p}, {"q", cfg.q.str()}, {"backend", cfg.backend}};
}

// ---------------------------------------------------------------------------
// euler: dual-route table of E_{m,q}

template <ScalarDomain D>
int run_euler(const RunConfig& cfg, const QParam<D>& Q,
              std::pair<long, long> m_range) {
  const D& dom = Q.domain;
  std::vector<Integrand<D>> fs;
  for (long m = m_range.first; m <= m_range.second; ++m)
    fs.push_back(Integrand<D>::bracket_power(Q, m));
  MeasureContext<D> mctx(Q);
  auto results = integrate_many(fs, mctx, cfg.prec, cfg.n_max);

  ordered_json doc = meta(cfg);
  doc["results"] = ordered_json::array();
  std::vector<std::string> text = {"p=" + std::to_string(cfg.p) +
                                   " q=" + cfg.q.str() +
                                   " backend=" + cfg.backend +
                                   " prec=" + std::to_string(cfg.prec)};
  std::vector<std::string> csv = {"m,closed,integral,agree_valuation"};
  bool any_nc = false;
  for (long m = m_range.first; m <= m_range.second; ++m) {
    const auto& r = results[static_cast<std::size_t>(m - m_range.first)];
    auto closed = q_euler_closed(m, Q);
    long vlb = dom.valuation_lower_bound(closed - r.value);
    long agree = cli::agreement_valuation(vlb, r.achieved_precision);
    ordered_json row{{"m", m},
                     {"closed", dom.render(closed)},
                     {"integral", dom.render(r.value)},
                     {"agree_valuation", agree}};
    if (!r.converged) {
      row["converged"] = false;
      any_nc = true;
    }
    doc["results"].push_back(row);
    text.push_back("m=" + std::to_string(m) + " closed=" + dom.render(closed) +
                   " agree_valuation=" + std::to_string(agree) +
                   (r.converged ? "" : " NOT-CONVERGED"));
    csv.push_back(std::to_string(m) + "," + cli::csv_field(dom.render(closed)) +
                  "," + cli::csv_field(dom.render(r.value)) + "," +
                  std::to_string(agree));
  }
  emit(cfg, doc, text, csv);
  if (any_nc) std::cerr << "error: NOT-CONVERGED within the level guard\n";
  return cli::exit_code_for(false, any_nc);
}

// ---------------------------------------------------------------------------
// euler-poly: dual-route E_{n,q}(x) at integer points

template <ScalarDomain D>
int run_euler_poly(const RunConfig& cfg, const QParam<D>& Q,
                   std::pair<long, long> n_range,
                   const std::vector<long>& xs) {
  const D& dom = Q.domain;
  std::vector<Integrand<D>> fs;
  for (long n = n_range.first; n <= n_range.second; ++n)
    for (long x : xs)
      fs.push_back(Integrand<D>::shifted_bracket_power(Q, n, x));
  MeasureContext<D> mctx(Q);
  auto results = integrate_many(fs, mctx, cfg.prec, cfg.n_max);

  ordered_json doc = meta(cfg);
  doc["results"] = ordered_json::array();
  std::vector<std::string> text = {"p=" + std::to_string(cfg.p) +
                                   " q=" + cfg.q.str() +
                                   " backend=" + cfg.backend +
                                   " prec=" + std::to_string(cfg.prec)};
  std::vector<std::string> csv = {"n,x,expansion,integral,agree_valuation"};
  bool any_nc = false;
  std::size_t idx = 0;
  for (long n = n_range.first; n <= n_range.second; ++n) {
    for (long x : xs) {
      const auto& r = results[idx++];
      auto expansion = q_euler_poly(n, mpz_class(x), Q);
      long vlb = dom.valuation_lower_bound(expansion - r.value);
      long agree = cli::agreement_valuation(vlb, r.achieved_precision);
      ordered_json row{{"n", n},
                       {"x", x},
                       {"expansion", dom.render(expansion)},
                       {"integral", dom.render(r.value)},
                       {"agree_valuation", agree}};
      if (!r.converged) {
        row["converged"] = false;
        any_nc = true;
      }
      doc["results"].push_back(row);
      text.push_back("n=" + std::to_string(n) + " x=" + std::to_string(x) +
                     " expansion=" + dom.render(expansion) +
                     " agree_valuation=" + std::to_string(agree) +
                     (r.converged ? "" : " NOT-CONVERGED"));
      csv.push_back(std::to_string(n) + "," + std::to_string(x) + "," +
                    cli::csv_field(dom.render(expansion)) + "," +
                    cli::csv_field(dom.render(r.value)) + "," +
                    std::to_string(agree));
    }
  }
  emit(cfg, doc, text, csv);
  if (any_nc) std::cerr << "error: NOT-CONVERGED within the level guard\n";
  return cli::exit_code_for(false, any_nc);
}

// ---------------------------------------------------------------------------
// euler-chi: dual-route character-twisted numbers

template <ScalarDomain D>
int run_euler_chi(const RunConfig& cfg, const QParam<D>& Q,
                  const Character& chi, std::pair<long, long> m_range) {
  const D& dom = Q.domain;
  std::vector<Integrand<D>> fs;
  for (long m = m_range.first; m <= m_range.second; ++m)
    fs.push_back(Integrand<D>::char_twist(Q, chi, m));
  MeasureContext<D> mctx(Q);
  auto results =
      integrate_many(fs, mctx, cfg.prec, cfg.n_max, chi.modulus());

  ordered_json doc = meta(cfg);
  doc["chi"] = chi.str();
  doc["results"] = ordered_json::array();
  std::vector<std::string> text = {
      "p=" + std::to_string(cfg.p) + " q=" + cfg.q.str() +
      " backend=" + cfg.backend + " chi=" + chi.str() +
      " primitive=" + (chi.is_primitive() ? std::string("yes") : "no")};
  std::vector<std::string> csv = {"m,closed,integral,agree_valuation"};
  bool any_nc = false;
  for (long m = m_range.first; m <= m_range.second; ++m) {
    const auto& r = results[static_cast<std::size_t>(m - m_range.first)];
    auto closed = generalized_q_euler_closed(m, chi, Q);
    long vlb = dom.valuation_lower_bound(closed - r.value);
    long agree = cli::agreement_valuation(vlb, r.achieved_precision);
    ordered_json row{{"m", m},
                     {"closed", dom.render(closed)},
                     {"integral", dom.render(r.value)},
                     {"agree_valuation", agree}};
    if (!r.converged) {
      row["converged"] = false;
      any_nc = true;
    }
    doc["results"].push_back(row);
    text.push_back("m=" + std::to_string(m) + " closed=" + dom.render(closed) +
                   " agree_valuation=" + std::to_string(agree) +
                   (r.converged ? "" : " NOT-CONVERGED"));
    csv.push_back(std::to_string(m) + "," + cli::csv_field(dom.render(closed)) +
                  "," + cli::csv_field(dom.render(r.value)) + "," +
                  std::to_string(agree));
  }
  emit(cfg, doc, text, csv);
  if (any_nc) std::cerr << "error: NOT-CONVERGED within the level guard\n";
  return cli::exit_code_for(false, any_nc);
}

// ---------------------------------------------------------------------------
// integrate: one stabilized limit

template <ScalarDomain D>
int run_integrate(const RunConfig& cfg, const QParam<D>& Q,
                  const IntegrandSpec& spec) {
  const D& dom = Q.domain;
  MeasureContext<D> mctx(Q);
  auto f = spec.realize(Q);
  auto r = integrate(f, mctx, cfg.prec, cfg.n_max, spec.modulus());
  long vlb = dom.valuation_lower_bound(r.value);
  long val = cli::agreement_valuation(vlb, r.achieved_precision);

  ordered_json doc = meta(cfg);
  doc["integrand"] = spec.str();
  if (!r.converged) doc["converged"] = false;
  doc["value"] = dom.render(r.value);
  doc["valuation"] = val;
  doc["precision"] = r.achieved_precision;
  doc["levels"] = r.levels_used;

  std::vector<std::string> text = {
      "integrand=" + spec.str() + " p=" + std::to_string(cfg.p) +
          " q=" + cfg.q.str() + " backend=" + cfg.backend,
      "value=" + dom.render(r.value),
      "valuation=" + std::to_string(val) +
          " precision=" + std::to_string(r.achieved_precision) +
          " levels=" + std::to_string(r.levels_used) +
          " converged=" + (r.converged ? std::string("yes") : "no")};
  std::vector<std::string> csv = {
      "integrand,value,valuation,precision,levels,converged",
      cli::csv_field(spec.str()) + "," + cli::csv_field(dom.render(r.value)) +
          "," + std::to_string(val) + "," +
          std::to_string(r.achieved_precision) + "," +
          std::to_string(r.levels_used) + "," +
          (r.converged ? "true" : "false")};
  emit(cfg, doc, text, csv);
  if (!r.converged)
    std::cerr << "error: NOT-CONVERGED within the level guard (levels_used="
              << r.levels_used << ")\n";
  return cli::exit_code_for(false, !r.converged);
}

// ---------------------------------------------------------------------------
// measure: ball values and total mass

template <ScalarDomain D>
int run_measure(const RunConfig& cfg, const QParam<D>& Q, long d, long N,
                const std::optional<mpz_class>& only_a) {
  const D& dom = Q.domain;
  MeasureContext<D> mctx(Q);
  mpz_class count = d * pow_p(cfg.p, N);

  ordered_json doc = meta(cfg);
  doc["d"] = d;
  doc["N"] = N;
  doc["rows"] = ordered_json::array();
  std::vector<std::string> text = {"p=" + std::to_string(cfg.p) +
                                   " q=" + cfg.q.str() + " d=" +
                                   std::to_string(d) +
                                   " N=" + std::to_string(N)};
  std::vector<std::string> csv = {"a,mu"};
  auto add_row = [&](const mpz_class& a) {
    auto v = mctx.mu(Ball{a, d, N});
    doc["rows"].push_back(
        ordered_json{{"a", a.get_str()}, {"mu", dom.render(v)}});
    text.push_back("a=" + a.get_str() + " mu=" + dom.render(v));
    csv.push_back(a.get_str() + "," + cli::csv_field(dom.render(v)));
  };
  if (only_a) {
    add_row(*only_a);
  } else {
    if (count > 200000)
      throw DomainError("refusing to enumerate " + count.get_str() +
                        " residues; pass --a to pick one");
    for (mpz_class a = 0; a < count; ++a) add_row(a);
    auto mass = mctx.total_mass(d, N);
    doc["total_mass"] = dom.render(mass);
    text.push_back("total_mass=" + dom.render(mass));
    csv.push_back("total_mass," + cli::csv_field(dom.render(mass)));
  }
  emit(cfg, doc, text, csv);
  return 0;
}

// ---------------------------------------------------------------------------
// classical: the q = 1 column

int run_classical(const RunConfig& cfg, std::pair<long, long> m_range) {
  auto table = classical_euler_table(m_range.second);
  ordered_json doc;
  doc["results"] = ordered_json::array();
  std::vector<std::string> text;
  std::vector<std::string> csv = {"m,value"};
  for (long m = m_range.first; m <= m_range.second; ++m) {
    const Rational& v = table[static_cast<std::size_t>(m)];
    doc["results"].push_back(ordered_json{{"m", m}, {"value", v.str()}});
    text.push_back("m=" + std::to_string(m) + " value=" + v.str());
    csv.push_back(std::to_string(m) + "," + v.str());
  }
  emit(cfg, doc, text, csv);
  return 0;
}

// ---------------------------------------------------------------------------
// check: invariant suites

struct CheckCase {
  std::string name;
  std::string detail;
  bool pass = false;
  bool converged = true;
};

int emit_check(const RunConfig& cfg, const std::string& which,
               const std::vector<CheckCase>& cases,
               const std::string& note = "") {
  bool all_pass = true, any_nc = false, any_definite_fail = false;
  for (const auto& c : cases) {
    all_pass = all_pass && c.pass;
    any_nc = any_nc || !c.converged;
    any_definite_fail = any_definite_fail || (c.converged && !c.pass);
  }
  ordered_json doc = meta(cfg);
  doc["check"] = which;
  if (!note.empty()) doc["note"] = note;
  doc["cases"] = ordered_json::array();
  std::vector<std::string> text;
  std::vector<std::string> csv = {"case,detail,pass"};
  if (!note.empty()) text.push_back(note);
  for (const auto& c : cases) {
    doc["cases"].push_back(ordered_json{
        {"name", c.name}, {"detail", c.detail}, {"pass", c.pass}});
    text.push_back(c.name + ": " + c.detail + " " +
                   (c.pass ? "ok" : (c.converged ? "FAIL" : "NOT-CONVERGED")));
    csv.push_back(cli::csv_field(c.name) + "," + cli::csv_field(c.detail) +
                  "," + (c.pass ? "true" : "false"));
  }
  doc["pass"] = all_pass;
  text.push_back(all_pass ? "PASS" : "FAIL");
  emit(cfg, doc, text, csv);
  return cli::exit_code_for(any_definite_fail, any_nc);
}

template <ScalarDomain D>
std::vector<CheckCase> check_distribution(const QParam<D>& Q, long d,
                                          long N) {
  const D& dom = Q.domain;
  MeasureContext<D> mctx(Q);
  std::vector<CheckCase> cases;
  for (long n = 0; n < N; ++n) {
    mpz_class count = d * pow_p(dom.prime(), n);
    for (mpz_class a = 0; a < count; ++a) {
      auto rep = mctx.check_additivity(Ball{a, d, n});
      cases.push_back(CheckCase{
          "distribution d=" + std::to_string(d) + " N=" + std::to_string(n) +
              " a=" + a.get_str(),
          "residual_valuation=" +
              cli::valuation_str(dom.valuation_lower_bound(rep.residual)),
          rep.holds, true});
    }
  }
  return cases;
}

template <ScalarDomain D>
std::vector<CheckCase> check_mass(const QParam<D>& Q, long d, long N) {
  const D& dom = Q.domain;
  MeasureContext<D> mctx(Q);
  std::vector<CheckCase> cases;
  for (long n = 0; n <= N; ++n) {
    auto diff = mctx.total_mass(d, n) - dom.from_integer(1);
    cases.push_back(CheckCase{
        "mass d=" + std::to_string(d) + " N=" + std::to_string(n),
        "residual_valuation=" +
            cli::valuation_str(dom.valuation_lower_bound(diff)),
        dom.is_zero(diff), true});
  }
  return cases;
}

template <ScalarDomain D>
std::vector<CheckCase> check_feq(const RunConfig& cfg, const QParam<D>& Q,
                                 std::pair<long, long> m_range) {
  const D& dom = Q.domain;
  std::vector<CheckCase> cases;
  if constexpr (D::exact()) {
    // Exact route: the translation identity applied to [x]_q^m turns into
    // the coefficient identity on the closed forms; residuals vanish
    // identically.
    auto egf = build_egf(Q, m_range.second);
    auto residuals = q_difference_residuals(egf);
    for (long m = m_range.first; m <= m_range.second; ++m) {
      const auto& r = residuals[static_cast<std::size_t>(m)];
      cases.push_back(CheckCase{
          "feq m=" + std::to_string(m),
          "residual=" + dom.render(r) + " residual_valuation=" +
              cli::valuation_str(dom.valuation_lower_bound(r)),
          dom.is_zero(r), true});
    }
  } else {
    // Integral route: both integrals are computed by stabilized limits and
    // the residual must vanish to the requested precision.
    MeasureContext<D> mctx(Q);
    for (long m = m_range.first; m <= m_range.second; ++m) {
      auto rep = check_functional_equation(
          Integrand<D>::bracket_power(Q, m), mctx, cfg.prec, cfg.n_max);
      cases.push_back(CheckCase{
          "feq m=" + std::to_string(m),
          "residual_valuation=" + cli::valuation_str(rep.residual_valuation),
          rep.converged && rep.residual_valuation >= cfg.prec,
          rep.converged});
    }
  }
  return cases;
}

template <ScalarDomain D>
std::vector<CheckCase> check_qdiff(const RunConfig& cfg, const QParam<D>& Q,
                                   long K) {
  const D& dom = Q.domain;
  auto egf = (cfg.q == Rational(1)) ? build_egf_classical(dom, K)
                                    : build_egf(Q, K);
  auto residuals = q_difference_residuals(egf);
  std::vector<CheckCase> cases;
  for (long n = 0; n <= K; ++n) {
    const auto& r = residuals[static_cast<std::size_t>(n)];
    bool pass = D::exact() ? dom.is_zero(r)
                           : dom.valuation_lower_bound(r) >= cfg.prec;
    cases.push_back(CheckCase{
        "qdiff n=" + std::to_string(n),
        "residual_valuation=" +
            cli::valuation_str(dom.valuation_lower_bound(r)),
        pass, true});
  }
  return cases;
}

template <ScalarDomain D>
std::vector<CheckCase> check_limit(const RunConfig& cfg, const QParam<D>& Q,
                                   long N, long K) {
  const D& dom = Q.domain;
  if (!Q.strict)
    throw DomainError("the limit bounds hold in the strict regime "
                      "v_p(q - 1) >= 1 only");
  long k = (cfg.q == Rational(1))
               ? kValInfinity
               : (cfg.q - Rational(1)).valuation(cfg.p);
  std::vector<CheckCase> cases;
  const auto one = dom.from_integer(1);
  for (long n = 1; n <= N; ++n) {
    auto diff = pow_integer(dom, Q.q, pow_p(cfg.p, n)) - one;
    long v = dom.valuation_lower_bound(diff);
    long bound = (k >= kValInfinity) ? kValInfinity
                                     : std::min(n + k, kValInfinity);
    cases.push_back(
        CheckCase{"limit q^(p^" + std::to_string(n) + ")-1",
                  "valuation=" + cli::valuation_str(v) + " required>=" +
                      cli::valuation_str(bound),
                  v >= bound, true});
  }
  if (cfg.q != Rational(1)) {
    for (long m = 0; m <= K; ++m) {
      auto e_cl = classical_euler(m);
      auto diff = q_euler_closed(m, Q) -
                  dom.from_ratio(e_cl.numerator(), e_cl.denominator());
      long v = dom.valuation_lower_bound(diff);
      cases.push_back(CheckCase{
          "limit E_" + std::to_string(m) + " classical",
          "valuation=" + cli::valuation_str(v) + " required>=" +
              std::to_string(k - m),
          v >= k - m, true});
    }
  }
  return cases;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "q-deformed Euler numbers, the signed q-measure and its p-adic "
      "integrals, in exact arithmetic"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* euler = app.add_subcommand(
      "euler", "E_{m,q} by closed form and by stabilized integral");
  std::string m_text = "0..8";
  add_common(euler, cfg);
  euler->add_option("--m", m_text, "degree or range a..b");

  auto* poly = app.add_subcommand(
      "euler-poly", "E_{n,q}(x) by expansion and by stabilized integral");
  std::string n_text = "0..5", x_text = "0";
  add_common(poly, cfg);
  poly->add_option("--n", n_text, "degree or range a..b");
  poly->add_option("--x", x_text, "comma-separated integer arguments");

  auto* chi_cmd = app.add_subcommand(
      "euler-chi", "character-twisted E_{m,chi,q}, dual route");
  std::string chi_text, mchi_text = "0..4";
  add_common(chi_cmd, cfg);
  chi_cmd->add_option("--chi", chi_text,
                      "character table d:v0,...,v(d-1) with tokens "
                      "0, 1, -1, zeta(n,k)")
      ->required();
  chi_cmd->add_option("--m", mchi_text, "degree or range a..b");

  auto* integ = app.add_subcommand(
      "integrate", "stabilized limit of signed Riemann sums");
  std::string f_text;
  add_common(integ, cfg);
  integ->add_option("--f", f_text,
                    "integrand: bracket^M | bracket_shift(S)^M | "
                    "chi(d:...)*bracket^M")
      ->required();

  auto* meas = app.add_subcommand("measure", "ball measures and total mass");
  long md = 1, mN = 1;
  std::string a_text;
  add_common(meas, cfg);
  meas->add_option("--d", md, "odd modulus coprime to p");
  meas->add_option("--N", mN, "level");
  meas->add_option("--a", a_text, "single residue instead of the full table");

  auto* check = app.add_subcommand("check", "invariant suites");
  std::string which;
  long cd = 1, cN = -1, cK = -1;
  std::string cm_text = "0..8";
  add_common(check, cfg);
  check
      ->add_option("which", which,
                   "one of distribution|mass|feq|qdiff|limit")
      ->required()
      ->check(CLI::IsMember({"distribution", "mass", "feq", "qdiff", "limit"}));
  check->add_option("--d", cd, "odd modulus for distribution/mass");
  check->add_option("--N", cN, "level bound (default 2; 8 for limit)");
  check->add_option("--m", cm_text, "degree range for feq");
  check->add_option("--K", cK, "degree bound (default 12; 6 for limit)");

  auto* cls = app.add_subcommand("classical", "classical Euler numbers");
  std::string cm2_text = "0..10";
  cls->add_option("--m", cm2_text, "degree or range a..b");
  cls->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!cfg.q_text.empty()) cfg.q = Rational::parse(cfg.q_text);

    if (app.got_subcommand(euler)) {
      require_deformed_q(cfg);
      auto range = cli::parse_range(m_text);
      return dispatch(cfg, range.second, [&](const auto& Q) {
        return run_euler(cfg, Q, range);
      });
    }
    if (app.got_subcommand(poly)) {
      require_deformed_q(cfg);
      auto range = cli::parse_range(n_text);
      auto xs = cli::parse_int_list(x_text);
      return dispatch(cfg, range.second, [&](const auto& Q) {
        return run_euler_poly(cfg, Q, range, xs);
      });
    }
    if (app.got_subcommand(chi_cmd)) {
      require_deformed_q(cfg);
      auto range = cli::parse_range(mchi_text);
      Character chi = Character::parse(chi_text);
      return dispatch(cfg, range.second, [&](const auto& Q) {
        return run_euler_chi(cfg, Q, chi, range);
      });
    }
    if (app.got_subcommand(integ)) {
      IntegrandSpec spec = IntegrandSpec::parse(f_text);
      return dispatch(cfg, spec.degree(), [&](const auto& Q) {
        return run_integrate(cfg, Q, spec);
      });
    }
    if (app.got_subcommand(meas)) {
      std::optional<mpz_class> only_a;
      if (!a_text.empty()) {
        try {
          only_a = mpz_class(a_text);
        } catch (const std::invalid_argument&) {
          throw ParseError("invalid --a '" + a_text + "'", 0);
        }
      }
      return dispatch(cfg, 0, [&](const auto& Q) {
        return run_measure(cfg, Q, md, mN, only_a);
      });
    }
    if (app.got_subcommand(check)) {
      if (which == "distribution" || which == "mass") {
        long N = cN < 0 ? 2 : cN;
        return dispatch(cfg, 0, [&](const auto& Q) {
          auto cases = which == "distribution"
                           ? check_distribution(Q, cd, N)
                           : check_mass(Q, cd, N);
          return emit_check(cfg, which, cases);
        });
      }
      if (which == "feq") {
        auto range = cli::parse_range(cm_text);
        if (cfg.q == Rational(1))
          throw DomainError(
              "q = 1 is the classical limit; the translation identity is "
              "checked there via 'check qdiff --q 1'");
        return dispatch(cfg, range.second, [&](const auto& Q) {
          return emit_check(cfg, which, check_feq(cfg, Q, range));
        });
      }
      if (which == "qdiff") {
        long K = cK < 0 ? 12 : cK;
        return dispatch(cfg, K, [&](const auto& Q) {
          return emit_check(cfg, which, check_qdiff(cfg, Q, K),
                            q_difference_note());
        });
      }
      // limit
      long N = cN < 0 ? 8 : cN;
      long K = cK < 0 ? 6 : cK;
      return dispatch(cfg, K, [&](const auto& Q) {
        return emit_check(cfg, which, check_limit(cfg, Q, N, K));
      });
    }
    if (app.got_subcommand(cls)) {
      return run_classical(cfg, cli::parse_range(cm2_text));
    }
    throw Error("internal: no subcommand dispatched");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
