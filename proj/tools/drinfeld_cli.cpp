#include "drinfeld/kz.hpp"
#include "drinfeld/mzv.hpp"
#include "drinfeld/relations.hpp"
#include "drinfeld/report.hpp"
#include "drinfeld/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace drinfeld;
using nlohmann::json;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int W = 6;
  unsigned digits = 60;
  uint64_t seed = 1;
  int tol_exp = 40;
  std::string index, cache = "mzv.cache", out, in, report, which, phi = "kz", Ns, hexagon_mu, mu2;
  std::string c_r_factor = "even", c_double_sign = "flipped";
};

void check_digits(const Config& c) {
  if (c.digits < 30) throw UsageError("--digits must be >= 30 for numeric runs");
  if (c.digits > kMaxDigits) throw UsageError("--digits above " + std::to_string(kMaxDigits));
  if (c.tol_exp > static_cast<int>(c.digits) - 10) throw UsageError("--tol-exp must be at most digits - 10");
}

void check_numeric(const Config& c) {
  if (c.W < 2) throw UsageError("--max-weight must be >= 2");
  check_digits(c);
}

BigFloat tolerance(const Config& c) { return BigFloat("1e-" + std::to_string(c.tol_exp)); }

std::vector<Rational> parse_list(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ','))
    if (!part.empty()) out.push_back(parse_rational(part));
  return out;
}

SeriesRecords read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_series_records(in);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out.flush()) throw std::runtime_error("write to " + path + " failed");
}

template <class F>
void write_with(const std::string& path, F&& fn) {
  std::ostringstream os;
  fn(os);
  write_text(path, os.str());
}

// ---------------------------------------------------------------- mzv

int mzv_eval_cmd(const Config& c) {
  Index k = parse_index(c.index);
  if (!is_admissible(k))
    throw UsageError("index not admissible: (" + index_str(k) + ") needs its last entry > 1 for the series to converge");
  if (c.digits > kMaxDigits) throw UsageError("--digits above " + std::to_string(kMaxDigits));
  FloatContext ctx(c.digits);
  auto r = mzv_eval(k, c.digits);
  std::cout << to_decimal(r.value, c.digits) << "\n";
  return kPass;
}

int mzv_table_cmd(const Config& c) {
  if (c.W < 2) throw UsageError("--max-weight must be >= 2");
  FloatContext ctx(c.digits);
  MZVCache cache(c.cache);
  auto t = mzv_table(c.W, c.digits, &cache);
  std::cout << "records " << t.size() << "\ncache " << c.cache << "\ndigest " << cache.digest() << "\n";
  return kPass;
}

// ---------------------------------------------------------------- kz

int kz_build_cmd(const Config& c) {
  check_numeric(c);
  FloatContext ctx(c.digits);
  MZVCache cache(c.cache);
  auto t = build_kz(c.W, c.digits, &cache);
  if (c.out.empty()) {
    write_series(std::cout, t.phi);
  } else {
    write_with(c.out, [&](std::ostream& os) { write_series(os, t.phi); });
    std::cout << "wrote " << t.phi.terms().size() << " coefficients to " << c.out << "\n";
  }
  return kPass;
}

int kz_check_cmd(const Config& c) {
  check_numeric(c);
  FloatContext ctx(c.digits);
  MZVCache cache(c.cache);
  auto t = build_kz(c.W, c.digits, &cache);
  auto r = check_kz(t, tolerance(c));
  std::cout << kz_check_json(r).dump(2) << "\n";
  return r.pass ? kPass : kFail;
}

// ---------------------------------------------------------------- assoc

int assoc_solve_cmd(const Config& c) {
  if (c.W < 2) throw UsageError("--max-weight must be >= 2");
  ConstraintOptions opt;
  if (!c.hexagon_mu.empty()) opt.hexagon_mu2 = parse_rational(c.hexagon_mu);
  auto s = solve_generic(c.W, c.seed, opt);
  json side = solve_sidecar(s, c.seed, opt);
  if (c.out.empty()) {
    write_series(std::cout, s.phi);
    std::cerr << side.dump(2) << "\n";
  } else {
    write_with(c.out, [&](std::ostream& os) { write_series(os, s.phi); });
    write_text(c.out + ".dims.json", side.dump(2) + "\n");
    std::cout << "wrote " << c.out << " and " << c.out << ".dims.json\n";
  }
  return kPass;
}

template <class S>
int assoc_check_series(const NCSeries<S>& phi, const S& mu2, const BigFloat& tol) {
  BigFloat gl = grouplike_defect(phi);
  BigFloat pent = max_abs_coeff(pentagon_residual(phi));
  auto [h1, h2] = hexagon_residuals(AssociatorCandidate<S>{mu2, phi});
  BigFloat hx1 = max_abs_coeff(h1), hx2 = max_abs_coeff(h2);
  BigFloat two = max_abs_coeff(two_cycle_residual(phi));
  auto show = [](const BigFloat& x) { return x.str(6, std::ios_base::scientific); };
  bool pass = gl <= tol && pent <= tol && hx1 <= tol && hx2 <= tol && two <= tol;
  json j{{"order", phi.order()},
         {"mu2", scalar_string(mu2)},
         {"grouplike", show(gl)},
         {"pentagon", show(pent)},
         {"hexagon1", show(hx1)},
         {"hexagon2", show(hx2)},
         {"two_cycle", show(two)},
         {"tolerance", show(tol)},
         {"degenerate", pass && is_zero(mu2)},
         {"pass", pass}};
  std::cout << j.dump(2) << "\n";
  return pass ? kPass : kFail;
}

int assoc_check_cmd(const Config& c) {
  auto rec = read_records(c.in);
  if (rec.kind == "rational") {
    auto phi = series_from_records_rational(rec);
    Rational mu2 = c.mu2.empty() ? (phi.order() >= 2 ? mu_from_phi(phi) : Rational(0)) : parse_rational(c.mu2);
    return assoc_check_series(phi, mu2, BigFloat(0));
  }
  check_digits(c);
  FloatContext ctx(c.digits);
  auto phi = series_from_records_decimal(rec);
  BigFloat mu2 = c.mu2.empty() ? (phi.order() >= 2 ? mu_from_phi(phi) : BigFloat(0)) : parse_bigfloat(c.mu2);
  return assoc_check_series(phi, mu2, tolerance(c));
}

// ---------------------------------------------------------------- relations

CConvention convention(const Config& c) {
  CConvention conv;
  if (c.c_r_factor == "literal")
    conv.r_factor = CConvention::RFactor::literal;
  else if (c.c_r_factor != "even")
    throw UsageError("--c-r-factor must be even or literal");
  if (c.c_double_sign == "printed")
    conv.double_sign = CConvention::DoubleSign::printed;
  else if (c.c_double_sign != "flipped")
    throw UsageError("--c-double-sign must be flipped or printed");
  return conv;
}

int relations_verify_cmd(const Config& c) {
  if (c.which.size() != 1 || std::string("ABCD").find(c.which[0]) == std::string::npos)
    throw UsageError("--which must be one of A, B, C, D");
  char which = c.which[0];
  if (c.W < 2) throw UsageError("--max-weight must be >= 2");
  std::vector<Rational> Ns = c.Ns.empty() ? (which == 'B' ? parse_list("3,4,5") : parse_list("2,3,4,5")) : parse_list(c.Ns);
  for (const auto& N : Ns) {
    if (which == 'B' && (N == 1 || N == 0)) throw UsageError("relation B is degenerate at N = " + to_string(N));
    if (N == 0) throw UsageError("N = 0 is degenerate");
  }
  json prov{{"command", "relations verify"},
            {"which", c.which},
            {"phi", c.phi},
            {"max_weight", c.W},
            {"N", c.Ns.empty() ? "default" : c.Ns}};
  CConvention conv = convention(c);
  if (which == 'C') prov["c_convention"] = {{"r_factor", c.c_r_factor}, {"double_sign", c.c_double_sign}};

  RelationReport rep;
  auto run_exact = [&](const NCSeries<Rational>& phi, const std::string& source) {
    RelationInputs<Rational> in;
    in.zeta = zeta_provider(phi);
    in.mu2 = mu_from_phi(phi);
    in.mu_desc = "mu^2 = -24 zeta_phi(2) = " + to_string(in.mu2);
    in.phi_source = source;
    in.W = c.W;
    in.Ns = Ns;
    in.conv = conv;
    rep = verify_relation(which, in);
  };
  auto run_numeric = [&](const NCSeries<BigFloat>& phi, const BigFloat& mu2, const std::string& mu_desc,
                         const std::string& source) {
    RelationInputs<BigFloat> in;
    in.zeta = zeta_provider(phi);
    in.mu2 = mu2;
    in.mu_desc = mu_desc;
    in.phi_source = source;
    in.W = c.W;
    in.Ns = Ns;
    in.tol = tolerance(c);
    in.conv = conv;
    rep = verify_relation(which, in);
  };

  if (c.phi == "generic") {
    prov["seed"] = c.seed;
    auto s = solve_generic(c.W, c.seed);
    run_exact(s.phi, "generic solver, seed " + std::to_string(c.seed));
  } else if (c.phi == "kz") {
    check_numeric(c);
    prov["digits"] = c.digits;
    prov["tol_exp"] = c.tol_exp;
    FloatContext ctx(c.digits);
    MZVCache cache(c.cache);
    auto t = build_kz(c.W, c.digits, &cache);
    prov["cache"] = c.cache;
    prov["cache_digest"] = cache.digest();
    run_numeric(t.phi, t.mu2, "2*pi*sqrt(-1), mu^2 = -4 pi^2", "kz");
  } else {
    auto recs = read_records(c.phi);
    if (recs.order < c.W) throw UsageError("series file order " + std::to_string(recs.order) + " is below --max-weight");
    if (recs.kind == "rational") {
      run_exact(series_from_records_rational(recs), "file " + c.phi);
    } else {
      check_numeric(c);
      prov["digits"] = c.digits;
      prov["tol_exp"] = c.tol_exp;
      FloatContext ctx(c.digits);
      auto phi = series_from_records_decimal(recs);
      BigFloat mu2 = mu_from_phi(phi);
      run_numeric(phi, mu2, "mu^2 = -24 zeta_phi(2)", "file " + c.phi);
    }
  }
  json doc = report_to_json(rep, prov);
  if (c.report.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    write_text(c.report, doc.dump(2) + "\n");
    std::cout << "relation " << which << ": " << (rep.pass ? "pass" : "FAIL") << " (report " << c.report << ")\n";
  }
  return rep.pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Drinfeld associators, MZVs and relations A-D"};
  app.require_subcommand(1);
  Config c;
  int (*action)(const Config&) = nullptr;

  auto* mzv = app.add_subcommand("mzv", "multiple zeta values");
  mzv->require_subcommand(1);
  auto* mzv_eval_sc = mzv->add_subcommand("eval", "evaluate one MZV");
  mzv_eval_sc->add_option("--index", c.index, "k1,k2,...")->required();
  mzv_eval_sc->add_option("--digits", c.digits, "significant digits");
  mzv_eval_sc->callback([&] { action = mzv_eval_cmd; });
  auto* mzv_table_sc = mzv->add_subcommand("table", "evaluate all admissible indices up to a weight");
  mzv_table_sc->add_option("--max-weight", c.W)->required();
  mzv_table_sc->add_option("--digits", c.digits);
  mzv_table_sc->add_option("--cache", c.cache);
  mzv_table_sc->callback([&] { action = mzv_table_cmd; });

  auto* kz = app.add_subcommand("kz", "KZ associator");
  kz->require_subcommand(1);
  auto* kz_build_sc = kz->add_subcommand("build", "write the truncated KZ associator");
  kz_build_sc->add_option("--max-weight", c.W)->required();
  kz_build_sc->add_option("--digits", c.digits);
  kz_build_sc->add_option("--out", c.out);
  kz_build_sc->add_option("--cache", c.cache);
  kz_build_sc->callback([&] { action = kz_build_cmd; });
  auto* kz_check_sc = kz->add_subcommand("check", "associator checks on the truncated KZ associator");
  kz_check_sc->add_option("--max-weight", c.W)->required();
  kz_check_sc->add_option("--digits", c.digits);
  kz_check_sc->add_option("--tol-exp", c.tol_exp, "tolerance 10^-E");
  kz_check_sc->add_option("--cache", c.cache);
  kz_check_sc->callback([&] { action = kz_check_cmd; });

  auto* assoc = app.add_subcommand("assoc", "rational associators");
  assoc->require_subcommand(1);
  auto* solve_sc = assoc->add_subcommand("solve", "solve pentagon + shuffle degree by degree");
  solve_sc->add_option("--max-weight", c.W)->required();
  solve_sc->add_option("--seed", c.seed);
  solve_sc->add_option("--hexagon-mu", c.hexagon_mu, "also impose both hexagons with this rational mu^2");
  solve_sc->add_option("--out", c.out);
  solve_sc->callback([&] { action = assoc_solve_cmd; });
  auto* check_sc = assoc->add_subcommand("check", "group-like, pentagon, hexagon and 2-cycle checks");
  check_sc->add_option("--in", c.in)->required();
  check_sc->add_option("--mu2", c.mu2, "mu^2 (default -24 zeta_phi(2))");
  check_sc->add_option("--digits", c.digits, "working digits for decimal series");
  check_sc->add_option("--tol-exp", c.tol_exp);
  check_sc->callback([&] { action = assoc_check_cmd; });

  auto* rel = app.add_subcommand("relations", "relations A-D");
  rel->require_subcommand(1);
  auto* verify_sc = rel->add_subcommand("verify", "verify one relation");
  verify_sc->add_option("--which", c.which)->required();
  verify_sc->add_option("--phi", c.phi, "kz, generic or a series file");
  verify_sc->add_option("--max-weight", c.W);
  verify_sc->add_option("--N", c.Ns, "comma-separated N values");
  verify_sc->add_option("--digits", c.digits);
  verify_sc->add_option("--seed", c.seed);
  verify_sc->add_option("--tol-exp", c.tol_exp);
  verify_sc->add_option("--cache", c.cache);
  verify_sc->add_option("--report", c.report);
  verify_sc->add_option("--c-r-factor", c.c_r_factor, "even or literal");
  verify_sc->add_option("--c-double-sign", c.c_double_sign, "flipped or printed");
  verify_sc->callback([&] { action = relations_verify_cmd; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
