// qc — exact-arithmetic toolkit for integral binary quartic forms with a
// rational quadratic stabilizer: single-form analysis, stabilizer lattices,
// orthogonal groups, Pell utilities, class counting, and verification
// suites, with JSON/CSV output for the counting surface.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "qc/counting.hpp"
#include "qc/forms.hpp"
#include "qc/galois.hpp"
#include "qc/quadarith.hpp"
#include "qc/quadlattice.hpp"
#include "qc/resolvent.hpp"
#include "suites.hpp"

namespace {

using namespace qc;

// Floating point values are informational; six significant digits.
std::string f6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return std::string(buf);
}

// Exact rationals: bare integer when integral, "p/q" otherwise.
std::string rat_str(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

// JSON fragment for an exact rational: number when integral, string "p/q"
// otherwise (arbitrary-precision integers are printed bare).
std::string rat_json(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return "\"" + rat_str(x) + "\"";
}

std::string quad_json(const QuadForm& f) {
  std::ostringstream os;
  os << '[' << f.alpha << ',' << f.beta << ',' << f.gamma << ']';
  return os.str();
}

std::string quartic_json(const QuarticForm& F) {
  std::ostringstream os;
  os << '[' << F.a4 << ',' << F.a3 << ',' << F.a2 << ',' << F.a1 << ','
     << F.a0 << ']';
  return os.str();
}

void apply_threads(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("QC_THREADS")) threads = std::atoi(env);
  }
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

// Canonicalizes f for the counting/orthogonal surfaces, echoing both forms
// and the change of variables whenever a replacement happens.
QuadForm canonicalize_with_notice(const QuadForm& f) {
  std::pair<QuadForm, Mat2> red = reduce_quad(f);
  if (!(red.first == f)) {
    std::cerr << "notice: " << to_string(f)
              << " replaced by its canonical representative "
              << to_string(red.first) << " via T = " << to_string(red.second)
              << " (same class, same counts)\n";
  }
  return red.first;
}

int cmd_analyze(const std::vector<long>& c) {
  QuarticForm F{c[0], c[1], c[2], c[3], c[4]};
  Invariants iv = invariants(F);
  if (sgn(iv.disc) == 0) {
    std::cout << "{\"F\":" << quartic_json(F)
              << ",\"error\":\"discriminant is zero\"}\n";
    return 1;
  }
  GaloisClass cls = classify(F);
  bool irred = cls != GaloisClass::NotIrreducible;
  std::vector<StabilizerPair> stabs = stabilizer_quadratics(F);
  std::ostringstream os;
  os << "{\"F\":" << quartic_json(F) << ",\"I\":" << rat_json(iv.I)
     << ",\"J\":" << rat_json(iv.J) << ",\"disc\":" << rat_json(iv.disc)
     << ",\"H_BS\":" << rat_json(bs_height(F))
     << ",\"irreducible\":" << (irred ? "true" : "false") << ",\"galois\":\""
     << to_string(cls) << "\",\"stabilizers\":[";
  for (size_t i = 0; i < stabs.size(); ++i) {
    if (i) os << ',';
    LKPair lk = lk_invariants(stabs[i].f, F);
    Int l2 = lk.L * lk.L;
    Int kabs = abs(lk.K);
    Int h = l2 > kabs ? l2 : kabs;
    os << "{\"omega\":" << stabs[i].omega << ",\"f\":" << quad_json(stabs[i].f)
       << ",\"L\":" << lk.L << ",\"K\":" << lk.K << ",\"H\":" << h << '}';
  }
  os << "]}";
  std::cout << os.str() << '\n';
  return 0;
}

int cmd_stabilizers(const std::vector<long>& c) {
  QuarticForm F{c[0], c[1], c[2], c[3], c[4]};
  std::vector<StabilizerPair> stabs = stabilizer_quadratics(F);
  if (stabs.empty()) {
    std::cout << "no integral stabilizer quadratics\n";
    return 0;
  }
  for (const StabilizerPair& s : stabs) {
    LKPair lk = lk_invariants(s.f, F);
    Int l2 = lk.L * lk.L;
    Int kabs = abs(lk.K);
    Int h = l2 > kabs ? l2 : kabs;
    std::cout << "omega = " << s.omega << "  f = " << to_string(s.f)
              << "  L = " << lk.L << "  K = " << lk.K << "  H = " << h << '\n';
  }
  return 0;
}

int cmd_lattice(const std::vector<long>& c, int chart) {
  QuadForm f{c[0], c[1], c[2]};
  if (chart == 0) chart = preferred_chart(f);
  LatticeBasis basis = lattice_basis(f, chart);
  std::cout << "chart " << basis.chart << " (coefficients fixed by the chart"
            << (basis.chart == 1 ? ": x^4 and x^3*y" : ": x^4 and y^4")
            << ")\n";
  for (const auto& row : basis.rows)
    std::cout << "  [" << row[0] << ", " << row[1] << ", " << row[2] << "]\n";
  std::cout << "det = " << lattice_det(f, chart) << "  s_f = " << s_f(f)
            << '\n';
  return 0;
}

int cmd_orthogonal(const std::vector<long>& c) {
  QuadForm f = canonicalize_with_notice(QuadForm{c[0], c[1], c[2]});
  OrthGroup O = orthogonal_group(f);
  if (O.structure_tag == OrthGroup::Structure::Finite) {
    std::cout << "finite group of order " << O.finite_elements.size() << '\n';
    for (const Mat2& T : O.finite_elements)
      std::cout << "  " << to_string(T) << '\n';
  } else {
    std::cout << "infinite cyclic modulo torsion\n";
    std::cout << "generator " << to_string(*O.infinite_generator) << '\n';
    std::cout << "torsion (" << O.finite_elements.size() << " elements)\n";
    for (const Mat2& T : O.finite_elements)
      std::cout << "  " << to_string(T) << '\n';
  }
  std::cout << "r_f = " << r_f(f) << '\n';
  return 0;
}

int cmd_pell(long d) {
  Int D(d);
  PellSolution p = pell_least(D);
  std::cout << "least solution of u^2 - " << D << " v^2 = +-4: u = " << p.u
            << ", v = " << p.v << ", sign = " << (p.sign > 0 ? "+4" : "-4")
            << '\n';
  std::cout << "t_D = " << f6(fundamental_t(D)) << '\n';
  return 0;
}

int cmd_neg_pell(long alpha, long beta) {
  Int a(alpha), b(beta);
  Int D = b * b + 4 * a * a;
  NegPellReport r = negative_pell_criterion(a, b);
  std::cout << "D = " << D << '\n';
  std::cout << "u^2 - D v^2 = -4 solvable: " << (r.pell_solvable ? "yes" : "no")
            << '\n';
  std::cout << "divisor shapes equivalent: "
            << (r.shape_equivalent ? "yes" : "no") << '\n';
  return 0;
}

void print_report_human(const ClassCountReport& rep) {
  std::cout << "f = " << to_string(rep.f) << "  X = " << rep.X << '\n';
  std::cout << "raw members       " << rep.raw_forms << '\n';
  std::cout << "N_D4              " << rep.n_d4 << '\n';
  std::cout << "N_C4              " << rep.n_c4 << '\n';
  std::cout << "N_V4              " << rep.n_v4 << '\n';
  std::cout << "reducible type 1  " << rep.reducible_type1 << '\n';
  std::cout << "reducible type 2  " << rep.reducible_type2 << '\n';
  std::cout << "r_f = " << rep.r << "  s_f = " << rep.s << '\n';
  std::cout << "main term         " << f6(rep.main_term) << '\n';
  std::cout << "ratio N_D4/main   "
            << f6(rep.main_term > 0 ? rep.n_d4 / rep.main_term : 0.0) << '\n';
  std::cout << "elapsed           " << f6(rep.elapsed_ms) << " ms\n";
}

int cmd_count(const std::vector<long>& c, long X,
              const std::string& report) {
  QuadForm f = canonicalize_with_notice(QuadForm{c[0], c[1], c[2]});
  ClassCountReport rep = count_classes(f, Int(X));
  if (report == "json")
    std::cout << report_json(rep) << '\n';
  else if (report == "csv")
    std::cout << csv_header() << '\n' << csv_row(rep) << '\n';
  else
    print_report_human(rep);
  return 0;
}

int cmd_census(long X, const std::string& report) {
  CensusResult res = corollary_census(Int(X));
  double ratio =
      res.predicted > 0 ? static_cast<double>(res.observed) / res.predicted
                        : 0.0;
  if (report == "json") {
    std::cout << "{\"census\":[";
    for (size_t i = 0; i < res.reports.size(); ++i) {
      if (i) std::cout << ',';
      std::cout << report_json(res.reports[i]);
    }
    std::cout << "],\"observed\":" << res.observed
              << ",\"predicted\":" << f6(res.predicted)
              << ",\"ratio\":" << f6(ratio) << "}\n";
  } else if (report == "csv") {
    std::cout << csv_header() << '\n';
    for (const ClassCountReport& rep : res.reports)
      std::cout << csv_row(rep) << '\n';
    std::cerr << "observed = " << res.observed
              << "  predicted = " << f6(res.predicted)
              << "  ratio = " << f6(ratio) << '\n';
  } else {
    for (const ClassCountReport& rep : res.reports) {
      print_report_human(rep);
      std::cout << '\n';
    }
    std::cout << "observed D4+C4 classes  " << res.observed << '\n';
    std::cout << "predicted X^{3/2}logX/9 " << f6(res.predicted) << '\n';
    std::cout << "ratio                   " << f6(ratio) << '\n';
  }
  return 0;
}

int print_suite(const std::string& name, const suites::SuiteResult& r) {
  std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << name << " — " << r.detail
            << '\n';
  return r.pass ? 0 : 1;
}

struct VerifyFlags {
  long dmax = 0;
  long x = 0;
  long points = 0;
  long bound = 0;
  long random = 0;
  std::string family;
};

int cmd_verify(const std::string& suite, const VerifyFlags& fl) {
  using namespace suites;
  int bad = 0;
  if (suite == "identities") {
    bad += print_suite(suite, identities(fl.points > 0 ? fl.points : 10000));
  } else if (suite == "determinants") {
    bad += print_suite(suite, determinants(fl.bound > 0 ? fl.bound : 20));
  } else if (suite == "pell") {
    bad += print_suite(suite, pell(fl.dmax > 0 ? fl.dmax : 2000));
  } else if (suite == "orthogonal") {
    bad += print_suite(
        suite, orthogonal(fl.random > 0 ? static_cast<int>(fl.random) : 200));
  } else if (suite == "galois") {
    bad += print_suite(suite, galois());
  } else if (suite == "multiplicity") {
    bad += print_suite(suite, multiplicity(fl.x > 0 ? fl.x : 500));
  } else if (suite == "census") {
    bad += print_suite("census-oracle", census_oracle(fl.x > 0 ? fl.x : 120));
    bad += print_suite("c4v4-smallness", smallness(10000));
  } else if (suite == "asymptotic") {
    if (!fl.family.empty()) {
      QuadForm f = parse_quad(fl.family);
      bad += print_suite(
          suite, asymptotic_single(f, fl.x > 0 ? fl.x : 40000));
    } else {
      bad += print_suite(suite, asymptotic());
    }
  } else if (suite == "negpell") {
    bad += print_suite(suite, negpell(fl.dmax > 0 ? fl.dmax : 500));
  } else {  // params — the option validator rejects anything else
    bad += print_suite(suite, params(fl.points > 0
                                         ? static_cast<int>(fl.points)
                                         : 100));
  }
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact classification and counting of integral binary quartic "
               "forms with a quadratic stabilizer"};
  app.require_subcommand(1);

  std::vector<long> quartic_args;
  std::vector<long> quad_args;
  long arg_x = 0;
  int arg_chart = 0;
  long arg_d = 0;
  long arg_alpha = 0, arg_beta = 0;
  int arg_threads = 0;
  std::string arg_report;
  std::string arg_suite;
  VerifyFlags verify_flags;

  CLI::App* analyze = app.add_subcommand("analyze", "invariants, stabilizers, "
                                                    "and Galois class of one "
                                                    "quartic form (JSON)");
  analyze->add_option("coeffs", quartic_args, "a4 a3 a2 a1 a0")
      ->expected(5)
      ->required();

  CLI::App* stab = app.add_subcommand("stabilizers", "stabilizer quadratics "
                                                     "of one quartic form");
  stab->add_option("coeffs", quartic_args, "a4 a3 a2 a1 a0")
      ->expected(5)
      ->required();

  CLI::App* lattice = app.add_subcommand("lattice", "Hermite basis and "
                                                    "determinant of the "
                                                    "stabilized-completion "
                                                    "lattice");
  lattice->add_option("coeffs", quad_args, "alpha beta gamma")
      ->expected(3)
      ->required();
  lattice->add_option("--chart", arg_chart, "coordinate chart (1 or 2)")
      ->check(CLI::IsMember({1, 2}));

  CLI::App* orth = app.add_subcommand("orthogonal", "integral orthogonal "
                                                    "group of a quadratic "
                                                    "form");
  orth->add_option("coeffs", quad_args, "alpha beta gamma")
      ->expected(3)
      ->required();

  CLI::App* pell = app.add_subcommand("pell", "least solution of "
                                              "u^2 - D v^2 = +-4");
  pell->add_option("D", arg_d, "positive nonsquare D")->required();

  CLI::App* negp = app.add_subcommand("neg-pell", "negative Pell criterion "
                                                  "for D = beta^2 + 4 alpha^2");
  negp->add_option("alpha", arg_alpha, "alpha")->required();
  negp->add_option("beta", arg_beta, "beta")->required();

  CLI::App* count = app.add_subcommand("count", "class counts over the "
                                                "fundamental domain at "
                                                "height X");
  count->add_option("coeffs", quad_args, "alpha beta gamma")
      ->expected(3)
      ->required();
  count->add_option("X", arg_x, "height bound")->required()
      ->check(CLI::NonNegativeNumber);
  count->add_option("--report", arg_report, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  count->add_option("--threads", arg_threads, "worker threads (env "
                                              "QC_THREADS as fallback)");

  CLI::App* census = app.add_subcommand("census", "combined D4+C4 census "
                                                  "over the three unit "
                                                  "discriminant classes");
  census->add_option("X", arg_x, "height bound (>= 10)")->required();
  census->add_option("--report", arg_report, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  census->add_option("--threads", arg_threads, "worker threads (env "
                                               "QC_THREADS as fallback)");

  CLI::App* verify = app.add_subcommand("verify", "re-derivation suites "
                                                  "(pass/fail)");
  verify->add_option("suite", arg_suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"identities", "determinants", "pell",
                             "orthogonal", "galois", "multiplicity", "census",
                             "asymptotic", "negpell", "params"}));
  verify->add_option("--dmax", verify_flags.dmax, "upper bound on D");
  verify->add_option("--x", verify_flags.x, "height bound");
  verify->add_option("--f", verify_flags.family,
                     "stabilizer form a,b,c (asymptotic only)");
  verify->add_option("--points", verify_flags.points, "sample size");
  verify->add_option("--bound", verify_flags.bound, "coefficient bound");
  verify->add_option("--random", verify_flags.random, "random form count");
  verify->add_option("--threads", arg_threads, "worker threads (env "
                                               "QC_THREADS as fallback)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends: exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    apply_threads(arg_threads);
    if (analyze->parsed()) return cmd_analyze(quartic_args);
    if (stab->parsed()) return cmd_stabilizers(quartic_args);
    if (lattice->parsed()) return cmd_lattice(quad_args, arg_chart);
    if (orth->parsed()) return cmd_orthogonal(quad_args);
    if (pell->parsed()) return cmd_pell(arg_d);
    if (negp->parsed()) return cmd_neg_pell(arg_alpha, arg_beta);
    if (count->parsed()) return cmd_count(quad_args, arg_x, arg_report);
    if (census->parsed()) return cmd_census(arg_x, arg_report);
    if (verify->parsed()) return cmd_verify(arg_suite, verify_flags);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
