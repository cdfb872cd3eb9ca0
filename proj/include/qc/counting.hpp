#pragma once
// Enumeration of the fundamental-domain slice S_f(X) inside the family of
// integral quartics stabilized by a fixed quadratic form f, and the resulting
// GL2(Z)-class counts split by Galois type.
//
// For a primitive canonical f with disc(f) != 0, V_Zf(X) denotes the integral
// quartics F stabilized by f whose invariant pair (L, K) satisfies
// max(L^2, |K|) <= X and whose discriminant is nonzero.  S_f(X) is the subset
// cut out by one extra window condition per shape of f:
//
//   * f positive definite: no extra condition (the orthogonal group of f is
//     finite, so the height ball itself is a fundamental set).
//   * f reducible (gamma = 0, beta > 0): the y^4-coefficient C of F must lie
//     in the closed window beta^2/8 <= |C| <= 5*beta^2*X/18.
//   * f indefinite with nonsquare discriminant D: with L1, L2 the linear
//     covariant pair of (f, F) and E_i = L1 -+ sqrt(D)*L2, the flow window
//     1 <= E1*Z/E2 < eps^8 must hold, where eps is the fundamental unit
//     attached to D and Z is a branch factor (1 on the branches with
//     L^2+4K > 0, an explicit algebraic factor on the two branches with
//     L^2+4K < 0).
//
// Every GL2(Z)-class meeting V_Zf meets S_f(X), and classes of nonsquare
// quartic discriminant meet it in exactly r_f = |O_f(Z)| / |{+-1}| forms, so
// dividing raw tallies by r_f yields class counts.  Classes of square quartic
// discriminant (the V4 classes) are deduplicated explicitly.
//
// Concurrency: enumeration parallelizes over lattice fibers with OpenMP when
// available; per-thread tallies are merged through associative sums and the
// collected square-discriminant forms are sorted before deduplication, so
// results are deterministic and independent of the schedule.  A serial
// box-sweep reference enumerator is kept alongside for testing.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qc/forms.hpp"
#include "qc/quadarith.hpp"

namespace qc {

// Exact record behind one membership decision.  `member` is the verdict; the
// remaining fields expose the data the verdict was computed from so tests can
// check the window arithmetic itself.
struct DomainCondition {
  enum class Kind { PosDef, Reducible, Indefinite };

  Kind kind = Kind::PosDef;
  Int height;           // max(L^2, |K|), compared against X
  bool member = false;  // final decision at the given X

  // Reducible shape only: the window bounds for |C| and the coefficient C
  // itself (C is the y^4-coefficient of F).
  Rat window_lo;  // beta^2 / 8
  Rat window_hi;  // 5 * beta^2 * X / 18
  Int c_coefficient;

  // Indefinite shape only: E1 = L1 - sqrt(D) L2, E2 = L1 + sqrt(D) L2, the
  // eighth power of the fundamental unit, and the branch index i in {1,..,4}
  // of the hyperbolic parametrization (decided by the signs of L^2+4K and
  // E2).
  QuadFieldElem e1;
  QuadFieldElem e2;
  QuadFieldElem eps8;
  int branch = 0;
};

// Class-count summary for one pair (f, X).  Raw tallies count forms in
// S_f(X); the N_* fields count GL2(Z)-classes.
struct ClassCountReport {
  QuadForm f;
  Int X;
  long long raw_forms = 0;        // all enumerated members of S_f(X)
  long long n_d4 = 0;             // classes with Galois group D4
  long long n_c4 = 0;             // classes with Galois group C4
  long long n_v4 = 0;             // classes with Galois group V4
  long long reducible_type1 = 0;  // raw forms m * g * g', factors swapped by
                                  // the twist
  long long reducible_type2 = 0;  // raw forms with both quadratic factors
                                  // anti-fixed by the twist
  double main_term = 0.0;         // closed-form leading term at this X
  int r = 0;                      // r_f = |O_f(Z)| / |{+-1}|
  int s = 0;                      // lattice index factor s_f
  double elapsed_ms = 0.0;
};

// Result of the three-form census: observed = sum of N_D4 + N_C4 over the
// forms x^2+y^2, x^2+xy, x^2+2xy; predicted = X^{3/2} log X / 9.
struct CensusResult {
  std::array<ClassCountReport, 3> reports;
  long long observed = 0;
  double predicted = 0.0;
};

// Evaluates the membership condition for F in S_f(X) and returns the full
// record.  Requires f primitive with disc(f) != 0, alpha > 0, and gamma = 0
// with beta > 0 when disc(f) is a square; requires F integral, stabilized by
// f, with disc(F) != 0.  Violations raise std::domain_error.
DomainCondition domain_condition(const QuadForm& f, const QuarticForm& F,
                                 const Int& X);

// Convenience wrapper: domain_condition(f, F, X).member.
bool in_S(const QuadForm& f, const QuarticForm& F, const Int& X);

// Enumerates S_f(X) exactly, fibered over the coefficient lattice of the
// family (parallel when OpenMP is enabled).  Forms are returned in a
// deterministic order.  X < 0 is rejected; X = 0 yields the empty set.
// Intended for inspection and moderate X: the result is materialized, so for
// large X prefer count_classes, which streams.
std::vector<QuarticForm> enumerate_S(const QuadForm& f, const Int& X);

// Serial reference enumerator: sweeps a proven-complete coefficient box and
// keeps the forms that pass the public membership predicate.  Slower than
// enumerate_S but structurally independent of the fibered walker's interval
// arithmetic; kept for tests and benchmarks.
std::vector<QuarticForm> enumerate_S_reference(const QuadForm& f, const Int& X);

// Streams S_f(X), classifies every member, divides the D4 and C4 tallies by
// r_f (raising std::logic_error if the division is not exact, which would
// mean the fundamental-domain window is wrong), and deduplicates the
// square-discriminant classes explicitly.  Requires f canonical (exactly
// reduce_quad(f).first) and primitive.
ClassCountReport count_classes(const QuadForm& f, const Int& X);

// Decides GL2(Z)-equivalence of two stabilized quartics with nonzero
// discriminant: F ~ G iff twisted_act(F, T) == G for some unimodular T.
// Returns such a T when found.  Requires both forms to have at least one
// stabilizer quadratic (std::domain_error otherwise).
std::optional<Mat2> quartic_equivalent(const QuarticForm& F,
                                       const QuarticForm& G);

// Closed-form leading term of the class count for canonical primitive f:
//   positive definite: (1/(s r)) * 13 pi / (27 D^{3/2}) * X^{3/2}
//   reducible:         (1/(s r)) * 8 / (9 beta^3) * X^{3/2} log X
//   indefinite:        (1/(s r)) * 32 t_D / (9 D^{3/2}) * X^{3/2}
// with D = |disc(f)| and t_D the logarithm of the fundamental unit.
double main_term(const QuadForm& f, const Int& X);

// Ground-truth class counts for small X: enumerates a coefficient box that
// provably contains a representative of every class meeting the height ball,
// then partitions the hits into classes with quartic_equivalent.  X above the
// cap is rejected (the partition is quadratic in the number of forms).
ClassCountReport brute_force_classes(const QuadForm& f, const Int& X,
                                     const Int& cap = Int(200));

// Runs count_classes for x^2+y^2, x^2+xy, x^2+2xy and compares the summed
// D4+C4 class count against the predicted X^{3/2} log X / 9.
CensusResult corollary_census(const Int& X);

// CSV serialization of a report (header line and one data row).
std::string csv_header();
std::string csv_row(const ClassCountReport& r);

// JSON serialization of a report (single-line object).
std::string report_json(const ClassCountReport& r);

}  // namespace qc
