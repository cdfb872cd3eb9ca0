#pragma once

// Splitting-field structure of stabilized quartics: the dihedral / cyclic /
// Klein four trichotomy decided exactly from the (L, K) invariants of a
// stabilizer, an independent mod-p factorization sampler, and the two
// factorization shapes of reducible stabilized quartics.

#include <map>
#include <optional>
#include <string>

#include "qc/forms.hpp"
#include "qc/resolvent.hpp"

namespace qc {

// D4/C4/V4 are assigned only to irreducible quartics with at least one
// stabilizer pair; the first two tags report why no group was computed.
enum class GaloisClass { NotIrreducible, NotSmall, D4, C4, V4 };

std::string to_string(GaloisClass c);

// Sampling evidence from factorization degree patterns mod small primes.
// patterns maps a sorted degree string ("1111", "112", "22", "13", "4") to
// the number of sampled primes showing it; probable is empty when the
// observations match none of D4/C4/V4 (e.g. a 3-cycle was seen, or a
// transposition pattern without any 4-cycle).
struct FrobeniusReport {
  std::map<std::string, int> patterns;
  std::optional<GaloisClass> probable;
};

// How a reducible stabilized quartic splits into two quadratic factors:
//   Type1: F = m * p * p', where p' is p twisted by M_f and m is rational;
//          q holds the integral cofactor with F = p*q and q proportional
//          to p'.
//   Type2: F = p * q with both factors exactly anti-fixed by M_f
//          (p twisted by M_f equals -p, same for q); m = 1.
// In both cases p*q = F holds exactly over Z.
struct ReducibilityType {
  enum class Tag { Type1, Type2 };
  Tag tag;
  QuadForm p, q;
  Rat m;
};

// The D4/C4/V4 decision for an irreducible F from one chosen primitive
// stabilizer f: V4 iff L^2+4K is a perfect square, else C4 iff
// (L^2+4K)(2L^2-K)/disc(f) is the square of a rational, else D4.
// Requires f to stabilize F and disc(F) != 0 (domain_error otherwise).
GaloisClass classify_with_stabilizer(const QuadForm& f, const QuarticForm& F);

// Full dispatch: NotIrreducible when F has a proper factor over Q, NotSmall
// when no stabilizer pair exists, otherwise the trichotomy above evaluated
// at the first stabilizer pair (the result is stabilizer-independent).
// Requires integral F with disc(F) != 0.
GaloisClass classify(const QuarticForm& F);

// Degree patterns of F(x,1) modulo the first prime_budget primes that do not
// divide a4*disc(F), with the class they point to.  Requires integral
// irreducible F and prime_budget >= 1.  Deterministic; the per-prime work
// runs in parallel and is merged in prime order.
FrobeniusReport frobenius_oracle(const QuarticForm& F, int prime_budget);

// Splits a reducible stabilized quartic into one of the two shapes above:
// scans the quadratic-factor groupings of F for a Type2 witness and
// otherwise certifies Type1.  Requires in_V_Zf(f, F), disc(F) != 0 and F
// reducible; a stabilized reducible quartic matching neither shape is an
// internal error.
ReducibilityType reducibility_type(const QuadForm& f, const QuarticForm& F);

}  // namespace qc
