#pragma once

// The depressed cubic x^3 - 3I x + J attached to a quartic form, its integer
// roots, the quadratic covariant extracted at each root, and the resulting
// stabilizer pairs with their (L, K) invariants and height.

#include <utility>
#include <vector>

#include "qc/forms.hpp"

namespace qc {

// monic cubic x^3 + c2 x^2 + c1 x + c0
struct MonicCubic {
  Rat c2, c1, c0;
  bool operator==(const MonicCubic&) const = default;
};

// omega: an integer root of the resolvent cubic of F; f: the primitive
// canonical-sign quadratic with twisted_act(F, M_f) = F extracted at omega.
struct StabilizerPair {
  Int omega;
  QuadForm f;
};

// L = omega matched to f, K = 3I - L^2; then 3I = L^2 + K and J = L*K.
struct LKPair {
  Int L, K;
  bool operator==(const LKPair&) const = default;
};

// x^3 - 3 I(F) x + J(F)
MonicCubic cubic_resolvent(const QuarticForm& F);

// all integer roots, each once, ascending; requires integer coefficients
std::vector<Int> integer_roots(const MonicCubic& q);

// Extracts g with (hessian(F) + 4*omega*F)/3 = c * g^2 for a rational c != 0,
// g primitive integral with canonical sign; checks twisted_act(F, M_g) = F.
QuadForm covariant_from_root(const QuarticForm& F, const Int& omega);

// one pair per integer root of the resolvent, ascending in omega;
// empty iff the Galois group is not small; 3 pairs iff disc(F) is a square
std::vector<StabilizerPair> stabilizer_quadratics(const QuarticForm& F);

// L and K for a primitive stabilizer f of F, by covariant root-matching
LKPair lk_invariants(const QuadForm& f, const QuarticForm& F);

// closed-form L and K read off the chart coefficients of F:
// alpha != 0 uses (A,B,C) = (a4,a3,a2); gamma = 0, beta != 0 uses (a4,a2,a0);
// alpha = 0 with gamma != 0 is handled by swapping x and y first
LKPair explicit_lk(const QuadForm& f, const QuarticForm& F);

// (L1, L2) = (4(beta^2 - alpha gamma)A - 3 alpha beta B + 2 alpha^2 C,
//             2(2 beta A - alpha B)), with the exact identity
// L1^2 - disc(f) L2^2 = 4 alpha^4 (L^2 + 4K)/9
std::pair<Int, Int> l1_l2(const QuadForm& f, const QuarticForm& F);

// H_f(F) = max(L^2, |K|)
Int height(const QuadForm& f, const QuarticForm& F);

}  // namespace qc
