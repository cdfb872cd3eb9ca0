#pragma once

// Binary quadratic and quartic forms over Z/Q: the twisted GL2 action,
// the classical invariants I, J, disc, the degree-4 Hessian covariant,
// heights, and factorization of integral quartics over Q.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace qc {

using Int = mpz_class;
using Rat = mpq_class;

// f(x,y) = alpha*x^2 + beta*x*y + gamma*y^2, integer coefficients.
struct QuadForm {
  Int alpha, beta, gamma;
  bool operator==(const QuadForm&) const = default;
};

// F(x,y) = a4*x^4 + a3*x^3*y + a2*x^2*y^2 + a1*x*y^3 + a0*y^4.
// Coefficients are rational so that twisted-action images stay representable;
// the arithmetic results all concern integral F.
struct QuarticForm {
  Rat a4, a3, a2, a1, a0;
  bool operator==(const QuarticForm&) const = default;
};

// Row-major 2x2 rational matrix [[t1, t2], [t3, t4]].
struct Mat2 {
  Rat t1, t2, t3, t4;
  bool operator==(const Mat2&) const = default;
};

// I, J and disc = (4I^3 - J^2)/27 of a quartic form.
struct Invariants {
  Rat I, J, disc;
};

// One irreducible primitive integral factor of a binary form:
// coeffs[i] is the x^(d-i) y^i coefficient, d = coeffs.size()-1.
// First nonzero coefficient is positive.
struct FormFactor {
  std::vector<Int> coeffs;
  int multiplicity = 1;
  bool operator==(const FormFactor&) const = default;
};

// F = content * prod factors[k]^multiplicity[k], exactly.
struct Factorization {
  Rat content;
  std::vector<FormFactor> factors;
};

// ----- small integer/rational helpers shared across modules -----

// floor(sqrt(n)); requires n >= 0.
Int isqrt(const Int& n);
// true iff n is a perfect square (n >= 0).
bool is_square(const Int& n);
// sqrt(n) when n is a perfect square, nullopt otherwise.
std::optional<Int> sqrt_if_square(const Int& n);
// true iff r is the square of a rational.
bool rat_is_square(const Rat& r);
// r as an integer; throws std::domain_error when r has denominator != 1.
Int rat_to_int(const Rat& r);

// ----- 2x2 matrices -----

Mat2 mat_identity();
Rat det(const Mat2& T);
Mat2 mul(const Mat2& A, const Mat2& B);
Mat2 inverse(const Mat2& T);
Mat2 neg(const Mat2& T);
// integer entries and det = +-1
bool is_gl2z(const Mat2& T);

// ----- quadratic forms -----

// beta^2 - 4*alpha*gamma
Int disc_quad(const QuadForm& f);
// M_f = [[beta, 2*gamma], [-2*alpha, -beta]]; det(M_f) = -disc_quad(f).
Mat2 assoc_matrix(const QuadForm& f);
bool is_primitive(const QuadForm& f);
bool is_zero(const QuadForm& f);
Int eval(const QuadForm& f, const Int& x, const Int& y);
// divides out +-content so the first nonzero coefficient is positive
QuadForm canonical_sign_primitive(const QuadForm& f);

// ----- the twisted action -----

// Coefficient vector of a degree-d binary form (d = coeffs.size()-1) acted on
// by xi_T = xi(t1*x + t2*y, t3*x + t4*y) / det(T)^(d/2); d must be even and
// det(T) != 0.  Scaling T by a nonzero rational leaves the result unchanged.
std::vector<Rat> twisted_act_coeffs(const std::vector<Rat>& coeffs, const Mat2& T);

QuarticForm twisted_act(const QuarticForm& F, const Mat2& T);
// Degree-2 twisted action; throws std::domain_error when the image is not
// integral (it always is for T in GL2(Z) and for T = M_f on forms in V_f).
QuadForm twisted_act(const QuadForm& f, const Mat2& T);

// ----- quartic forms -----

bool is_integral(const QuarticForm& F);
bool is_zero(const QuarticForm& F);
Rat eval(const QuarticForm& F, const Rat& x, const Rat& y);

// I = 12*a4*a0 - 3*a3*a1 + a2^2
// J = 72*a4*a2*a0 + 9*a3*a2*a1 - 27*a4*a1^2 - 27*a3^2*a0 - 2*a2^3
// disc = (4*I^3 - J^2)/27
Invariants invariants(const QuarticForm& F);

// Degree-4 covariant F4 = -(F_xx F_yy - F_xy^2)/3:
//   (3*a3^2 - 8*a4*a2) x^4 + 4(a3*a2 - 6*a4*a1) x^3 y
// + 2(2*a2^2 - 24*a4*a0 - 3*a3*a1) x^2 y^2
// + 4(a2*a1 - 6*a3*a0) x y^3 + (3*a1^2 - 8*a2*a0) y^4
QuarticForm hessian(const QuarticForm& F);

// max(|I|^3, J^2/4)
Rat bs_height(const QuarticForm& F);

// Factor an integral nonzero quartic into content times primitive irreducible
// integral binary forms; the product is re-expanded and checked against F.
Factorization factor_over_Q(const QuarticForm& F);

// ----- text I/O (CLI + tests) -----

// "[a4,a3,a2,a1,a0]" with exact rationals
std::string to_string(const QuarticForm& F);
// "[alpha,beta,gamma]"
std::string to_string(const QuadForm& f);
std::string to_string(const Mat2& T);
// accepts "a,b,..." with optional surrounding brackets and spaces
QuarticForm parse_quartic(const std::string& text);
QuadForm parse_quad(const std::string& text);

}  // namespace qc
