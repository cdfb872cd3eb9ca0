#pragma once

// Pell equations and exact arithmetic in real quadratic fields, reduction and
// GL2(Z)-equivalence of binary quadratic forms, the integral orthogonal
// groups O_f(Z) with their index r_f, and the negative-Pell criterion for
// forms alpha*x^2 + beta*xy - alpha*y^2.

#include <optional>
#include <utility>
#include <vector>

#include "qc/forms.hpp"

namespace qc {

// Exact element a + b*sqrt(D) of a real quadratic field (D positive
// nonsquare).  Signs and comparisons are decided exactly.
struct QuadFieldElem {
  Int D;
  Rat a, b;
  bool operator==(const QuadFieldElem&) const = default;
};

QuadFieldElem qf_add(const QuadFieldElem& x, const QuadFieldElem& y);
QuadFieldElem qf_sub(const QuadFieldElem& x, const QuadFieldElem& y);
QuadFieldElem qf_mul(const QuadFieldElem& x, const QuadFieldElem& y);
QuadFieldElem qf_inv(const QuadFieldElem& x);
// a^2 - D*b^2
Rat qf_norm(const QuadFieldElem& x);
// exact sign (-1, 0, +1) of a + b*sqrt(D)
int qf_sign(const QuadFieldElem& x);
double qf_to_double(const QuadFieldElem& x);

// u^2 - D v^2 = sign with sign in {+4, -4}; least v, then least u (which
// prefers the -4 solution whenever one exists).
struct PellSolution {
  Int u, v;
  int sign;
};

// Least solution of u^2 - D v^2 = +-4 via the continued fraction of sqrt(D)
// (with the half-integral cube-root descent for D = 1 mod 4).
PellSolution pell_least(const Int& D);
// Trusted oracle: scan v = 1..vmax directly; nullopt when nothing found.
std::optional<PellSolution> pell_bruteforce(const Int& D, const Int& vmax);
// t_D = log((u + v*sqrt(D))/2) for the least solution, as a double.
double fundamental_t(const Int& D);
// Exact n-th power ((u + v*sqrt(D))/2)^n of the fundamental +-4 unit.
QuadFieldElem unit_power(const Int& D, unsigned long n);

// Canonical representative of the GL2(Z)-class of f under the twisted action
// (signs identified), together with T such that twisted_act(f, T) = +-canon:
//  - definite: the Gauss-reduced form with 0 <= beta <= alpha <= gamma;
//  - square discriminant: alpha*x^2 + beta*xy with beta = sqrt(disc) and the
//    least alpha in [1, beta] among the class's residues;
//  - indefinite nonsquare: the lexicographically least (alpha,beta,gamma)
//    with alpha > 0 on the union of the reduction cycles of the class.
// Requires f primitive with disc != 0.
std::pair<QuadForm, Mat2> reduce_quad(const QuadForm& f);

// T in GL2(Z) with twisted_act(f, T) = +-g when the forms are equivalent,
// nullopt otherwise.  Both forms primitive with equal nonzero discriminant
// (a disc mismatch simply returns nullopt).
std::optional<Mat2> quad_equivalent(const QuadForm& f, const QuadForm& g);

// O_f(Z) = {T in GL2(Z) : twisted_act(f, T) = +-f}.
//  - finite structure (definite or square disc): finite_elements lists the
//    whole group;
//  - indefinite irreducible: infinite_generator = T_D built from pell_least,
//    finite_elements = {+-I} plus {+-J} for the improper coset element J
//    (J^2 = +-I) when the class is ambiguous or represents (a, b, -a);
//    the full group is {+-T_D^n} union {+-T_D^n J}.
struct OrthGroup {
  enum class Structure { Finite, InfiniteCyclicModTorsion };
  std::vector<Mat2> finite_elements;
  std::optional<Mat2> infinite_generator;
  Structure structure_tag = Structure::Finite;
};

// Requires f canonical (exactly reduce_quad(f).first); rejects otherwise.
OrthGroup orthogonal_group(const QuadForm& f);

// Index of {+-I, +-M_f/sqrt(|disc|)} inside O_f(Z), the generator subgroup
// <T_D> quotiented away in the infinite case.
int r_f(const QuadForm& f);

// All integer T with |entries| <= entry_bound, det = +-1, twisted f_T = +-f.
std::vector<Mat2> orthogonal_bruteforce(const QuadForm& f, long entry_bound);

// For coprime positive (alpha, beta) with D = beta^2 + 4*alpha^2 nonsquare:
// pell_solvable    <=> x^2 - D y^2 = -4 has a solution;
// shape_equivalent <=> alpha*x^2 + beta*xy - alpha*y^2 is equivalent to some
//                      form a*x^2 + b*xy + c*y^2 with a | b.
// The two booleans coincide; tests enforce the equality rather than assuming it.
struct NegPellReport {
  bool pell_solvable;
  bool shape_equivalent;
};

NegPellReport negative_pell_criterion(const Int& alpha, const Int& beta);

}  // namespace qc
