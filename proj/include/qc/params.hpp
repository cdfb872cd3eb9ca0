#pragma once
// Floating-point parametrizations of the stabilized real quartic families.
//
// Each stabilizer type carries explicit branch maps sending an invariant
// pair (L, K) plus a one-parameter flow coordinate t to the chart
// coordinates of a real quartic fixed by the stabilizer's twisted
// involution.  The maps all share two properties that the tests verify
// numerically: reading the invariants back off the chart recovers (L, K),
// and the Jacobian determinant with respect to (L, K, t) is exactly -1/18.
//
// This module is deliberately floating point: it validates the chart
// formulas, while the exact enumeration code works from the algebraic
// membership conditions directly and never calls into it.

#include <array>

#include "qc/forms.hpp"

namespace qc {

// Branch of the parametrization.  PosDef covers quartics stabilized by a
// positive definite form (one rotation branch, flow parameter confined to
// a quarter turn).  Indef1..Indef4 cover the indefinite anisotropic case:
// branches 1 and 2 live over invariant pairs with L^2 + 4K > 0, branches
// 3 and 4 over pairs with L^2 + 4K < 0 (which forces 2L^2 - K > 0), and
// together the four images partition the stabilized family.  Red1/Red2
// cover stabilizers of the split shape alpha*x^2 + beta*x*y; both live
// over pairs with L^2 + 4K and 2L^2 - K merely nonzero, and the branch
// index is the sign of the quartic's y^4 coefficient.
enum class ParamBranch { PosDef, Indef1, Indef2, Indef3, Indef4, Red1, Red2 };

// A parameter-space point: invariants (L, K) and flow coordinate t.
// Admissible (L, K) regions depend on the branch as described above; the
// PosDef branch additionally requires t in [-pi/4, pi/4).
struct ParamPoint {
  double L = 0.0;
  double K = 0.0;
  double t = 0.0;
  ParamBranch branch = ParamBranch::PosDef;
};

// Chart coordinates of a real quartic relative to a stabilizer.
// chart == 1 lists (a4, a3, a2); chart == 2 lists (a4, a2, a0).  The
// remaining two coefficients are linear functions of these determined by
// the stabilizer, exactly as in the integral lattice completion.
struct RealChart {
  int chart = 1;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
};

// Evaluates the branch map at p and returns the chart coordinates of the
// resulting quartic stabilized by f.  Definite and indefinite branches
// are computed in the model stabilized by x^2 + y^2 resp. x^2 - y^2 and
// then carried to f by the triangular change of basis; the reducible
// branches produce chart-2 coordinates for f directly.
//
// Preconditions: disc_quad(f) != 0; the branch matches the type of f
// (PosDef: positive definite; Indef*: indefinite with nonsquare
// discriminant and alpha > 0; Red*: gamma == 0 and beta != 0); and
// (L, K, t) lies in the branch's admissible region.  Violations raise
// std::domain_error.
RealChart param_form(const QuadForm& f, const ParamPoint& p);

// Central finite-difference Jacobian determinant of the raw branch map
// (chart coordinates as functions of (L, K, t), before any change of
// basis) at p, with step h in each variable.  Columns are ordered
// (d/dL, d/dK, d/dt).  For every branch the true value is -1/18.
//
// Preconditions: as for param_form, plus h > 0.  The probe points p +/- h
// must stay inside the admissible region; that is the caller's
// responsibility (pick interior points and a small h).
double jacobian_det(const QuadForm& f, const ParamPoint& p, double h);

// Reads the invariant pair (L, K) off real chart coordinates, using the
// explicit chart formulas.  Chart 1 requires alpha != 0; chart 2 requires
// gamma == 0 and beta != 0.  Violations raise std::domain_error.
std::array<double, 2> lk_from_chart(const QuadForm& f, const RealChart& c);

}  // namespace qc
