#pragma once

// The three-dimensional space V_f of quartics stabilized by a fixed quadratic
// form f, its integral points as a lattice in chart coordinates (A,B,C), and
// the Hermite-normal-form bases / determinants of those lattices.
//
// Chart 1 (needs alpha != 0) uses (A,B,C) = (a4,a3,a2); chart 2 (needs
// beta != 0 and beta^2+4*alpha*gamma != 0) uses (A,B,C) = (a4,a2,a0).

#include <array>

#include "qc/forms.hpp"

namespace qc {

// HNF basis of the lattice of integral chart coordinates: rows are upper
// triangular with positive diagonal, entries above a pivot reduced into
// [0, pivot).
struct LatticeBasis {
  int chart = 1;
  std::array<std::array<Int, 3>, 3> rows;
};

// true iff F is integral and twisted_act(F, M_f) = F.
// Throws std::domain_error when disc(f) = 0 or F is not integral.
bool in_V_Zf(const QuadForm& f, const QuarticForm& F);

// The unique quartic in V_f with chart-w coordinates (A,B,C); rational
// coefficients in general, integral exactly when (A,B,C) is a lattice point.
QuarticForm complete_quartic(const QuadForm& f, int chart, const Int& A, const Int& B,
                             const Int& C);

// HNF basis of {(A,B,C) in Z^3 : complete_quartic(f, chart, A,B,C) integral}.
// Requires f primitive with disc != 0 and the chart defined for f.
LatticeBasis lattice_basis(const QuadForm& f, int chart);

// Determinant of the lattice; checked at runtime against the closed forms
// s_f*|alpha|^3 (chart 1) and s_f*|beta*(beta^2+4*alpha*gamma)|/8 (chart 2).
Int lattice_det(const QuadForm& f, int chart);

// 8 when |disc(f)| is odd, 1 when even; disc(f) = 0 is rejected.
int s_f(const QuadForm& f);

// Membership test against an HNF basis.
bool lattice_contains(const LatticeBasis& basis, const Int& A, const Int& B, const Int& C);

// Chart used by the counting routines: 1 for irreducible f, 2 for reducible
// (square discriminant).  Chart 2 is defined for every reduced reducible
// shape (alpha, beta, 0) with beta > 0.
int preferred_chart(const QuadForm& f);

}  // namespace qc
