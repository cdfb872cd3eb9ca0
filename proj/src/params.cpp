#include "qc/params.hpp"

#include <cmath>
#include <stdexcept>

namespace qc {

namespace {

constexpr double kQuarterPi = 0.78539816339744830961;

bool is_reducible_branch(ParamBranch b) {
  return b == ParamBranch::Red1 || b == ParamBranch::Red2;
}

// (-1)^i for branch index i; the rotation branch carries no sign.
double branch_sign(ParamBranch b) {
  switch (b) {
    case ParamBranch::PosDef:
      return 0.0;
    case ParamBranch::Indef1:
    case ParamBranch::Indef3:
    case ParamBranch::Red1:
      return -1.0;
    case ParamBranch::Indef2:
    case ParamBranch::Indef4:
    case ParamBranch::Red2:
      return 1.0;
  }
  throw std::logic_error("qc: param_form: unreachable branch");
}

// Checks that the stabilizer's type is the one the branch parametrizes.
void require_branch_type(const QuadForm& f, ParamBranch b) {
  const Int d = disc_quad(f);
  if (d == 0)
    throw std::domain_error("qc: param_form: stabilizer has zero discriminant");
  switch (b) {
    case ParamBranch::PosDef:
      if (!(d < 0 && f.alpha > 0))
        throw std::domain_error(
            "qc: param_form: branch requires a positive definite stabilizer");
      return;
    case ParamBranch::Indef1:
    case ParamBranch::Indef2:
    case ParamBranch::Indef3:
    case ParamBranch::Indef4:
      if (!(d > 0 && !is_square(d) && f.alpha > 0))
        throw std::domain_error(
            "qc: param_form: branch requires an indefinite stabilizer with "
            "nonsquare discriminant and positive leading coefficient");
      return;
    case ParamBranch::Red1:
    case ParamBranch::Red2:
      if (!(f.gamma == 0 && f.beta != 0))
        throw std::domain_error(
            "qc: param_form: branch requires a stabilizer of the shape "
            "alpha*x^2 + beta*x*y");
      return;
  }
  throw std::logic_error("qc: param_form: unreachable branch");
}

// Checks that (L, K) lies in the branch's admissible region, and for the
// rotation branch that t lies in the fundamental quarter turn.
void require_region(const ParamPoint& p) {
  const double w = p.L * p.L + 4.0 * p.K;  // discriminant-like invariant
  const double v = 2.0 * p.L * p.L - p.K;  // its companion
  switch (p.branch) {
    case ParamBranch::PosDef:
      if (!(w > 0.0) || v == 0.0)
        throw std::domain_error(
            "qc: param_form: (L, K) outside the admissible region "
            "(needs L^2 + 4K > 0 and 2L^2 - K != 0)");
      if (!(p.t >= -kQuarterPi && p.t < kQuarterPi))
        throw std::domain_error(
            "qc: param_form: flow parameter outside [-pi/4, pi/4)");
      return;
    case ParamBranch::Indef1:
    case ParamBranch::Indef2:
      if (!(w > 0.0) || v == 0.0)
        throw std::domain_error(
            "qc: param_form: (L, K) outside the admissible region "
            "(needs L^2 + 4K > 0 and 2L^2 - K != 0)");
      return;
    case ParamBranch::Indef3:
    case ParamBranch::Indef4:
      if (!(w < 0.0) || !(v > 0.0))
        throw std::domain_error(
            "qc: param_form: (L, K) outside the admissible region "
            "(needs L^2 + 4K < 0 and 2L^2 - K > 0)");
      return;
    case ParamBranch::Red1:
    case ParamBranch::Red2:
      if (w == 0.0 || v == 0.0)
        throw std::domain_error(
            "qc: param_form: (L, K) outside the admissible region "
            "(needs L^2 + 4K != 0 and 2L^2 - K != 0)");
      return;
  }
  throw std::logic_error("qc: param_form: unreachable branch");
}

// The raw branch map: chart coordinates as functions of (L, K, t), in the
// model stabilized by x^2 +/- y^2 for the definite/indefinite branches and
// directly over f for the reducible branches (the only ones that read f).
std::array<double, 3> raw_triple(const QuadForm& f, const ParamPoint& p) {
  const double L = p.L;
  const double K = p.K;
  const double t4 = 4.0 * p.t;
  const double sg = branch_sign(p.branch);
  switch (p.branch) {
    case ParamBranch::PosDef: {
      const double s = std::sqrt(L * L + 4.0 * K);
      const double c = std::cos(t4);
      return {-L / 8.0 + s / 24.0 * c, s / 6.0 * std::sin(t4),
              -L / 4.0 - s / 4.0 * c};
    }
    case ParamBranch::Indef1:
    case ParamBranch::Indef2: {
      const double s = std::sqrt(L * L + 4.0 * K);
      const double ch = std::cosh(t4);
      return {L / 8.0 + sg * s / 24.0 * ch, sg * s / 6.0 * std::sinh(t4),
              -L / 4.0 + sg * s / 4.0 * ch};
    }
    case ParamBranch::Indef3:
    case ParamBranch::Indef4: {
      const double s = std::sqrt(2.0 * L * L - K);
      const double ch = std::cosh(t4);
      const double sh = std::sinh(t4);
      return {L / 8.0 - L / 8.0 * ch + sg * s / 12.0 * sh,
              sg * s / 3.0 * ch - L / 2.0 * sh,
              -L / 4.0 - 3.0 * L / 4.0 * ch + sg * s / 2.0 * sh};
    }
    case ParamBranch::Red1:
    case ParamBranch::Red2: {
      const double al = f.alpha.get_d();
      const double be = f.beta.get_d();
      const double ep = std::exp(t4);
      const double em = std::exp(-t4);
      const double a2 = al * al;
      const double b2 = be * be;
      return {sg * em / (144.0 * b2) * (L * L + 4.0 * K) +
                  a2 / (2.0 * b2) * L + sg * a2 * a2 * ep / b2,
              L / 2.0 + sg * 6.0 * a2 * ep, sg * b2 * ep};
    }
  }
  throw std::logic_error("qc: param_form: unreachable branch");
}

}  // namespace

RealChart param_form(const QuadForm& f, const ParamPoint& p) {
  require_branch_type(f, p.branch);
  require_region(p);
  const std::array<double, 3> v = raw_triple(f, p);
  if (is_reducible_branch(p.branch)) return {2, v[0], v[1], v[2]};
  // Carry the model coordinates to the family stabilized by f via the
  // triangular change of basis with determinant 8*alpha^3*|disc|^{-3/2}.
  const double al = f.alpha.get_d();
  const double be = f.beta.get_d();
  const double del = std::abs(disc_quad(f).get_d()) / 4.0;
  const double sdel = std::sqrt(del);
  const double a = al * al / del * v[0];
  const double b = 2.0 * al * be / del * v[0] + al / sdel * v[1];
  const double c =
      3.0 * be * be / (2.0 * del) * v[0] + 3.0 * be / (2.0 * sdel) * v[1] + v[2];
  return {1, a, b, c};
}

double jacobian_det(const QuadForm& f, const ParamPoint& p, double h) {
  require_branch_type(f, p.branch);
  require_region(p);
  if (!(h > 0.0))
    throw std::domain_error("qc: jacobian_det: step must be positive");
  // Columns: central differences in L, K, t of the raw branch map.
  std::array<std::array<double, 3>, 3> col;
  for (int j = 0; j < 3; ++j) {
    ParamPoint hi = p;
    ParamPoint lo = p;
    (j == 0 ? hi.L : j == 1 ? hi.K : hi.t) += h;
    (j == 0 ? lo.L : j == 1 ? lo.K : lo.t) -= h;
    const std::array<double, 3> up = raw_triple(f, hi);
    const std::array<double, 3> dn = raw_triple(f, lo);
    for (int i = 0; i < 3; ++i) col[j][i] = (up[i] - dn[i]) / (2.0 * h);
  }
  return col[0][0] * (col[1][1] * col[2][2] - col[2][1] * col[1][2]) -
         col[1][0] * (col[0][1] * col[2][2] - col[2][1] * col[0][2]) +
         col[2][0] * (col[0][1] * col[1][2] - col[1][1] * col[0][2]);
}

std::array<double, 2> lk_from_chart(const QuadForm& f, const RealChart& c) {
  const double al = f.alpha.get_d();
  const double be = f.beta.get_d();
  const double ga = f.gamma.get_d();
  const double A = c.A;
  const double B = c.B;
  const double C = c.C;
  if (c.chart == 1) {
    if (f.alpha == 0)
      throw std::domain_error(
          "qc: lk_from_chart: chart 1 needs a nonzero leading coefficient");
    const double L = -(12.0 * ga * A - 3.0 * be * B + 2.0 * al * C) / (2.0 * al);
    const double d4 = be * be + 4.0 * al * ga;
    const double K =
        (72.0 * be * be * ga * A * A + 9.0 * al * d4 * B * B +
         8.0 * al * al * al * C * C - 18.0 * be * d4 * A * B +
         12.0 * al * (3.0 * be * be - 4.0 * al * ga) * A * C -
         24.0 * al * al * be * B * C) /
        (4.0 * al * al * al);
    return {L, K};
  }
  if (c.chart == 2) {
    if (!(f.gamma == 0 && f.beta != 0))
      throw std::domain_error(
          "qc: lk_from_chart: chart 2 needs a stabilizer of the shape "
          "alpha*x^2 + beta*x*y");
    const double b2 = be * be;
    const double a2 = al * al;
    const double L = (2.0 * b2 * B - 12.0 * a2 * C) / b2;
    const double K = (-b2 * b2 * B * B + 144.0 * a2 * a2 * C * C +
                      36.0 * b2 * b2 * A * C - 24.0 * a2 * b2 * B * C) /
                     (b2 * b2);
    return {L, K};
  }
  throw std::domain_error("qc: lk_from_chart: chart must be 1 or 2");
}

}  // namespace qc
