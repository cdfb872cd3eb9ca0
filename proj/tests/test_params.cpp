#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "qc/params.hpp"
#include "qc/quadlattice.hpp"
#include "qc/resolvent.hpp"
#include "test_util.hpp"

using qc::Int;
using qc::ParamBranch;
using qc::ParamPoint;
using qc::QuadForm;
using qc::QuarticForm;
using qc::RealChart;

namespace {

const std::vector<ParamBranch> kAllBranches = {
    ParamBranch::PosDef, ParamBranch::Indef1, ParamBranch::Indef2,
    ParamBranch::Indef3, ParamBranch::Indef4, ParamBranch::Red1,
    ParamBranch::Red2};

double rand_real(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(qc::testutil::rng());
}

// Draws (L, K) inside the branch's admissible region, bounded and bounded
// away from the region walls so finite differences stay well conditioned.
std::array<double, 2> sample_lk(ParamBranch b) {
  for (;;) {
    const double L = rand_real(-6.0, 6.0);
    double w = rand_real(0.5, 30.0);  // target value of L^2 + 4K
    switch (b) {
      case ParamBranch::PosDef:
      case ParamBranch::Indef1:
      case ParamBranch::Indef2:
        break;
      case ParamBranch::Indef3:
      case ParamBranch::Indef4:
        w = -w;
        break;
      case ParamBranch::Red1:
      case ParamBranch::Red2:
        if (qc::testutil::rand_in(0, 1)) w = -w;
        break;
    }
    const double K = (w - L * L) / 4.0;
    if (std::abs(2.0 * L * L - K) < 0.25) continue;
    return {L, K};
  }
}

double sample_t(ParamBranch b) {
  if (b == ParamBranch::PosDef) return rand_real(-0.7, 0.7);
  return rand_real(-0.4, 0.4);
}

QuadForm sample_stabilizer(ParamBranch b) {
  for (;;) {
    switch (b) {
      case ParamBranch::PosDef: {
        QuadForm f{qc::testutil::rand_in(1, 3), qc::testutil::rand_in(-3, 3),
                   qc::testutil::rand_in(1, 4)};
        if (disc_quad(f) < 0) return f;
        break;
      }
      case ParamBranch::Indef1:
      case ParamBranch::Indef2:
      case ParamBranch::Indef3:
      case ParamBranch::Indef4: {
        QuadForm f{qc::testutil::rand_in(1, 3), qc::testutil::rand_in(-3, 3),
                   qc::testutil::rand_in(-4, 4)};
        const Int d = disc_quad(f);
        if (d > 0 && !qc::is_square(d)) return f;
        break;
      }
      case ParamBranch::Red1:
      case ParamBranch::Red2: {
        QuadForm f{qc::testutil::rand_in(-2, 2), qc::testutil::rand_in(-3, 3),
                   0};
        if (f.beta != 0) return f;
        break;
      }
    }
  }
}

}  // namespace

TEST_CASE("the rotation branch reproduces the model quartic") {
  const QuadForm f{1, 0, 1};
  const ParamPoint p{-6.0, 0.0, 0.0, ParamBranch::PosDef};
  const RealChart c = qc::param_form(f, p);
  REQUIRE(c.chart == 1);
  CHECK(std::abs(c.A - 1.0) <= 1e-12);
  CHECK(std::abs(c.B) <= 1e-12);
  CHECK(std::abs(c.C) <= 1e-12);

  // The completed quartic is x^4 + y^4, whose invariants are exactly the
  // inputs we fed in.
  const QuarticForm F = qc::complete_quartic(f, 1, 1, 0, 0);
  CHECK(F == QuarticForm{1, 0, 0, 0, 1});
  const qc::LKPair lk = qc::explicit_lk(f, F);
  CHECK(lk.L == -6);
  CHECK(lk.K == 0);
  const std::array<double, 2> back = qc::lk_from_chart(f, c);
  CHECK(std::abs(back[0] + 6.0) <= 1e-12);
  CHECK(std::abs(back[1]) <= 1e-12);
}

TEST_CASE("split-shape branches match hand-expanded values at t = 0") {
  // f = x^2 + xy, branch index 2, (L, K) = (2, 3): the chart triple is
  // (19/9, 7, 1) and the invariant readout returns (2, 3) exactly.
  const QuadForm f{1, 1, 0};
  const RealChart c =
      qc::param_form(f, ParamPoint{2.0, 3.0, 0.0, ParamBranch::Red2});
  REQUIRE(c.chart == 2);
  CHECK(std::abs(c.A - 19.0 / 9.0) <= 1e-12);
  CHECK(std::abs(c.B - 7.0) <= 1e-12);
  CHECK(std::abs(c.C - 1.0) <= 1e-12);
  const std::array<double, 2> back = qc::lk_from_chart(f, c);
  CHECK(std::abs(back[0] - 2.0) <= 1e-12);
  CHECK(std::abs(back[1] - 3.0) <= 1e-12);

  // A stabilizer with vanishing leading coefficient is admissible for the
  // split-shape branches; the flow only rescales the outer coefficients.
  const QuadForm g{0, 1, 0};
  const RealChart d =
      qc::param_form(g, ParamPoint{2.0, 3.0, 0.1, ParamBranch::Red1});
  REQUIRE(d.chart == 2);
  CHECK(std::abs(d.B - 1.0) <= 1e-12);  // L/2 with no flow dependence
  const std::array<double, 2> gb = qc::lk_from_chart(g, d);
  CHECK(std::abs(gb[0] - 2.0) <= 1e-11);
  CHECK(std::abs(gb[1] - 3.0) <= 1e-11);
}

TEST_CASE("round-trip recovers the invariant pair on every branch") {
  for (ParamBranch b : kAllBranches) {
    for (int rep = 0; rep < 100; ++rep) {
      const QuadForm f = sample_stabilizer(b);
      const std::array<double, 2> lk = sample_lk(b);
      const ParamPoint p{lk[0], lk[1], sample_t(b), b};
      const RealChart c = qc::param_form(f, p);
      const std::array<double, 2> back = qc::lk_from_chart(f, c);
      CHECK(std::abs(back[0] - lk[0]) <= 1e-9 * std::max(1.0, std::abs(lk[0])));
      CHECK(std::abs(back[1] - lk[1]) <= 1e-9 * std::max(1.0, std::abs(lk[1])));
    }
  }
}

TEST_CASE("finite-difference Jacobian determinants equal -1/18") {
  const double expect = -1.0 / 18.0;
  const double h = 1e-5;

  // Pinned point on the rotation branch.
  CHECK(std::abs(qc::jacobian_det(QuadForm{1, 0, 1},
                                  ParamPoint{-6.0, 0.0, 0.1, ParamBranch::PosDef},
                                  h) -
                 expect) <= 1e-6);

  for (ParamBranch b : kAllBranches) {
    for (int rep = 0; rep < 100; ++rep) {
      const QuadForm f = sample_stabilizer(b);
      const std::array<double, 2> lk = sample_lk(b);
      const ParamPoint p{lk[0], lk[1], sample_t(b), b};
      CHECK(std::abs(qc::jacobian_det(f, p, h) - expect) <= 1e-6);
    }
  }
}

TEST_CASE("the odd chart coefficient flips with the flow direction") {
  // With beta = 0 the change of basis is diagonal, so the middle chart
  // coordinate inherits the sine/sinh parity of the branch map.
  const struct {
    ParamBranch branch;
    QuadForm f;
  } cases[] = {{ParamBranch::PosDef, QuadForm{1, 0, 1}},
               {ParamBranch::Indef1, QuadForm{1, 0, -2}},
               {ParamBranch::Indef2, QuadForm{1, 0, -2}}};
  for (const auto& cs : cases) {
    for (int rep = 0; rep < 30; ++rep) {
      const std::array<double, 2> lk = sample_lk(cs.branch);
      const double t = std::abs(sample_t(cs.branch));
      const RealChart plus =
          qc::param_form(cs.f, ParamPoint{lk[0], lk[1], t, cs.branch});
      const RealChart minus =
          qc::param_form(cs.f, ParamPoint{lk[0], lk[1], -t, cs.branch});
      const double scale = std::max(1.0, std::abs(plus.B));
      CHECK(std::abs(plus.B + minus.B) <= 1e-10 * scale);
      CHECK(std::abs(plus.A - minus.A) <= 1e-10 * std::max(1.0, std::abs(plus.A)));
      CHECK(std::abs(plus.C - minus.C) <= 1e-10 * std::max(1.0, std::abs(plus.C)));
    }
  }
}

TEST_CASE("the four hyperbolic branches occupy distinct sign sectors") {
  // Stabilizer x^2 - 2y^2: the change of basis is diagonal and positive,
  // so chart signs agree with the model coordinates' signs.
  const QuadForm f{1, 0, -2};
  const double sdel = std::sqrt(2.0);  // sqrt(|disc|/4)
  for (int rep = 0; rep < 50; ++rep) {
    const std::array<double, 2> plus_lk = sample_lk(ParamBranch::Indef1);
    const std::array<double, 2> minus_lk = sample_lk(ParamBranch::Indef3);
    const double t = rand_real(-0.4, 0.4);
    std::vector<std::array<int, 2>> sigs;
    for (ParamBranch b : {ParamBranch::Indef1, ParamBranch::Indef2,
                          ParamBranch::Indef3, ParamBranch::Indef4}) {
      const bool low = b == ParamBranch::Indef3 || b == ParamBranch::Indef4;
      const std::array<double, 2> lk = low ? minus_lk : plus_lk;
      const RealChart c = qc::param_form(f, ParamPoint{lk[0], lk[1], t, b});
      // Recovered invariants decide which region the image sits over.
      const std::array<double, 2> back = qc::lk_from_chart(f, c);
      const double w = back[0] * back[0] + 4.0 * back[1];
      // The distinguishing coordinate carries the branch index's sign: for
      // the upper region it is C + L/4, for the lower region the model's
      // middle coordinate with its hyperbolic drift removed.
      const double d = low ? sdel * c.B + lk[0] / 2.0 * std::sinh(4.0 * t)
                           : c.C + lk[0] / 4.0;
      REQUIRE(w != 0.0);
      REQUIRE(d != 0.0);
      sigs.push_back({w > 0.0 ? 1 : -1, d > 0.0 ? 1 : -1});
    }
    CHECK(sigs[0] == std::array<int, 2>{1, -1});
    CHECK(sigs[1] == std::array<int, 2>{1, 1});
    CHECK(sigs[2] == std::array<int, 2>{-1, -1});
    CHECK(sigs[3] == std::array<int, 2>{-1, 1});
    for (size_t i = 0; i < sigs.size(); ++i)
      for (size_t j = i + 1; j < sigs.size(); ++j) CHECK(sigs[i] != sigs[j]);
  }
}

TEST_CASE("branch and region mismatches are rejected") {
  const QuadForm posdef{1, 0, 1};
  const QuadForm negdef{-1, 0, -1};
  const QuadForm indef{1, 0, -2};
  const QuadForm split{1, 1, 0};
  const QuadForm squarely{1, 0, -1};  // discriminant 4, a perfect square
  const QuadForm degenerate{2, 0, 0};

  // Stabilizer type must match the branch.
  CHECK_THROWS_AS(
      qc::param_form(indef, ParamPoint{-6.0, 0.0, 0.0, ParamBranch::PosDef}),
      std::domain_error);
  CHECK_THROWS_AS(
      qc::param_form(negdef, ParamPoint{-6.0, 0.0, 0.0, ParamBranch::PosDef}),
      std::domain_error);
  CHECK_THROWS_AS(
      qc::param_form(posdef, ParamPoint{-6.0, 0.0, 0.0, ParamBranch::Indef1}),
      std::domain_error);
  CHECK_THROWS_AS(
      qc::param_form(squarely, ParamPoint{-6.0, 0.0, 0.0, ParamBranch::Indef2}),
      std::domain_error);
  CHECK_THROWS_AS(
      qc::param_form(posdef, ParamPoint{2.0, 3.0, 0.0, ParamBranch::Red1}),
      std::domain_error);
  CHECK_THROWS_AS(
      qc::param_form(degenerate, ParamPoint{-6.0, 0.0, 0.0, ParamBranch::PosDef}),
      std::domain_error);

  // (L, K) must lie in the branch's admissible region.
  CHECK_THROWS_AS(
      qc::param_form(posdef, ParamPoint{0.0, -1.0, 0.0, ParamBranch::PosDef}),
      std::domain_error);
  CHECK_THROWS_AS(
      qc::param_form(indef, ParamPoint{0.0, -1.0, 0.0, ParamBranch::Indef1}),
      std::domain_error);
  CHECK_THROWS_AS(
      qc::param_form(indef, ParamPoint{-6.0, 0.0, 0.0, ParamBranch::Indef3}),
      std::domain_error);
  CHECK_THROWS_AS(
      qc::param_form(split, ParamPoint{1.0, 2.0, 0.0, ParamBranch::Red1}),
      std::domain_error);
  CHECK_THROWS_AS(
      qc::param_form(split, ParamPoint{2.0, -1.0, 0.0, ParamBranch::Red1}),
      std::domain_error);

  // The rotation branch confines the flow parameter to a quarter turn.
  CHECK_THROWS_AS(
      qc::param_form(posdef, ParamPoint{-6.0, 0.0, 0.79, ParamBranch::PosDef}),
      std::domain_error);
  CHECK_THROWS_AS(
      qc::param_form(posdef, ParamPoint{-6.0, 0.0, -0.79, ParamBranch::PosDef}),
      std::domain_error);

  // Finite differencing needs a positive step.
  CHECK_THROWS_AS(
      qc::jacobian_det(posdef, ParamPoint{-6.0, 0.0, 0.0, ParamBranch::PosDef},
                       0.0),
      std::domain_error);

  // Chart readouts validate the chart against the stabilizer.
  CHECK_THROWS_AS(qc::lk_from_chart(QuadForm{0, 1, 0}, RealChart{1, 1, 0, 0}),
                  std::domain_error);
  CHECK_THROWS_AS(qc::lk_from_chart(posdef, RealChart{2, 1, 0, 0}),
                  std::domain_error);
  CHECK_THROWS_AS(qc::lk_from_chart(split, RealChart{3, 1, 0, 0}),
                  std::domain_error);
}

TEST_CASE("real chart readout agrees with the exact invariant computation") {
  // Random integral quartics stabilized by random forms: the floating
  // readout must match the exact integer invariants.
  int built = 0;
  int guard = 0;
  while (built < 40 && ++guard < 4000) {
    const QuadForm prim{qc::testutil::rand_in(1, 3), qc::testutil::rand_in(-3, 3),
                        qc::testutil::rand_in(-3, 3)};
    if (disc_quad(prim) == 0 || !qc::is_primitive(prim)) continue;
    qc::LatticeBasis basis;
    try {
      basis = qc::lattice_basis(prim, 1);
    } catch (const std::domain_error&) {
      continue;
    }
    const Int u = qc::testutil::rand_in(-2, 2);
    const Int v = qc::testutil::rand_in(-2, 2);
    const Int w = qc::testutil::rand_in(-2, 2);
    const Int A = u * basis.rows[0][0];
    const Int B = u * basis.rows[0][1] + v * basis.rows[1][1];
    const Int C = u * basis.rows[0][2] + v * basis.rows[1][2] + w * basis.rows[2][2];
    QuarticForm F;
    try {
      F = qc::complete_quartic(prim, 1, A, B, C);
    } catch (const std::domain_error&) {
      continue;
    }
    if (qc::invariants(F).disc == 0) continue;
    const qc::LKPair exact = qc::explicit_lk(prim, F);
    const RealChart c{1, A.get_d(), B.get_d(), C.get_d()};
    const std::array<double, 2> back = qc::lk_from_chart(prim, c);
    CHECK(std::abs(back[0] - exact.L.get_d()) <=
          1e-9 * std::max(1.0, std::abs(exact.L.get_d())));
    CHECK(std::abs(back[1] - exact.K.get_d()) <=
          1e-9 * std::max(1.0, std::abs(exact.K.get_d())));
    ++built;
  }
  CHECK(built == 40);
}
