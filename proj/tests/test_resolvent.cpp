#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qc/forms.hpp"
#include "qc/resolvent.hpp"
#include "test_util.hpp"

using namespace qc;
using testutil::random_unimodular;

namespace {
const QuarticForm F_fermat{1, 0, 0, 0, 1};  // x^4 + y^4
const QuarticForm F_m2{1, 0, 0, 0, -2};     // x^4 - 2y^4
const QuarticForm F_phi5{1, 1, 1, 1, 1};
const QuarticForm F_p4{1, 0, 0, 0, 4};  // x^4 + 4y^4
const QuadForm f_sum{1, 0, 1};
const QuadForm f_xy{0, 1, 0};

std::vector<Int> roots_of(const QuarticForm& F) { return integer_roots(cubic_resolvent(F)); }
}  // namespace

TEST_CASE("cubic resolvent coefficients") {
  MonicCubic q = cubic_resolvent(F_fermat);  // x^3 - 36x
  CHECK(q.c2 == 0);
  CHECK(q.c1 == -36);
  CHECK(q.c0 == 0);
  q = cubic_resolvent(F_m2);  // x^3 + 72x
  CHECK(q.c1 == 72);
  CHECK(q.c0 == 0);
  q = cubic_resolvent(F_phi5);  // x^3 - 30x + 25
  CHECK(q.c1 == -30);
  CHECK(q.c0 == 25);
}

TEST_CASE("integer roots of monic cubics") {
  CHECK(roots_of(F_fermat) == std::vector<Int>{-6, 0, 6});
  CHECK(roots_of(F_m2) == std::vector<Int>{0});
  CHECK(roots_of(F_phi5) == std::vector<Int>{5});
  CHECK(roots_of(F_p4) == std::vector<Int>{-12, 0, 12});
  // no integer roots at all
  CHECK(integer_roots(MonicCubic{0, 0, 2}).empty());
  // triple root at 0
  CHECK(integer_roots(MonicCubic{0, 0, 0}) == std::vector<Int>{0});
  CHECK_THROWS_AS(integer_roots(MonicCubic{Rat(1, 2), 0, 0}), std::domain_error);
}

TEST_CASE("covariant extraction at resolvent roots") {
  CHECK(covariant_from_root(F_fermat, -6) == QuadForm{1, 0, 1});
  CHECK(covariant_from_root(F_fermat, 0) == f_xy);
  CHECK(covariant_from_root(F_fermat, 6) == QuadForm{1, 0, -1});
  CHECK(covariant_from_root(F_m2, 0) == f_xy);
  CHECK(covariant_from_root(F_phi5, 5) == QuadForm{1, 0, -1});
  CHECK(covariant_from_root(F_p4, -12) == QuadForm{1, 0, 2});
  CHECK(covariant_from_root(F_p4, 0) == f_xy);
  CHECK(covariant_from_root(F_p4, 12) == QuadForm{1, 0, -2});
  // omega that is not a resolvent root: the combination is not a square
  CHECK_THROWS_AS(covariant_from_root(F_fermat, 1), std::domain_error);
  CHECK_THROWS_AS(covariant_from_root(F_phi5, -5), std::domain_error);
}

TEST_CASE("stabilizer_quadratics lists ascending roots") {
  auto st = stabilizer_quadratics(F_fermat);
  REQUIRE(st.size() == 3);
  CHECK(st[0].omega == -6);
  CHECK(st[0].f == QuadForm{1, 0, 1});
  CHECK(st[1].omega == 0);
  CHECK(st[1].f == f_xy);
  CHECK(st[2].omega == 6);
  CHECK(st[2].f == QuadForm{1, 0, -1});

  st = stabilizer_quadratics(F_m2);
  REQUIRE(st.size() == 1);
  CHECK(st[0].omega == 0);
  CHECK(st[0].f == f_xy);

  st = stabilizer_quadratics(F_phi5);
  REQUIRE(st.size() == 1);
  CHECK(st[0].f == QuadForm{1, 0, -1});

  st = stabilizer_quadratics(F_p4);
  REQUIRE(st.size() == 3);

  CHECK_THROWS_AS(stabilizer_quadratics(QuarticForm{Rat(1, 2), 0, 0, 0, 1}),
                  std::domain_error);
  // disc = 0 inputs are rejected
  CHECK_THROWS_AS(stabilizer_quadratics(QuarticForm{1, 0, 0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(stabilizer_quadratics(QuarticForm{1, 0, 2, 0, 1}), std::domain_error);
}

TEST_CASE("three stabilizers iff square discriminant, one definite") {
  for (const QuarticForm* F : {&F_fermat, &F_m2, &F_phi5, &F_p4}) {
    auto st = stabilizer_quadratics(*F);
    Rat d = invariants(*F).disc;
    bool square_disc = rat_is_square(d);
    CHECK(st.size() == (square_disc ? 3u : 1u));
    if (st.size() == 3) {
      int definite = 0;
      for (const auto& p : st)
        if (disc_quad(p.f) < 0) ++definite;
      CHECK(definite == 1);
    }
  }
}

TEST_CASE("lk invariants for known stabilized pairs") {
  LKPair lk = lk_invariants(f_sum, F_fermat);
  CHECK(lk.L == -6);
  CHECK(lk.K == 0);
  lk = lk_invariants(f_xy, F_fermat);
  CHECK(lk.L == 0);
  CHECK(lk.K == 36);
  lk = lk_invariants(f_xy, F_m2);
  CHECK(lk.L == 0);
  CHECK(lk.K == -72);
  // the sign of f is immaterial: -xy stabilizes and matches the same root
  lk = lk_invariants(QuadForm{0, -1, 0}, F_fermat);
  CHECK(lk.L == 0);
  CHECK(lk.K == 36);

  CHECK_THROWS_AS(lk_invariants(QuadForm{1, 1, 1}, F_fermat), std::domain_error);
  CHECK_THROWS_AS(lk_invariants(QuadForm{2, 0, 2}, F_fermat), std::domain_error);
}

TEST_CASE("explicit chart formulas agree with the covariant definition") {
  LKPair lk = explicit_lk(f_sum, F_fermat);
  CHECK(lk.L == -6);
  CHECK(lk.K == 0);
  lk = explicit_lk(f_xy, F_fermat);  // alpha = gamma = 0 chart
  CHECK(lk.L == 0);
  CHECK(lk.K == 36);
  lk = explicit_lk(f_xy, F_m2);
  CHECK(lk.L == 0);
  CHECK(lk.K == -72);
  // scale and sign invariance of the formulas
  lk = explicit_lk(QuadForm{0, 3, 0}, F_fermat);
  CHECK(lk.L == 0);
  CHECK(lk.K == 36);
  lk = explicit_lk(QuadForm{-1, 0, -1}, F_fermat);
  CHECK(lk.L == -6);
  CHECK(lk.K == 0);

  CHECK_THROWS_AS(explicit_lk(QuadForm{0, 0, 0}, F_fermat), std::domain_error);
  // f does not lie in the stabilizer lattice: K comes out non-integral
  CHECK_THROWS_AS(explicit_lk(QuadForm{2, 0, 1}, F_phi5), std::domain_error);
}

TEST_CASE("lk invariants are GL2(Z)-invariant") {
  for (const QuarticForm* F : {&F_fermat, &F_m2, &F_phi5, &F_p4}) {
    Invariants inv = invariants(*F);
    std::vector<Int> base_roots = roots_of(*F);
    for (int trial = 0; trial < 25; ++trial) {
      Mat2 U = random_unimodular(4);
      QuarticForm FU = twisted_act(*F, U);
      REQUIRE(is_integral(FU));
      auto st = stabilizer_quadratics(FU);
      std::vector<Int> roots;
      for (const auto& p : st) roots.push_back(p.omega);
      CHECK(roots == base_roots);
      for (const auto& p : st) {
        LKPair lk = lk_invariants(p.f, FU);
        CHECK(lk.L == p.omega);
        CHECK(Rat(3 * lk.L * lk.L + 3 * lk.K) == 9 * inv.I);  // K = 3I - L^2
        CHECK(inv.J == Rat(lk.L * lk.K));
        LKPair ex = explicit_lk(p.f, FU);
        CHECK(ex.L == lk.L);
        CHECK(ex.K == lk.K);
        // integrality of (L^2+4K)/9 and (2L^2-K)/9, and the disc factorization
        Int m1 = lk.L * lk.L + 4 * lk.K;
        Int m2 = 2 * lk.L * lk.L - lk.K;
        CHECK(m1 % 9 == 0);
        CHECK(m2 % 9 == 0);
        CHECK(inv.disc == Rat((m1 / 9) * (m2 / 9) * (m2 / 9)));
        // 4(2L^2-K)/9 is a multiple of disc(f) for primitive stabilizers
        Int d = disc_quad(p.f);
        CHECK((4 * (m2 / 9)) % d == 0);
        if (p.f.alpha != 0) {
          auto [L1, L2] = l1_l2(p.f, FU);
          Int a = p.f.alpha;
          CHECK(9 * (L1 * L1 - d * L2 * L2) == 4 * a * a * a * a * m1);
        }
      }
    }
  }
}

TEST_CASE("l1_l2 values and identity") {
  auto [L1, L2] = l1_l2(f_sum, F_fermat);
  CHECK(L1 == -4);
  CHECK(L2 == 0);
  CHECK_THROWS_AS(l1_l2(f_xy, F_fermat), std::domain_error);
}

TEST_CASE("height of a stabilized pair") {
  CHECK(height(f_sum, F_fermat) == 36);
  CHECK(height(f_xy, F_fermat) == 36);
  CHECK(height(f_xy, F_m2) == 72);
}
