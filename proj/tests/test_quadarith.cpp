#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qc/forms.hpp"
#include "qc/quadarith.hpp"
#include "test_util.hpp"

using namespace qc;

namespace {

std::vector<std::string> sorted_names(const std::vector<Mat2>& mats) {
  std::vector<std::string> out;

  for (const Mat2& T : mats) out.push_back(to_string(T));
  std::sort(out.begin(), out.end());
  return out;
}

QuadForm random_primitive_quad(long bound) {
  while (true) {
    QuadForm f{Int(testutil::rand_in(-bound, bound)), Int(testutil::rand_in(-bound, bound)),
               Int(testutil::rand_in(-bound, bound))};
    if (is_zero(f) || disc_quad(f) == 0 || !is_primitive(f)) continue;
    return f;
  }
}

}  // namespace

TEST_CASE("exact quadratic field arithmetic") {
  QuadFieldElem golden{5, Rat(1, 2), Rat(1, 2)};  // (1 + sqrt 5)/2
  CHECK(qf_norm(golden) == Rat(-1));
  QuadFieldElem sq = qf_mul(golden, golden);
  // golden^2 = golden + 1
  CHECK(sq == qf_add(golden, QuadFieldElem{5, 1, 0}));
  QuadFieldElem inv = qf_inv(golden);
  CHECK(qf_mul(golden, inv) == QuadFieldElem{5, 1, 0});
  // (1 + sqrt 5)/2 lies between 8/5 and 13/8
  CHECK(qf_sign(qf_sub(golden, QuadFieldElem{5, Rat(8, 5), 0})) == 1);
  CHECK(qf_sign(qf_sub(golden, QuadFieldElem{5, Rat(13, 8), 0})) == -1);
  CHECK(qf_sign(QuadFieldElem{5, 0, 0}) == 0);
  CHECK(qf_sign(QuadFieldElem{5, Rat(-7), Rat(3)}) == -1);  // 3 sqrt 5 < 7
  CHECK(qf_sign(QuadFieldElem{5, Rat(-2), Rat(1)}) == 1);   // sqrt 5 > 2
  CHECK(qf_to_double(golden) == doctest::Approx(1.6180339887).epsilon(1e-9));
  CHECK_THROWS_AS(qf_inv(QuadFieldElem{5, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(qf_add(golden, QuadFieldElem{13, 1, 0}), std::domain_error);
}

TEST_CASE("least Pell +-4 solutions") {
  auto check = [](long D, long u, long v, int sign) {
    PellSolution p = pell_least(Int(D));
    CHECK(p.u == u);
    CHECK(p.v == v);
    CHECK(p.sign == sign);
    CHECK(p.u * p.u - Int(D) * p.v * p.v == sign);
  };
  check(5, 1, 1, -4);
  check(8, 2, 1, -4);
  check(12, 4, 1, 4);
  check(2, 2, 2, -4);
  check(3, 4, 2, 4);
  check(13, 3, 1, -4);
  check(17, 8, 2, -4);
  check(20, 4, 1, -4);
  check(61, 39, 5, -4);
  check(37, 12, 2, -4);
  check(21, 5, 1, 4);
  check(136, 70, 6, 4);

  CHECK_THROWS_AS(pell_least(0), std::domain_error);
  CHECK_THROWS_AS(pell_least(-5), std::domain_error);
  CHECK_THROWS_AS(pell_least(49), std::domain_error);
}

TEST_CASE("continued fraction path agrees with the brute-force oracle") {
  const Int vmax = 10000;
  for (long D = 2; D <= 300; ++D) {
    if (is_square(Int(D))) continue;
    PellSolution fast = pell_least(Int(D));
    auto slow = pell_bruteforce(Int(D), vmax);
    if (fast.v <= vmax) {
      REQUIRE_MESSAGE(slow.has_value(), "oracle missed D = ", D);
      CHECK(slow->u == fast.u);
      CHECK(slow->v == fast.v);
      CHECK(slow->sign == fast.sign);
    } else {
      CHECK_MESSAGE(!slow.has_value(), "oracle beat the continued fraction at D = ", D);
    }
  }
}

TEST_CASE("fundamental units: powers and logs") {
  CHECK(unit_power(5, 1) == QuadFieldElem{5, Rat(1, 2), Rat(1, 2)});
  CHECK(unit_power(5, 8) == QuadFieldElem{5, Rat(47, 2), Rat(21, 2)});
  CHECK(unit_power(8, 2) == QuadFieldElem{8, 3, 1});  // (1 + sqrt 2)^2 = 3 + sqrt 8
  for (long D : {5, 8, 12, 13, 61}) {
    QuadFieldElem e5 = unit_power(Int(D), 5);
    QuadFieldElem e23 = qf_mul(unit_power(Int(D), 2), unit_power(Int(D), 3));
    CHECK(e5 == e23);
    Rat n = qf_norm(unit_power(Int(D), 1));
    CHECK((n == 1 || n == -1));
  }
  CHECK(fundamental_t(5) == doctest::Approx(0.481211825060).epsilon(1e-9));
  CHECK(fundamental_t(8) == doctest::Approx(0.881373587020).epsilon(1e-9));
  CHECK(fundamental_t(12) == doctest::Approx(1.31695789692).epsilon(1e-9));
  CHECK(fundamental_t(61) == doctest::Approx(std::log(qf_to_double(unit_power(61, 1)))).epsilon(1e-12));
  CHECK_THROWS_AS(unit_power(5, 0), std::domain_error);
}

TEST_CASE("reduction: definite forms") {
  auto canon = [](long a, long b, long c) { return reduce_quad(QuadForm{a, b, c}).first; };
  CHECK(canon(2, 2, 1) == QuadForm{1, 0, 1});
  CHECK(canon(2, 3, 2) == QuadForm{1, 1, 2});
  CHECK(canon(1, -1, 1) == QuadForm{1, 1, 1});
  CHECK(canon(-1, 0, -1) == QuadForm{1, 0, 1});
  CHECK(canon(-3, 1, -5) == canon(3, -1, 5));
  // canonical shape: 0 <= beta <= alpha <= gamma
  for (int i = 0; i < 50; ++i) {
    QuadForm f = random_primitive_quad(40);
    if (disc_quad(f) >= 0) continue;
    QuadForm g = reduce_quad(f).first;
    CHECK(g.beta >= 0);
    CHECK(g.beta <= g.alpha);
    CHECK(g.alpha <= g.gamma);
  }
}

TEST_CASE("reduction: square discriminants") {
  auto canon = [](long a, long b, long c) { return reduce_quad(QuadForm{a, b, c}).first; };
  CHECK(canon(0, 1, 0) == QuadForm{1, 1, 0});
  CHECK(canon(1, 0, -1) == QuadForm{1, 2, 0});
  CHECK(canon(1, 1, 0) == QuadForm{1, 1, 0});
  CHECK(canon(2, 5, 0) == QuadForm{2, 5, 0});
  CHECK(canon(3, 5, 0) == QuadForm{2, 5, 0});  // 3 = 2^{-1} mod 5, same class
  CHECK(canon(1, 3, 0) == QuadForm{1, 3, 0});
  CHECK(canon(2, 3, 1) == canon(0, 1, 0));  // (2x + y)(x + y)
}

TEST_CASE("reduction: indefinite nonsquare discriminants") {
  auto canon = [](long a, long b, long c) { return reduce_quad(QuadForm{a, b, c}).first; };
  CHECK(canon(1, 1, -1) == QuadForm{1, 1, -1});
  CHECK(canon(1, 0, -2) == QuadForm{1, 2, -1});
  CHECK(canon(1, 0, -5) == QuadForm{1, 4, -1});
  CHECK(canon(1, 3, 1) == QuadForm{1, 1, -1});  // disc 5 has one class
  for (int i = 0; i < 40; ++i) {
    QuadForm f = random_primitive_quad(25);
    Int D = disc_quad(f);
    if (D <= 0 || is_square(D)) continue;
    QuadForm g = reduce_quad(f).first;
    CHECK(g.alpha > 0);
    CHECK(g.beta > 0);
    // reduced window: |sqrt(D) - 2 alpha| < beta < sqrt(D)
    CHECK(g.beta * g.beta < D);
    Int s = g.beta + 2 * g.alpha;
    CHECK(s * s > D);
  }
}

TEST_CASE("reduction transforms and idempotence") {
  for (int i = 0; i < 120; ++i) {
    QuadForm f = random_primitive_quad(30);
    auto [canon, T] = reduce_quad(f);
    CHECK(is_gl2z(T));
    QuadForm image = twisted_act(f, T);
    bool hits = image == canon || image == QuadForm{-canon.alpha, -canon.beta, -canon.gamma};
    CHECK(hits);
    auto again = reduce_quad(canon);
    CHECK(again.first == canon);
  }
  CHECK_THROWS_AS(reduce_quad(QuadForm{2, 4, 6}), std::domain_error);
  CHECK_THROWS_AS(reduce_quad(QuadForm{1, 2, 1}), std::domain_error);
}

TEST_CASE("equivalence testing") {
  CHECK(quad_equivalent(QuadForm{1, 0, 1}, QuadForm{2, 2, 1}).has_value());
  // class number 2 at discriminant -20
  CHECK(!quad_equivalent(QuadForm{1, 0, 5}, QuadForm{2, 2, 3}).has_value());
  // disc mismatch is a clean "no"
  CHECK(!quad_equivalent(QuadForm{1, 0, 1}, QuadForm{1, 1, 1}).has_value());
  // symmetric forms are equivalent to their shifted reversals
  CHECK(quad_equivalent(QuadForm{3, 1, 3}, QuadForm{5, 5, 3}).has_value());
  CHECK_THROWS_AS(quad_equivalent(QuadForm{2, 0, 2}, QuadForm{1, 0, 1}), std::domain_error);
  CHECK_THROWS_AS(quad_equivalent(QuadForm{1, 2, 1}, QuadForm{1, 2, 1}), std::domain_error);

  for (int i = 0; i < 80; ++i) {
    QuadForm f = random_primitive_quad(25);
    Mat2 U = testutil::random_unimodular(4);
    QuadForm g = twisted_act(f, U);
    auto T = quad_equivalent(f, g);
    REQUIRE(T.has_value());
    QuadForm image = twisted_act(f, *T);
    bool hits = image == g || image == QuadForm{-g.alpha, -g.beta, -g.gamma};
    CHECK(hits);
  }
}

TEST_CASE("orthogonal groups: definite forms") {
  OrthGroup O = orthogonal_group(QuadForm{1, 0, 1});
  CHECK(O.structure_tag == OrthGroup::Structure::Finite);
  CHECK(!O.infinite_generator.has_value());
  CHECK(sorted_names(O.finite_elements) ==
        sorted_names(orthogonal_bruteforce(QuadForm{1, 0, 1}, 1)));
  CHECK(O.finite_elements.size() == 8);

  CHECK(orthogonal_group(QuadForm{1, 1, 1}).finite_elements.size() == 12);
  CHECK(orthogonal_group(QuadForm{1, 0, 2}).finite_elements.size() == 4);
  CHECK(orthogonal_group(QuadForm{1, 1, 2}).finite_elements.size() == 4);
  CHECK(orthogonal_group(QuadForm{2, 1, 2}).finite_elements.size() == 4);
  CHECK(orthogonal_group(QuadForm{2, 0, 3}).finite_elements.size() == 4);

  for (long a = 1; a <= 4; ++a)
    for (long b = 0; b <= a; ++b)
      for (long c = a; c <= 5; ++c) {
        QuadForm f{a, b, c};
        if (!is_primitive(f) || disc_quad(f) >= 0) continue;
        if (!(reduce_quad(f).first == f)) continue;
        CHECK(sorted_names(orthogonal_group(f).finite_elements) ==
              sorted_names(orthogonal_bruteforce(f, 3)));
      }

  CHECK_THROWS_AS(orthogonal_group(QuadForm{2, 2, 1}), std::domain_error);
  CHECK_THROWS_AS(orthogonal_group(QuadForm{2, 0, 2}), std::domain_error);
}

TEST_CASE("orthogonal groups: square discriminants") {
  OrthGroup O1 = orthogonal_group(QuadForm{1, 1, 0});
  CHECK(O1.finite_elements.size() == 8);
  Mat2 R{-1, 0, 2, 1};
  CHECK(std::count(O1.finite_elements.begin(), O1.finite_elements.end(), R) == 1);
  CHECK(sorted_names(O1.finite_elements) ==
        sorted_names(orthogonal_bruteforce(QuadForm{1, 1, 0}, 3)));

  OrthGroup O2 = orthogonal_group(QuadForm{1, 2, 0});
  CHECK(O2.finite_elements.size() == 8);
  CHECK(sorted_names(O2.finite_elements) ==
        sorted_names(orthogonal_bruteforce(QuadForm{1, 2, 0}, 3)));

  // beta >= 3 leaves at most four elements
  CHECK(orthogonal_group(QuadForm{1, 3, 0}).finite_elements.size() == 4);
  CHECK(orthogonal_group(QuadForm{2, 5, 0}).finite_elements.size() == 4);
  CHECK(sorted_names(orthogonal_group(QuadForm{2, 5, 0}).finite_elements) ==
        sorted_names(orthogonal_bruteforce(QuadForm{2, 5, 0}, 6)));
}

TEST_CASE("orthogonal groups: indefinite forms") {
  QuadForm f{1, 1, -1};
  OrthGroup O = orthogonal_group(f);
  CHECK(O.structure_tag == OrthGroup::Structure::InfiniteCyclicModTorsion);
  REQUIRE(O.infinite_generator.has_value());
  CHECK(*O.infinite_generator == Mat2{0, 1, 1, 1});
  CHECK(O.finite_elements.size() == 4);  // +-I and an improper involution
  CHECK(orthogonal_bruteforce(f, 2).size() == 20);

  QuadForm g{1, 2, -1};
  OrthGroup Og = orthogonal_group(g);
  REQUIRE(Og.infinite_generator.has_value());
  CHECK(*Og.infinite_generator == Mat2{0, 1, 1, 2});
  CHECK(Og.finite_elements.size() == 4);
  CHECK(orthogonal_bruteforce(g, 2).size() == 12);

  // all torsion elements and the generator really do stabilize
  for (const Mat2& T : O.finite_elements) {
    QuadForm image = twisted_act(f, T);
    bool hits = image == f || image == QuadForm{-f.alpha, -f.beta, -f.gamma};
    CHECK(hits);
    CHECK(is_gl2z(T));
  }

  // a class with no improper coset: disc 229 has three classes and the
  // ambiguous candidates all land in the principal one
  QuadForm h = reduce_quad(QuadForm{3, 13, -5}).first;
  CHECK(!quad_equivalent(QuadForm{3, 13, -5}, QuadForm{1, 1, -57}).has_value());
  OrthGroup Oh = orthogonal_group(h);
  CHECK(Oh.finite_elements.size() == 2);
  for (const Mat2& T : orthogonal_bruteforce(h, 10)) {
    if (T == mat_identity() || T == neg(mat_identity())) continue;
    Mat2 sq = mul(T, T);
    CHECK(!(sq == mat_identity()));  // no involutions outside +-I
    CHECK(!(sq == neg(mat_identity())));
  }
}

TEST_CASE("orthogonal group indices") {
  CHECK(r_f(QuadForm{1, 0, 1}) == 2);
  CHECK(r_f(QuadForm{1, 1, 1}) == 6);
  CHECK(r_f(QuadForm{1, 1, 0}) == 2);
  CHECK(r_f(QuadForm{1, 2, 0}) == 2);
  CHECK(r_f(QuadForm{1, 0, 2}) == 2);
  CHECK(r_f(QuadForm{2, 0, 3}) == 2);
  CHECK(r_f(QuadForm{1, 1, 2}) == 2);
  CHECK(r_f(QuadForm{1, 1, -1}) == 2);
  CHECK(r_f(QuadForm{1, 2, -1}) == 2);
  CHECK(r_f(reduce_quad(QuadForm{3, 13, -5}).first) == 1);
}

TEST_CASE("negative Pell criterion") {
  auto both = [](long a, long b) {
    NegPellReport r = negative_pell_criterion(Int(a), Int(b));
    CHECK(r.pell_solvable == r.shape_equivalent);
    return r.pell_solvable;
  };
  CHECK(both(1, 2));
  CHECK(both(1, 4));
  CHECK(both(2, 1));
  CHECK(both(1, 1));
  CHECK(both(3, 1));
  CHECK(both(1, 3));
  CHECK(!both(5, 11));  // D = 221 = 13 * 17, fundamental unit has norm +1
  CHECK(!both(5, 6));   // D = 136, x^2 - 34 y^2 = -1 unsolvable

  for (long beta = 1; beta <= 17; ++beta)
    for (long alpha = 1; 4 * alpha * alpha + beta * beta <= 300; ++alpha) {
      Int D = Int(beta) * beta + 4 * Int(alpha) * alpha;
      if (gcd(Int(alpha), Int(beta)) != 1 || is_square(D)) continue;
      NegPellReport r = negative_pell_criterion(Int(alpha), Int(beta));
      CHECK_MESSAGE(r.pell_solvable == r.shape_equivalent, "split at alpha = ", alpha,
                    ", beta = ", beta);
    }

  CHECK_THROWS_AS(negative_pell_criterion(2, 4), std::domain_error);
  CHECK_THROWS_AS(negative_pell_criterion(2, 3), std::domain_error);  // D = 25
  CHECK_THROWS_AS(negative_pell_criterion(0, 1), std::domain_error);
  CHECK_THROWS_AS(negative_pell_criterion(1, -3), std::domain_error);
}
