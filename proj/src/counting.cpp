#include "qc/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qc/galois.hpp"
#include "qc/quadlattice.hpp"
#include "qc/resolvent.hpp"

namespace qc {
namespace {

[[noreturn]] void fail_domain(const std::string& msg) {
  throw std::domain_error("qc: " + msg);
}
[[noreturn]] void fail_logic(const std::string& msg) {
  throw std::logic_error("qc: " + msg);
}

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
Int cdiv(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Exact floor((a + sqrt(n)) / d) for n >= 0, d > 0.  No integer lies strictly
// between (a + floor(sqrt(n))) / d and (a + sqrt(n)) / d, so flooring the
// integer surrogate is exact.
Int floor_plus_rad(const Int& a, const Int& n, const Int& d) {
  Int t = isqrt(n);
  Int s = a + t;
  return fdiv(s, d);
}

// Exact floor((a - sqrt(n)) / d) for n >= 0, d > 0.
Int floor_minus_rad(const Int& a, const Int& n, const Int& d) {
  Int t = isqrt(n);
  Int s = a - t;
  if (t * t != n) s -= 1;
  return fdiv(s, d);
}

// Exact ceil((a + sqrt(n)) / d) and ceil((a - sqrt(n)) / d).
Int ceil_plus_rad(const Int& a, const Int& n, const Int& d) {
  return -floor_minus_rad(-a, n, d);
}
Int ceil_minus_rad(const Int& a, const Int& n, const Int& d) {
  return -floor_plus_rad(-a, n, d);
}

// Sign of x + y*sqrt(D) for integers x, y and positive nonsquare D.
int zd_sign(const Int& x, const Int& y, const Int& D) {
  int sx = sgn(x), sy = sgn(y);
  if (sy == 0) return sx;
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  Int lhs = x * x;
  Int rhs = D * y * y;
  int c = cmp(lhs, rhs);
  return sx > 0 ? c : -c;
}

// Sign of (ax + ay*sqrt(D)) * sqrt(v) - (bx + by*sqrt(D)) for v >= 0.
// Decided by a sign split followed by one exact squaring inside Z[sqrt(D)].
int cmp_radical(const Int& ax, const Int& ay, const Int& v, const Int& bx,
                const Int& by, const Int& D) {
  int sa = zd_sign(ax, ay, D);
  int sb = zd_sign(bx, by, D);
  if (sgn(v) == 0 || sa == 0) return -sb;
  if (sa > 0 && sb <= 0) return 1;
  if (sa < 0 && sb >= 0) return -1;
  Int px = v * (ax * ax + D * ay * ay) - (bx * bx + D * by * by);
  Int py = v * 2 * ax * ay - 2 * bx * by;
  int t = zd_sign(px, py, D);
  return sa > 0 ? t : -t;
}

enum class Shape { PosDef, Indefinite, Reducible };

// Per-family precomputation: shape data, the eighth unit power for the flow
// window, and exact solvers for the two reducibility screens.  The twist by
// M_f is an involution on quadratics whose fixed space is spanned by f and
// whose anti-fixed space W has basis {w1, w2}; a stabilized quartic with
// nonzero discriminant is reducible over Q iff it is a product of two
// anti-fixed quadratics (split type) or of the shape m * g * twist(g) (paired
// type), and both shapes are linear-algebra conditions on the coefficients.
struct Ctx {
  QuadForm f;
  Int a, b, g;  // the coefficients of f
  Int disc;
  Int D;  // |disc|
  Shape shape = Shape::PosDef;

  // Indefinite only: eps^8 = (u8 + v8 sqrt(D)) / 2 and eps^4 likewise.
  Int u8, v8, u4, v4;

  // Anti-fixed basis w1, w2 (coefficient triples x^2, xy, y^2) and the 5x3
  // coefficient matrix of (w1^2, w1*w2, w2^2) in the quartic basis a4..a0.
  std::array<Int, 3> w1{}, w2{};
  Int S[5][3];
  int piv[3] = {0, 1, 2};
  int npiv[2] = {3, 4};
  Int adj[3][3];  // adjugate of the pivot 3x3 block
  Int det3;

  // Coordinates of f^2 in the same span: det3 * f^2 = e0 w1^2 + e1 w1w2 +
  // e2 w2^2, and the discriminant e1^2 - 4 e0 e2.  f^2 always lies in the
  // span: the twist matrix has trace zero, so over the algebraic closure the
  // anti-fixed quadratics are spanned by the squares of the two linear forms
  // it fixes, and f is their product.
  Int e[3];
  Int edisc;
};

std::array<Int, 3> primitive_triple(Int x, Int y, Int z) {
  Int g = gcd(gcd(x, y), z);
  if (sgn(g) > 0) {
    x /= g;
    y /= g;
    z /= g;
  }
  return {x, y, z};
}

std::array<Int, 5> square_quadratic(const std::array<Int, 3>& u,
                                    const std::array<Int, 3>& v) {
  return {u[0] * v[0], u[0] * v[1] + u[1] * v[0],
          u[0] * v[2] + u[1] * v[1] + u[2] * v[0], u[1] * v[2] + u[2] * v[1],
          u[2] * v[2]};
}

void validate_shape(const QuadForm& f) {
  if (!is_primitive(f)) fail_domain("counting requires a primitive form");
  Int d = disc_quad(f);
  if (sgn(d) == 0) fail_domain("counting requires a nondegenerate form");
  if (is_square(d) && sgn(d) > 0) {
    if (sgn(f.gamma) != 0 || sgn(f.beta) <= 0 || sgn(f.alpha) <= 0)
      fail_domain(
          "square-discriminant families require the shape alpha x^2 + beta "
          "xy with alpha, beta > 0");
  } else {
    if (sgn(f.alpha) <= 0) fail_domain("counting requires alpha > 0");
  }
}

Ctx make_ctx(const QuadForm& f) {
  validate_shape(f);
  Ctx cx;
  cx.f = f;
  cx.a = f.alpha;
  cx.b = f.beta;
  cx.g = f.gamma;
  cx.disc = disc_quad(f);
  cx.D = abs(cx.disc);
  if (sgn(cx.disc) < 0) {
    cx.shape = Shape::PosDef;
  } else if (is_square(cx.disc)) {
    cx.shape = Shape::Reducible;
  } else {
    cx.shape = Shape::Indefinite;
    QuadFieldElem e8 = unit_power(cx.D, 8);
    QuadFieldElem e4 = unit_power(cx.D, 4);
    cx.u8 = rat_to_int(e8.a * 2);
    cx.v8 = rat_to_int(e8.b * 2);
    cx.u4 = rat_to_int(e4.a * 2);
    cx.v4 = rat_to_int(e4.b * 2);
  }

  // Kernel of the linear condition 2*gamma*p2 - beta*p1 + 2*alpha*p0 = 0
  // cutting out the anti-fixed quadratics.
  if (sgn(cx.b) != 0) {
    cx.w1 = primitive_triple(cx.b, 2 * cx.g, 0);
    cx.w2 = primitive_triple(0, 2 * cx.a, cx.b);
  } else {
    cx.w1 = primitive_triple(cx.a, 0, -cx.g);
    cx.w2 = {0, 1, 0};
  }
  std::array<Int, 5> c0 = square_quadratic(cx.w1, cx.w1);
  std::array<Int, 5> c1 = square_quadratic(cx.w1, cx.w2);
  std::array<Int, 5> c2 = square_quadratic(cx.w2, cx.w2);
  for (int r = 0; r < 5; ++r) {
    cx.S[r][0] = c0[r];
    cx.S[r][1] = c1[r];
    cx.S[r][2] = c2[r];
  }
  // First row triple with nonzero determinant (one always exists: the three
  // columns are independent).
  bool found = false;
  for (int i = 0; i < 5 && !found; ++i)
    for (int j = i + 1; j < 5 && !found; ++j)
      for (int k = j + 1; k < 5 && !found; ++k) {
        Int m[3][3];
        int rows[3] = {i, j, k};
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) m[r][c] = cx.S[rows[r]][c];
        Int det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                  m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                  m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if (sgn(det) != 0) {
          cx.piv[0] = i;
          cx.piv[1] = j;
          cx.piv[2] = k;
          int t = 0;
          for (int r = 0; r < 5; ++r)
            if (r != i && r != j && r != k) cx.npiv[t++] = r;
          cx.det3 = det;
          // adj[r][c] = cofactor(c, r), so that adj * m = det * identity.
          cx.adj[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
          cx.adj[0][1] = -(m[0][1] * m[2][2] - m[0][2] * m[2][1]);
          cx.adj[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
          cx.adj[1][0] = -(m[1][0] * m[2][2] - m[1][2] * m[2][0]);
          cx.adj[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
          cx.adj[1][2] = -(m[0][0] * m[1][2] - m[0][2] * m[1][0]);
          cx.adj[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
          cx.adj[2][1] = -(m[0][0] * m[2][1] - m[0][1] * m[2][0]);
          cx.adj[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
          found = true;
        }
      }
  if (!found) fail_logic("anti-fixed square columns are dependent");

  // Coordinates of f^2 in the anti-fixed square span.
  std::array<Int, 5> cf =
      square_quadratic({cx.a, cx.b, cx.g}, {cx.a, cx.b, cx.g});
  for (int r = 0; r < 3; ++r)
    cx.e[r] = cx.adj[r][0] * cf[cx.piv[0]] + cx.adj[r][1] * cf[cx.piv[1]] +
              cx.adj[r][2] * cf[cx.piv[2]];
  for (int t = 0; t < 2; ++t) {
    int r = cx.npiv[t];
    Int lhs = cx.det3 * cf[r];
    Int rhs = cx.S[r][0] * cx.e[0] + cx.S[r][1] * cx.e[1] + cx.S[r][2] * cx.e[2];
    if (lhs != rhs) fail_logic("f^2 escapes the anti-fixed square span");
  }
  cx.edisc = cx.e[1] * cx.e[1] - 4 * cx.e[0] * cx.e[2];
  if (sgn(cx.edisc) == 0) fail_logic("degenerate span coordinates for f^2");
  return cx;
}

// Coordinates of a quartic in the anti-fixed square span:
//   det3 * F = d0 w1^2 + d1 w1w2 + d2 w2^2   when in_span.
// Every reducible stabilized quartic with nonzero discriminant lies in this
// span: both reducible shapes are combinations of f^2 and squares of
// anti-fixed quadratics, and f^2 itself lies in the span.
struct SpanCoords {
  bool in_span = false;
  Int d[3];
};

SpanCoords anti_fixed_coords(const Ctx& cx, const std::array<Int, 5>& F) {
  SpanCoords sc;
  for (int r = 0; r < 3; ++r)
    sc.d[r] = cx.adj[r][0] * F[cx.piv[0]] + cx.adj[r][1] * F[cx.piv[1]] +
              cx.adj[r][2] * F[cx.piv[2]];
  for (int t = 0; t < 2; ++t) {
    int r = cx.npiv[t];
    Int lhs = cx.det3 * F[r];
    Int rhs = cx.S[r][0] * sc.d[0] + cx.S[r][1] * sc.d[1] + cx.S[r][2] * sc.d[2];
    if (lhs != rhs) return sc;
  }
  sc.in_span = true;
  return sc;
}

// For a span member, F = p*q with both rational quadratic factors anti-fixed
// iff the coordinate quadratic (d0, d1, d2) splits over Q.
bool split_test(const SpanCoords& sc) {
  Int disc_c = sc.d[1] * sc.d[1] - 4 * sc.d[0] * sc.d[2];
  return sgn(disc_c) >= 0 && is_square(disc_c);
}

// For a span member that fails split_test, decide whether F = m * g *
// twist(g) for a rational quadratic g = s*f + u, u anti-fixed.  In the span
// coordinates this reads Q = lam * q + rho * (linear)^2 with lam = m s^2 and
// rho = -m, so lam solves disc(Q - lam q) = 0:
//   A lam^2 + B lam + C = 0,
//   A = disc(e),  B = 4 d0 e2 + 4 d2 e0 - 2 d1 e1,  C = disc(d),
// and s^2 = -lam / rho must be a rational square.  With lam = tn / td the
// square class of rho is carried by the leading nonzero coefficient of
// td * d - tn * e times td * det3, so the final test is that
// -tn * (that coefficient) * det3 is a perfect square.
bool paired_test(const Ctx& cx, const SpanCoords& sc) {
  const Int(&d)[3] = sc.d;
  Int B = 4 * d[0] * cx.e[2] + 4 * d[2] * cx.e[0] - 2 * d[1] * cx.e[1];
  Int C = d[1] * d[1] - 4 * d[0] * d[2];
  Int Dt = B * B - 4 * cx.edisc * C;
  if (!is_square(Dt)) return false;
  Int st = isqrt(Dt);
  Int td = 2 * cx.edisc;
  for (int pick = 0; pick < 2; ++pick) {
    Int tn = (pick == 0) ? Int(-B + st) : Int(-B - st);
    if (sgn(tn) == 0) continue;  // lam = 0 would force s = 0, disc(F) = 0
    Int r0 = td * d[0] - tn * cx.e[0];
    Int rho = (sgn(r0) != 0) ? r0 : Int(td * d[2] - tn * cx.e[2]);
    if (sgn(rho) == 0) continue;  // F proportional to f^2 is excluded upstream
    Int target = -tn * rho * cx.det3;
    if (is_square(target)) return true;
  }
  return false;
}

// Membership in the flow window for the two branches with L^2 + 4K > 0:
//   1 <= E1/E2  and  E1/E2 < eps^8,
// with E1 = L1 - sqrt(D) L2 and E2 = L1 + sqrt(D) L2 of equal sign.
bool member_pos_w(const Ctx& cx, const Int& L1, const Int& L2) {
  int s2 = zd_sign(L1, L2, cx.D);
  // sign(E1 - E2) = -sign(L2); the ratio condition is sign(E1-E2)*s2 >= 0.
  int sl2 = sgn(L2);
  if (sl2 != 0 && sl2 == s2) return false;
  // E1 - eps^8 E2, doubled: (2 - u8) L1 - v8 D L2  +  (-(2 + u8) L2 - v8 L1) sqrt(D)
  Int gx = (2 - cx.u8) * L1 - cx.v8 * cx.D * L2;
  Int gy = -(2 + cx.u8) * L2 - cx.v8 * L1;
  return zd_sign(gx, gy, cx.D) * s2 < 0;
}

// Membership for the two branches with L^2 + 4K < 0 (so 2L^2 - K > 0), via
// the exact rearrangement of the window inequalities:
//   12 E2 L s <= sig * Y1   and   12 eps^8 E2 L s > sig * Y2,
// where s = sqrt(2L^2 - K), sig = -1 on the branch with E2 > 0 and +1 on the
// branch with E2 < 0, Y1 = 8 v L1 + 18 L^2 L2 sqrt(D) and Y2 is Y1 with the
// E2 part scaled by eps^8.
bool member_neg_w(const Ctx& cx, const Int& L, const Int& K, const Int& w,
                  const Int& v, const Int& L1, const Int& L2) {
  int s2 = zd_sign(L1, L2, cx.D);
  Int sig = (s2 > 0) ? Int(-1) : Int(1);
  Int twelveL = 12 * L;
  // Condition 1: cmp(12 L E2 * s, sig * Y1) <= 0.
  Int y1x = sig * 8 * v * L1;
  Int y1y = sig * 18 * L * L * L2;
  if (cmp_radical(twelveL * L1, twelveL * L2, v, y1x, y1y, cx.D) > 0)
    return false;
  // Condition 2, doubled throughout: 2*eps^8*E2 has integer components.
  Int e8e2x = cx.u8 * L1 + cx.v8 * cx.D * L2;
  Int e8e2y = cx.u8 * L2 + cx.v8 * L1;
  Int m = 17 * L * L - 4 * K;
  Int y2x = sig * (-2 * w * L1 + m * e8e2x);
  Int y2y = sig * (2 * w * L2 + m * e8e2y);
  return cmp_radical(twelveL * e8e2x, twelveL * e8e2y, v, y2x, y2y, cx.D) > 0;
}

// ---------------------------------------------------------------------------
// Chart-1 walker (positive definite and indefinite families).
// ---------------------------------------------------------------------------

using Sink = std::function<void(long, const std::array<Int, 5>&, const Int&,
                                const Int&, const Int&, const Int&)>;

struct Chart1Box {
  Int Abar, Bbar, Cbar;
  Int ulo, uhi;  // A = u * r00
  LatticeBasis basis;
};

// Coefficient bounds containing every member of the window: push the bounds
// of the model coordinates through the entrywise absolute value of the
// triangular change of basis.  All arithmetic is rational (upper bounds use
// isqrt(n)+1 >= sqrt(n) and isqrt(D) <= sqrt(D)).
Chart1Box chart1_box(const Ctx& cx, const Int& X) {
  Int ri = isqrt(X) + 1;
  Int r3i = isqrt(3 * X) + 1;
  Int r5i = isqrt(5 * X) + 1;
  Rat R(ri), R3(r3i), R5(r5i);
  Rat p1, p2, p3;
  if (cx.shape == Shape::PosDef) {
    p1 = R / 8 + R5 / 24;
    p2 = R5 / 6;
    p3 = R / 4 + R5 / 4;
  } else {
    Int e4i = cx.u4 + cx.v4 * (isqrt(cx.D) + 1);
    Rat E4 = Rat(e4i) / 2;  // >= eps^4
    Rat q1 = R / 8 + R5 * E4 / 24;
    Rat q2 = R5 * E4 / 6;
    Rat q3 = R / 4 + R5 * E4 / 4;
    Rat h1 = R * (1 + E4) / 8 + R3 * E4 / 12;
    Rat h2 = R3 * E4 / 3 + R * E4 / 2;
    Rat h3 = R / 4 + 3 * R * E4 / 4 + R3 * E4 / 2;
    p1 = std::max(q1, h1);
    p2 = std::max(q2, h2);
    p3 = std::max(q3, h3);
  }
  Rat delta = Rat(cx.D) / 4;
  Int sdi = isqrt(cx.D);
  Rat sdelta_lo = Rat(sdi) / 2;  // lower bound of sqrt(delta)
  Int aai = cx.a * cx.a;
  Int bbi = abs(cx.b);
  Rat a2(aai), babs(bbi);
  Rat Abar = (a2 / delta) * p1;
  Rat Bbar = (2 * Rat(cx.a) * babs / delta) * p1 + (Rat(cx.a) / sdelta_lo) * p2;
  Rat Cbar = (3 * babs * babs / (2 * delta)) * p1 +
             (3 * babs / (2 * sdelta_lo)) * p2 + p3;
  Chart1Box box;
  box.Abar = cdiv(Abar.get_num(), Abar.get_den());
  box.Bbar = cdiv(Bbar.get_num(), Bbar.get_den());
  box.Cbar = cdiv(Cbar.get_num(), Cbar.get_den());
  box.basis = lattice_basis(cx.f, 1);
  const Int& r00 = box.basis.rows[0][0];
  box.ulo = cdiv(-box.Abar, r00);
  box.uhi = fdiv(box.Abar, r00);
  return box;
}

// One fiber slab: fixed u (so fixed A), sweeping v and the C intervals cut
// out by |L| <= floor(sqrt(X)) and |K| <= X.  Membership in the flow window
// is decided per point for indefinite families.
void walk_chart1_slab(const Ctx& cx, const Int& X, const Chart1Box& box,
                      long slab, const Sink& sink) {
  const Int& r00 = box.basis.rows[0][0];
  const Int& r01 = box.basis.rows[0][1];
  const Int& r02 = box.basis.rows[0][2];
  const Int& r11 = box.basis.rows[1][1];
  const Int& r12 = box.basis.rows[1][2];
  const Int& r22 = box.basis.rows[2][2];
  Int u = box.ulo + slab;
  Int A = u * r00;
  Int RL = isqrt(X);
  Int twoa = 2 * cx.a;
  Int a3cube = 4 * cx.a * cx.a * cx.a;
  Int M = a3cube * X;  // |K| <= X  <=>  |P(C)| <= M with P = 4 a^3 K
  Int d16 = 4 * a3cube;  // 16 a^3
  Int b2 = cx.b * cx.b;
  Int s4ag = b2 + 4 * cx.a * cx.g;
  Int vlo = cdiv(-box.Bbar - u * r01, r11);
  Int vhi = fdiv(box.Bbar - u * r01, r11);
  std::array<Int, 5> coeffs;
  for (Int v = vlo; v <= vhi; ++v) {
    Int B = u * r01 + v * r11;
    Int cbase = u * r02 + v * r12;
    Int T0 = 12 * cx.g * A - 3 * cx.b * B;
    // P(C) = 8 a^3 C^2 + P1c C + P0c  (= 4 a^3 K)
    Int P1c = 12 * cx.a * (3 * b2 - 4 * cx.a * cx.g) * A -
              24 * cx.a * cx.a * cx.b * B;
    Int P0c = 72 * b2 * cx.g * A * A + 9 * cx.a * s4ag * B * B -
              18 * cx.b * s4ag * A * B;
    // |L| <= RL:
    Int lo = cdiv(-twoa * RL - T0, twoa);
    Int hi = fdiv(twoa * RL - T0, twoa);
    if (lo < -box.Cbar) lo = -box.Cbar;
    if (hi > box.Cbar) hi = box.Cbar;
    if (lo > hi) continue;
    // K <= X: 8 a^3 C^2 + P1c C + (P0c - M) <= 0.
    Int dq = P1c * P1c - 2 * d16 * (P0c - M);
    if (sgn(dq) < 0) continue;
    Int loK = ceil_minus_rad(-P1c, dq, d16);
    Int hiK = floor_plus_rad(-P1c, dq, d16);
    if (loK > lo) lo = loK;
    if (hiK < hi) hi = hiK;
    if (lo > hi) continue;
    // K >= -X: exclude the open interval where 8 a^3 C^2 + P1c C + P0c + M < 0.
    Int dq2 = P1c * P1c - 2 * d16 * (P0c + M);
    std::pair<Int, Int> segs[2];
    int nseg = 0;
    if (sgn(dq2) >= 0) {
      Int exL = floor_minus_rad(-P1c, dq2, d16);
      Int exR = ceil_plus_rad(-P1c, dq2, d16);
      if (exR <= exL + 1) {
        segs[nseg++] = {lo, hi};
      } else {
        if (lo <= std::min(hi, exL)) segs[nseg++] = {lo, std::min(hi, exL)};
        if (std::max(lo, exR) <= hi) segs[nseg++] = {std::max(lo, exR), hi};
      }
    } else {
      segs[nseg++] = {lo, hi};
    }
    for (int si = 0; si < nseg; ++si) {
      Int C = cbase + r22 * cdiv(segs[si].first - cbase, r22);
      for (; C <= segs[si].second; C += r22) {
        Int Lnum = T0 + twoa * C;
        Int L, rem;
        mpz_fdiv_qr(L.get_mpz_t(), rem.get_mpz_t(), Lnum.get_mpz_t(),
                    twoa.get_mpz_t());
        if (sgn(rem) != 0) fail_logic("nonintegral linear invariant on fiber");
        L = -L;
        Int P = (2 * a3cube * C + P1c) * C + P0c;
        Int K;
        mpz_fdiv_qr(K.get_mpz_t(), rem.get_mpz_t(), P.get_mpz_t(),
                    a3cube.get_mpz_t());
        if (sgn(rem) != 0)
          fail_logic("nonintegral quadratic invariant on fiber");
        if (abs(L) > RL || abs(K) > X)
          fail_logic("fiber interval violated the height window");
        Int w = L * L + 4 * K;
        if (sgn(w) == 0) continue;
        Int vq = 2 * L * L - K;
        if (sgn(vq) == 0) continue;
        if (cx.shape == Shape::Indefinite) {
          Int L1 = 4 * (b2 - cx.a * cx.g) * A - 3 * cx.a * cx.b * B +
                   2 * cx.a * cx.a * C;
          Int L2 = 2 * (2 * cx.b * A - cx.a * B);
          bool member = (sgn(w) > 0) ? member_pos_w(cx, L1, L2)
                                     : member_neg_w(cx, L, K, w, vq, L1, L2);
          if (!member) continue;
        }
        QuarticForm F = complete_quartic(cx.f, 1, A, B, C);
        coeffs = {rat_to_int(F.a4), rat_to_int(F.a3), rat_to_int(F.a2),
                  rat_to_int(F.a1), rat_to_int(F.a0)};
        sink(slab, coeffs, L, K, w, vq);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Chart-2 walker (reducible families, gamma = 0, beta > 0).
// ---------------------------------------------------------------------------

struct Chart2Range {
  Int cmin, cmax;  // window for |C|
  long nc = 0;     // slabs: 0..nc-1 positive C, nc..2nc-1 negative C
};

Chart2Range chart2_range(const Ctx& cx, const Int& X, bool apply_window) {
  Chart2Range r;
  Int b2 = cx.b * cx.b;
  r.cmin = apply_window ? cdiv(b2, 8) : Int(1);
  if (sgn(r.cmin) <= 0) r.cmin = 1;
  r.cmax = fdiv(5 * b2 * X, 18);
  Int n = r.cmax - r.cmin + 1;
  r.nc = (sgn(n) > 0) ? n.get_si() : 0;
  return r;
}

// One fiber slab: fixed C, sweeping L over the admissible parity class and K
// over the arithmetic progression forced by integrality of the leading
// coefficient.
void walk_chart2_slab(const Ctx& cx, const Int& X, const Chart2Range& rng,
                      long slab, const Sink& sink) {
  Int C = (slab < rng.nc) ? Int(rng.cmin + slab)
                          : Int(-(rng.cmin + (slab - rng.nc)));
  const Int& a = cx.a;
  const Int& b = cx.b;
  Int b2 = b * b;
  Int b3 = b2 * b;
  Int b4 = b2 * b2;
  Int a2 = a * a;
  // L and a1 integral on this fiber require b^2 | 12 a^2 C and b | 4 a C.
  Int t12 = 12 * a2 * C;
  if (!mpz_divisible_p(t12.get_mpz_t(), b2.get_mpz_t())) return;
  Int t4 = 4 * a * C;
  if (!mpz_divisible_p(t4.get_mpz_t(), b.get_mpz_t())) return;
  Int q12 = t12 / b2;
  Int a1 = t4 / b;
  Int RL = isqrt(X);
  Int M36 = 36 * abs(C);
  Int L = -RL;
  {
    Int par = q12 - L;
    if (mpz_odd_p(par.get_mpz_t())) L += 1;
  }
  std::array<Int, 5> coeffs;
  for (; L <= RL; L += 2) {
    Int B = (L + q12) / 2;
    Int num3 = 2 * a * (b2 * B - 4 * a2 * C);
    if (!mpz_divisible_p(num3.get_mpz_t(), b3.get_mpz_t())) continue;
    Int a3 = num3 / b3;
    // Integral leading coefficient forces K = R/b^4 (mod 36 C) with
    // R = -b^4 B^2 - 24 a^2 b^2 B C + 144 a^4 C^2.
    Int R = -b4 * B * B - 24 * a2 * b2 * B * C + 144 * a2 * a2 * C * C;
    if (!mpz_divisible_p(R.get_mpz_t(), b4.get_mpz_t())) continue;
    Int K0 = R / b4;
    Int K = K0 + M36 * cdiv(-X - K0, M36);
    for (; K <= X; K += M36) {
      Int w = L * L + 4 * K;
      if (sgn(w) == 0) continue;
      Int vq = 2 * L * L - K;
      if (sgn(vq) == 0) continue;
      Int Anum = b4 * (K + B * B) + 24 * a2 * b2 * B * C -
                 144 * a2 * a2 * C * C;
      Int Aden = 36 * b4 * C;
      Int A, rem;
      mpz_fdiv_qr(A.get_mpz_t(), rem.get_mpz_t(), Anum.get_mpz_t(),
                  Aden.get_mpz_t());
      if (sgn(rem) != 0) fail_logic("nonintegral leading coefficient on fiber");
      coeffs = {A, a3, B, a1, C};
      sink(slab, coeffs, L, K, w, vq);
    }
  }
}

// Runs fn(i) for i in [0, n), in parallel when OpenMP is available.  fn must
// be safe to call concurrently for distinct i.
template <class Fn>
void parallel_slabs(long n, Fn&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 2)
  for (long i = 0; i < n; ++i) fn(i);
#else
  for (long i = 0; i < n; ++i) fn(i);
#endif
}

int thread_index() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Walks all of S_f(X), invoking sink once per member.  sink must tolerate
// concurrent calls for distinct slabs.
void walk_S(const Ctx& cx, const Int& X, const Sink& sink) {
  if (sgn(X) <= 0) return;
  if (cx.shape == Shape::Reducible) {
    Chart2Range rng = chart2_range(cx, X, /*apply_window=*/true);
    parallel_slabs(2 * rng.nc,
                   [&](long i) { walk_chart2_slab(cx, X, rng, i, sink); });
  } else {
    Chart1Box box = chart1_box(cx, X);
    Int n = box.uhi - box.ulo + 1;
    long slabs = (sgn(n) > 0) ? n.get_si() : 0;
    parallel_slabs(slabs,
                   [&](long i) { walk_chart1_slab(cx, X, box, i, sink); });
  }
}

QuarticForm to_quartic(const std::array<Int, 5>& c) {
  return QuarticForm{Rat(c[0]), Rat(c[1]), Rat(c[2]), Rat(c[3]), Rat(c[4])};
}

bool quartic_less(const QuarticForm& x, const QuarticForm& y) {
  if (x.a4 != y.a4) return x.a4 < y.a4;
  if (x.a3 != y.a3) return x.a3 < y.a3;
  if (x.a2 != y.a2) return x.a2 < y.a2;
  if (x.a1 != y.a1) return x.a1 < y.a1;
  return x.a0 < y.a0;
}

double main_term_unchecked(const Ctx& cx, int r, int s, const Int& X) {
  if (sgn(X) <= 0) return 0.0;
  double x = mpz_get_d(X.get_mpz_t());
  double x32 = std::pow(x, 1.5);
  double inv_rs = 1.0 / (static_cast<double>(r) * static_cast<double>(s));
  double d = mpz_get_d(cx.D.get_mpz_t());
  const double pi = 3.14159265358979323846;
  switch (cx.shape) {
    case Shape::PosDef:
      return inv_rs * 13.0 * pi / (27.0 * std::pow(d, 1.5)) * x32;
    case Shape::Reducible: {
      double b = mpz_get_d(cx.b.get_mpz_t());
      return inv_rs * 8.0 / (9.0 * b * b * b) * x32 * std::log(x);
    }
    case Shape::Indefinite:
      return inv_rs * 32.0 * fundamental_t(cx.D) / (9.0 * std::pow(d, 1.5)) *
             x32;
  }
  return 0.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Membership.
// ---------------------------------------------------------------------------

DomainCondition domain_condition(const QuadForm& f, const QuarticForm& F,
                                 const Int& X) {
  validate_shape(f);
  if (sgn(X) < 0) fail_domain("membership requires X >= 0");
  if (!in_V_Zf(f, F)) fail_domain("quartic is not stabilized by the form");
  Invariants iv = invariants(F);
  if (sgn(iv.disc) == 0) fail_domain("membership requires disc(F) != 0");

  LKPair lk = lk_invariants(f, F);
  Int L2h = lk.L * lk.L;
  Int kabs = abs(lk.K);
  DomainCondition dc;
  dc.height = std::max(L2h, kabs);
  bool in_ball = dc.height <= X;

  Int d = disc_quad(f);
  if (sgn(d) < 0) {
    dc.kind = DomainCondition::Kind::PosDef;
    dc.member = in_ball;
    return dc;
  }
  if (is_square(d)) {
    dc.kind = DomainCondition::Kind::Reducible;
    Int b2 = f.beta * f.beta;
    Int hi_num = 5 * b2 * X;
    dc.window_lo = Rat(b2) / 8;
    dc.window_hi = Rat(hi_num) / 18;
    dc.c_coefficient = rat_to_int(F.a0);
    Int cabs = abs(dc.c_coefficient);
    bool window = (8 * cabs >= b2) && (18 * cabs <= 5 * b2 * X);
    dc.member = in_ball && window;
    return dc;
  }

  dc.kind = DomainCondition::Kind::Indefinite;
  Ctx cx = make_ctx(f);
  auto [L1, L2] = l1_l2(f, F);
  Int negL2 = -L2;
  dc.e1 = QuadFieldElem{cx.D, Rat(L1), Rat(negL2)};
  dc.e2 = QuadFieldElem{cx.D, Rat(L1), Rat(L2)};
  dc.eps8 = unit_power(cx.D, 8);
  Int w = L2h + 4 * lk.K;
  bool in_window;
  if (sgn(w) > 0) {
    dc.branch = (qf_sign(dc.e2) > 0) ? 2 : 1;
    // 1 <= E1/E2 < eps^8, decided inside Q(sqrt(D)).
    QuadFieldElem diff = qf_sub(dc.e1, dc.e2);
    int s2 = qf_sign(dc.e2);
    bool c1 = qf_sign(diff) * s2 >= 0;
    QuadFieldElem top = qf_sub(dc.e1, qf_mul(dc.eps8, dc.e2));
    bool c2 = qf_sign(top) * s2 < 0;
    in_window = c1 && c2;
  } else {
    dc.branch = (qf_sign(dc.e2) > 0) ? 3 : 4;
    Int vq = 2 * L2h - lk.K;
    in_window = member_neg_w(cx, lk.L, lk.K, w, vq, L1, L2);
  }
  dc.member = in_ball && in_window;
  return dc;
}

bool in_S(const QuadForm& f, const QuarticForm& F, const Int& X) {
  return domain_condition(f, F, X).member;
}

// ---------------------------------------------------------------------------
// Enumeration.
// ---------------------------------------------------------------------------

std::vector<QuarticForm> enumerate_S(const QuadForm& f, const Int& X) {
  if (sgn(X) < 0) fail_domain("enumeration requires X >= 0");
  Ctx cx = make_ctx(f);
  long slabs = 0;
  if (sgn(X) > 0) {
    if (cx.shape == Shape::Reducible) {
      slabs = 2 * chart2_range(cx, X, true).nc;
    } else {
      Chart1Box box = chart1_box(cx, X);
      Int n = box.uhi - box.ulo + 1;
      slabs = (sgn(n) > 0) ? n.get_si() : 0;
    }
  }
  std::vector<std::vector<QuarticForm>> per_slab(slabs);
  Sink sink = [&](long slab, const std::array<Int, 5>& c, const Int&,
                  const Int&, const Int&, const Int&) {
    per_slab[slab].push_back(to_quartic(c));
  };
  walk_S(cx, X, sink);
  std::vector<QuarticForm> out;
  for (auto& v : per_slab)
    out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<QuarticForm> enumerate_S_reference(const QuadForm& f,
                                               const Int& X) {
  if (sgn(X) < 0) fail_domain("enumeration requires X >= 0");
  Ctx cx = make_ctx(f);
  std::vector<QuarticForm> out;
  if (sgn(X) == 0) return out;

  auto keep_if_member = [&](const QuarticForm& F) {
    if (F.a4.get_den() != 1 || F.a3.get_den() != 1 || F.a2.get_den() != 1 ||
        F.a1.get_den() != 1 || F.a0.get_den() != 1)
      return;
    // Cheap closed-form height screen before the full membership predicate;
    // almost every box point fails it.
    LKPair lk = explicit_lk(cx.f, F);
    Int h = std::max(Int(lk.L * lk.L), Int(abs(lk.K)));
    if (h > X) return;
    if (sgn(invariants(F).disc) == 0) return;
    if (in_S(cx.f, F, X)) out.push_back(F);
  };

  if (cx.shape == Shape::Reducible) {
    // C over the window, B over |L| <= sqrt(X), A over the band |K| <= X.
    Chart2Range rng = chart2_range(cx, X, true);
    Int RL = isqrt(X);
    Int b2 = cx.b * cx.b;
    for (long i = 0; i < 2 * rng.nc; ++i) {
      Int C = (i < rng.nc) ? Int(rng.cmin + i) : Int(-(rng.cmin + (i - rng.nc)));
      Int t12 = 12 * cx.a * cx.a * C;
      if (!mpz_divisible_p(t12.get_mpz_t(), b2.get_mpz_t())) continue;
      Int q12 = t12 / b2;
      Int blo = fdiv(-RL + q12, Int(2)) - 1;
      Int bhi = fdiv(RL + q12, Int(2)) + 1;
      for (Int B = blo; B <= bhi; ++B) {
        // K is affine in A with slope 36 C; bound A by |K| <= X.
        Int kr_num = -b2 * b2 * B * B +
                     144 * cx.a * cx.a * cx.a * cx.a * C * C -
                     24 * cx.a * cx.a * b2 * B * C;
        Int b4 = b2 * b2;
        Int c36 = 36 * C;
        Rat krest = Rat(kr_num) / Rat(b4);
        Int negX = -X;
        Rat alo_r = (Rat(negX) - krest) / Rat(c36);
        Rat ahi_r = (Rat(X) - krest) / Rat(c36);
        if (alo_r > ahi_r) std::swap(alo_r, ahi_r);
        Int alo = cdiv(alo_r.get_num(), alo_r.get_den());
        Int ahi = fdiv(ahi_r.get_num(), ahi_r.get_den());
        for (Int A = alo; A <= ahi; ++A)
          keep_if_member(complete_quartic(cx.f, 2, A, B, C));
      }
    }
  } else {
    Chart1Box box = chart1_box(cx, X);
    const auto& rows = box.basis.rows;
    for (Int u = box.ulo; u <= box.uhi; ++u) {
      Int A = u * rows[0][0];
      Int vlo = cdiv(-box.Bbar - u * rows[0][1], rows[1][1]);
      Int vhi = fdiv(box.Bbar - u * rows[0][1], rows[1][1]);
      for (Int v = vlo; v <= vhi; ++v) {
        Int B = u * rows[0][1] + v * rows[1][1];
        Int cbase = u * rows[0][2] + v * rows[1][2];
        Int C = cbase + rows[2][2] * cdiv(-box.Cbar - cbase, rows[2][2]);
        for (; C <= box.Cbar; C += rows[2][2])
          keep_if_member(complete_quartic(cx.f, 1, A, B, C));
      }
    }
  }
  std::sort(out.begin(), out.end(), quartic_less);
  return out;
}

// ---------------------------------------------------------------------------
// Class equivalence.
// ---------------------------------------------------------------------------

namespace {

Rat quartic_max_abs(const QuarticForm& F) {
  Rat m = abs(F.a4);
  for (const Rat* c : {&F.a3, &F.a2, &F.a1, &F.a0}) {
    Rat v = abs(*c);
    if (v > m) m = v;
  }
  return m;
}

// reduce_quad and orthogonal_group output for one stabilizer quadratic,
// computed once per distinct coefficient triple.  Two stabilizers with equal
// reduced forms c are carried onto each other by Tc(first) * Tc(second)^-1,
// which replaces a fresh quad_equivalent call per pair.
struct ReductionEntry {
  QuadForm c;
  Mat2 Tc, Tci;
  bool have_orth = false;
  OrthGroup orth;
};

using ReduceCache = std::map<std::array<Int, 3>, ReductionEntry>;

ReductionEntry& reduction_of(ReduceCache& cache, const QuadForm& q) {
  std::array<Int, 3> key{q.alpha, q.beta, q.gamma};
  auto it = cache.find(key);
  if (it == cache.end()) {
    ReductionEntry e;
    auto [c, T] = reduce_quad(q);
    e.c = c;
    e.Tc = T;
    e.Tci = inverse(T);
    it = cache.emplace(std::move(key), std::move(e)).first;
  }
  return it->second;
}

const OrthGroup& orth_of(ReductionEntry& e) {
  if (!e.have_orth) {
    e.orth = orthogonal_group(e.c);
    e.have_orth = true;
  }
  return e.orth;
}

struct PreppedQuartic {
  QuarticForm F;
  Int I, J;
  std::vector<StabilizerPair> stabs;
};

PreppedQuartic prep_quartic(const QuarticForm& F) {
  Invariants iv = invariants(F);
  if (sgn(iv.disc) == 0)
    fail_domain("equivalence requires nonzero discriminants");
  PreppedQuartic p;
  p.F = F;
  p.I = rat_to_int(iv.I);
  p.J = rat_to_int(iv.J);
  p.stabs = stabilizer_quadratics(F);
  if (p.stabs.empty()) fail_domain("equivalence requires stabilized quartics");
  return p;
}

// Core of quartic_equivalent, with per-quartic invariants and stabilizers
// precomputed by prep_quartic and quadratic reductions shared through cache.
std::optional<Mat2> equiv_prepped(const PreppedQuartic& pf,
                                  const PreppedQuartic& pg,
                                  ReduceCache& cache) {
  if (pf.I != pg.I || pf.J != pg.J) return std::nullopt;
  Rat mG = quartic_max_abs(pg.F);
  for (const StabilizerPair& fp : pf.stabs) {
    for (const StabilizerPair& gp : pg.stabs) {
      ReductionEntry& ef = reduction_of(cache, fp.f);
      ReductionEntry& eg = reduction_of(cache, gp.f);
      if (!(ef.c == eg.c)) continue;
      Mat2 sig = mul(ef.Tc, eg.Tci);
      QuarticForm F1 = twisted_act(pf.F, sig);
      const OrthGroup& orth = orth_of(eg);
      const Mat2& Tc = eg.Tc;
      const Mat2& Tci = eg.Tci;
      auto try_unit = [&](const Mat2& e) -> std::optional<Mat2> {
        Mat2 u = mul(mul(Tc, e), Tci);
        if (twisted_act(F1, u) == pg.F) return mul(sig, u);
        return std::nullopt;
      };
      for (const Mat2& e : orth.finite_elements)
        if (auto hit = try_unit(e)) return hit;
      if (orth.infinite_generator) {
        for (int dir = 0; dir < 2; ++dir) {
          Mat2 step = (dir == 0) ? *orth.infinite_generator
                                 : inverse(*orth.infinite_generator);
          Mat2 P = step;
          int too_big = 0;
          for (int n = 1; n <= 400 && too_big < 4; ++n) {
            bool all_big = true;
            for (const Mat2& e : orth.finite_elements) {
              Mat2 u = mul(mul(Tc, mul(e, P)), Tci);
              QuarticForm W = twisted_act(F1, u);
              if (W == pg.F) return mul(sig, u);
              if (quartic_max_abs(W) <= mG) all_big = false;
            }
            too_big = all_big ? too_big + 1 : 0;
            P = mul(P, step);
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Mat2> quartic_equivalent(const QuarticForm& F,
                                       const QuarticForm& G) {
  PreppedQuartic pf = prep_quartic(F);
  PreppedQuartic pg = prep_quartic(G);
  ReduceCache cache;
  return equiv_prepped(pf, pg, cache);
}

// ---------------------------------------------------------------------------
// Class counting.
// ---------------------------------------------------------------------------

namespace {

struct Tally {
  long long raw = 0, d4 = 0, c4 = 0, red1 = 0, red2 = 0;
  std::vector<QuarticForm> v4;
};

void absorb(const Ctx& cx, Tally& t, const std::array<Int, 5>& c, const Int& w,
            const Int& v) {
  ++t.raw;
  // Any reducible stabilized quartic with nonzero discriminant is a product
  // of two rational quadratics (a linear times irreducible-cubic split would
  // force a second rational root through the stabilizer involution), hence
  // lies in the anti-fixed square span, and the two tests decide its type
  // exactly; the split test runs first to match the priority of
  // reducibility_type.
  SpanCoords sc = anti_fixed_coords(cx, c);
  if (sc.in_span) {
    if (split_test(sc)) {
      ++t.red2;
      return;
    }
    if (paired_test(cx, sc)) {
      ++t.red1;
      return;
    }
  }
  // Irreducible: square L^2+4K means a biquadratic splitting field.
  if (sgn(w) > 0 && is_square(w)) {
    t.v4.push_back(to_quartic(c));
    return;
  }
  // Otherwise cyclic iff w * v * disc(f) is a positive perfect square,
  // dihedral if not.
  Int N = w * v * cx.disc;
  if (sgn(N) > 0 && is_square(N))
    ++t.c4;
  else
    ++t.d4;
}

long long dedupe_square_disc(std::vector<QuarticForm>& forms) {
  std::sort(forms.begin(), forms.end(), quartic_less);
  std::vector<PreppedQuartic> prepped;
  prepped.reserve(forms.size());
  for (const QuarticForm& F : forms) prepped.push_back(prep_quartic(F));
  ReduceCache cache;
  std::map<std::pair<Int, Int>, std::vector<size_t>> buckets;
  for (size_t i = 0; i < prepped.size(); ++i)
    buckets[{prepped[i].I, prepped[i].J}].push_back(i);
  long long classes = 0;
  for (auto& [key, idxs] : buckets) {
    std::vector<size_t> reps;
    for (size_t i : idxs) {
      bool fresh = true;
      for (size_t r : reps) {
        if (equiv_prepped(prepped[i], prepped[r], cache)) {
          fresh = false;
          break;
        }
      }
      if (fresh) {
        reps.push_back(i);
        ++classes;
      }
    }
  }
  return classes;
}

}  // namespace

ClassCountReport count_classes(const QuadForm& f, const Int& X) {
  auto t0 = std::chrono::steady_clock::now();
  if (sgn(X) < 0) fail_domain("counting requires X >= 0");
  auto [canon, T] = reduce_quad(f);
  if (!(canon == f)) fail_domain("counting requires a canonical form");
  Ctx cx = make_ctx(f);

  std::vector<Tally> tallies(thread_count());
  Sink sink = [&](long, const std::array<Int, 5>& c, const Int&, const Int&,
                  const Int& w, const Int& v) {
    absorb(cx, tallies[thread_index()], c, w, v);
  };
  walk_S(cx, X, sink);

  Tally total;
  for (Tally& t : tallies) {
    total.raw += t.raw;
    total.d4 += t.d4;
    total.c4 += t.c4;
    total.red1 += t.red1;
    total.red2 += t.red2;
    total.v4.insert(total.v4.end(), t.v4.begin(), t.v4.end());
  }

  ClassCountReport rep;
  rep.f = f;
  rep.X = X;
  rep.r = r_f(f);
  rep.s = s_f(f);
  rep.raw_forms = total.raw;
  if (total.d4 % rep.r != 0 || total.c4 % rep.r != 0)
    fail_logic("class multiplicity is not r_f; the window is wrong");
  rep.n_d4 = total.d4 / rep.r;
  rep.n_c4 = total.c4 / rep.r;
  rep.n_v4 = dedupe_square_disc(total.v4);
  rep.reducible_type1 = total.red1;
  rep.reducible_type2 = total.red2;
  rep.main_term = main_term_unchecked(cx, rep.r, rep.s, X);
  auto t1 = std::chrono::steady_clock::now();
  rep.elapsed_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
          t1 - t0)
          .count();
  return rep;
}

ClassCountReport brute_force_classes(const QuadForm& f, const Int& X,
                                     const Int& cap) {
  auto t0 = std::chrono::steady_clock::now();
  if (sgn(X) < 0) fail_domain("counting requires X >= 0");
  if (X > cap) fail_domain("brute-force class partition is capped");
  auto [canon, T] = reduce_quad(f);
  if (!(canon == f)) fail_domain("counting requires a canonical form");
  Ctx cx = make_ctx(f);
  Int RL = isqrt(X);

  // Candidate forms: the whole height ball restricted to a box that contains
  // at least one representative of every class (the box contains all of
  // S_f(X), and every class meeting the ball meets S_f(X)).
  std::vector<QuarticForm> cands;
  auto consider = [&](const std::array<Int, 5>& c) {
    cands.push_back(to_quartic(c));
  };
  if (sgn(X) > 0) {
    if (cx.shape == Shape::Reducible) {
      Chart2Range rng = chart2_range(cx, X, /*apply_window=*/false);
      Sink sink = [&](long, const std::array<Int, 5>& c, const Int&,
                      const Int&, const Int&, const Int&) { consider(c); };
      for (long i = 0; i < 2 * rng.nc; ++i)
        walk_chart2_slab(cx, X, rng, i, sink);
    } else {
      Chart1Box box = chart1_box(cx, X);
      const auto& rows = box.basis.rows;
      Int twoa = 2 * cx.a;
      Int a3cube = 4 * cx.a * cx.a * cx.a;
      for (Int u = box.ulo; u <= box.uhi; ++u) {
        Int A = u * rows[0][0];
        Int vlo = cdiv(-box.Bbar - u * rows[0][1], rows[1][1]);
        Int vhi = fdiv(box.Bbar - u * rows[0][1], rows[1][1]);
        for (Int v = vlo; v <= vhi; ++v) {
          Int B = u * rows[0][1] + v * rows[1][1];
          Int cbase = u * rows[0][2] + v * rows[1][2];
          Int T0 = 12 * cx.g * A - 3 * cx.b * B;
          Int C = cbase + rows[2][2] * cdiv(-box.Cbar - cbase, rows[2][2]);
          for (; C <= box.Cbar; C += rows[2][2]) {
            Int Lnum = T0 + twoa * C;
            if (!mpz_divisible_p(Lnum.get_mpz_t(), twoa.get_mpz_t())) continue;
            Int L = -(Lnum / twoa);
            if (abs(L) > RL) continue;
            Int b2 = cx.b * cx.b;
            Int s4ag = b2 + 4 * cx.a * cx.g;
            Int P = 8 * cx.a * cx.a * cx.a * C * C +
                    (12 * cx.a * (3 * b2 - 4 * cx.a * cx.g) * A -
                     24 * cx.a * cx.a * cx.b * B) *
                        C +
                    72 * b2 * cx.g * A * A + 9 * cx.a * s4ag * B * B -
                    18 * cx.b * s4ag * A * B;
            if (!mpz_divisible_p(P.get_mpz_t(), a3cube.get_mpz_t())) continue;
            Int K = P / a3cube;
            if (abs(K) > X) continue;
            Int w = L * L + 4 * K;
            if (sgn(w) == 0) continue;
            Int vq = 2 * L * L - K;
            if (sgn(vq) == 0) continue;
            QuarticForm F = complete_quartic(cx.f, 1, A, B, C);
            if (F.a4.get_den() != 1 || F.a3.get_den() != 1 ||
                F.a2.get_den() != 1 || F.a1.get_den() != 1 ||
                F.a0.get_den() != 1)
              continue;
            consider({rat_to_int(F.a4), rat_to_int(F.a3), rat_to_int(F.a2),
                      rat_to_int(F.a1), rat_to_int(F.a0)});
          }
        }
      }
    }
  }

  // Partition the candidates into classes; count each class once by the
  // Galois type of its representative.
  ClassCountReport rep;
  rep.f = f;
  rep.X = X;
  rep.r = r_f(f);
  rep.s = s_f(f);
  rep.raw_forms = static_cast<long long>(cands.size());
  ReduceCache cache;
  std::map<std::pair<Int, Int>, std::vector<PreppedQuartic>> reps;
  for (const QuarticForm& F : cands) {
    PreppedQuartic p = prep_quartic(F);
    auto& bucket = reps[{p.I, p.J}];
    bool fresh = true;
    for (const PreppedQuartic& R : bucket) {
      if (equiv_prepped(p, R, cache)) {
        fresh = false;
        break;
      }
    }
    if (!fresh) continue;
    bucket.push_back(std::move(p));
    switch (classify(F)) {
      case GaloisClass::D4:
        ++rep.n_d4;
        break;
      case GaloisClass::C4:
        ++rep.n_c4;
        break;
      case GaloisClass::V4:
        ++rep.n_v4;
        break;
      case GaloisClass::NotIrreducible: {
        ReducibilityType rt = reducibility_type(f, F);
        if (rt.tag == ReducibilityType::Tag::Type1)
          ++rep.reducible_type1;
        else
          ++rep.reducible_type2;
        break;
      }
      case GaloisClass::NotSmall:
        fail_logic("stabilized quartic reported as not small");
    }
  }
  rep.main_term = main_term_unchecked(cx, rep.r, rep.s, X);
  auto t1 = std::chrono::steady_clock::now();
  rep.elapsed_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
          t1 - t0)
          .count();
  return rep;
}

double main_term(const QuadForm& f, const Int& X) {
  Ctx cx = make_ctx(f);
  return main_term_unchecked(cx, r_f(f), s_f(f), X);
}

CensusResult corollary_census(const Int& X) {
  CensusResult res;
  res.reports[0] = count_classes(QuadForm{1, 0, 1}, X);
  res.reports[1] = count_classes(QuadForm{1, 1, 0}, X);
  res.reports[2] = count_classes(QuadForm{1, 2, 0}, X);
  for (const ClassCountReport& r : res.reports)
    res.observed += r.n_d4 + r.n_c4;
  if (sgn(X) > 0) {
    double x = mpz_get_d(X.get_mpz_t());
    res.predicted = std::pow(x, 1.5) * std::log(x) / 9.0;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

std::string csv_header() {
  return "f_alpha,f_beta,f_gamma,X,raw,N_D4,N_C4,N_V4,red1,red2,main_term,"
         "r_f,s_f,elapsed_ms";
}

std::string csv_row(const ClassCountReport& r) {
  std::ostringstream os;
  os << r.f.alpha << ',' << r.f.beta << ',' << r.f.gamma << ',' << r.X << ','
     << r.raw_forms << ',' << r.n_d4 << ',' << r.n_c4 << ',' << r.n_v4 << ','
     << r.reducible_type1 << ',' << r.reducible_type2 << ',';
  os.precision(10);
  os << r.main_term << ',' << r.r << ',' << r.s << ',';
  os.precision(3);
  os << std::fixed << r.elapsed_ms;
  return os.str();
}

std::string report_json(const ClassCountReport& r) {
  std::ostringstream os;
  os << "{\"f\":[" << r.f.alpha << ',' << r.f.beta << ',' << r.f.gamma
     << "],\"X\":" << r.X << ",\"raw\":" << r.raw_forms
     << ",\"N_D4\":" << r.n_d4 << ",\"N_C4\":" << r.n_c4
     << ",\"N_V4\":" << r.n_v4 << ",\"red1\":" << r.reducible_type1
     << ",\"red2\":" << r.reducible_type2 << ",\"main_term\":";
  os.precision(10);
  os << r.main_term << ",\"r_f\":" << r.r << ",\"s_f\":" << r.s
     << ",\"elapsed_ms\":";
  os.precision(3);
  os << std::fixed << r.elapsed_ms << '}';
  return os.str();
}

}  // namespace qc
