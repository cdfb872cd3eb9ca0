#include "qc/resolvent.hpp"

#include <algorithm>
#include <stdexcept>

namespace qc {

namespace {

std::vector<Int> divisors_both_signs(const Int& n) {
  std::vector<Int> out;
  Int a = abs(n);
  for (Int i = 1; i * i <= a; ++i) {
    if (a % i == 0) {
      out.push_back(i);
      out.push_back(-i);
      if (i * i != a) {
        out.push_back(a / i);
        out.push_back(-(a / i));
      }
    }
  }
  return out;
}

Rat eval_cubic(const MonicCubic& q, const Int& x) {
  Rat t(x);
  return t * t * t + q.c2 * t * t + q.c1 * t + q.c0;
}

}  // namespace

MonicCubic cubic_resolvent(const QuarticForm& F) {
  Invariants inv = invariants(F);
  return MonicCubic{Rat(0), -3 * inv.I, inv.J};
}

std::vector<Int> integer_roots(const MonicCubic& q) {
  for (const Rat* c : {&q.c2, &q.c1, &q.c0})
    if (c->get_den() != 1) throw std::domain_error("qc: integer_roots needs integer coefficients");
  std::vector<Int> cands;
  if (q.c0 != 0) {
    cands = divisors_both_signs(q.c0.get_num());
  } else {
    cands.push_back(0);
    // remaining quadratic x^2 + c2 x + c1
    if (q.c1 != 0) {
      for (const Int& d : divisors_both_signs(q.c1.get_num())) cands.push_back(d);
    } else {
      cands.push_back(rat_to_int(-q.c2));
    }
  }
  std::vector<Int> roots;
  for (const Int& r : cands)
    if (eval_cubic(q, r) == 0) roots.push_back(r);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

QuadForm covariant_from_root(const QuarticForm& F, const Int& omega) {
  QuarticForm H = hessian(F);
  // G = (F4 + 4 omega F)/3 must be c * g(x,y)^2
  std::vector<Rat> G{(H.a4 + 4 * omega * F.a4) / 3, (H.a3 + 4 * omega * F.a3) / 3,
                     (H.a2 + 4 * omega * F.a2) / 3, (H.a1 + 4 * omega * F.a1) / 3,
                     (H.a0 + 4 * omega * F.a0) / 3};
  bool all_zero = true;
  for (const Rat& c : G)
    if (c != 0) all_zero = false;
  if (all_zero) throw std::domain_error("qc: covariant vanishes (disc(F) = 0)");
  // the primitive part of G is exactly g^2: squares of primitive forms are
  // primitive and have nonnegative first nonzero coefficient
  std::vector<Int> N;
  {
    Int lcm_den = 1;
    for (const Rat& c : G) lcm_den = lcm(lcm_den, c.get_den());
    std::vector<Int> iv;
    for (const Rat& c : G) iv.push_back(rat_to_int(c * lcm_den));
    Int g = 0;
    for (const Int& c : iv) g = gcd(g, c);
    for (const Int& c : iv) N.push_back(c / g);
    for (const Int& c : N) {
      if (c != 0) {
        if (c < 0)
          for (Int& d : N) d = -d;
        break;
      }
    }
  }
  // exact square root of N = (p x^2 + q xy + r y^2)^2
  const char* msg = "qc: covariant is not proportional to the square of a quadratic";
  Int p, q, r;
  if (N[0] != 0) {
    auto sp = sqrt_if_square(N[0]);
    if (!sp) throw std::domain_error(msg);
    p = *sp;
    if (N[1] % (2 * p) != 0) throw std::domain_error(msg);
    q = N[1] / (2 * p);
    Int num = N[2] - q * q;
    if (num % (2 * p) != 0) throw std::domain_error(msg);
    r = num / (2 * p);
    if (N[3] != 2 * q * r || N[4] != r * r) throw std::domain_error(msg);
  } else if (N[2] != 0) {
    if (N[1] != 0) throw std::domain_error(msg);
    p = 0;
    auto sq = sqrt_if_square(N[2]);
    if (!sq) throw std::domain_error(msg);
    q = *sq;
    if (N[3] % (2 * q) != 0) throw std::domain_error(msg);
    r = N[3] / (2 * q);
    if (N[4] != r * r) throw std::domain_error(msg);
  } else {
    if (N[1] != 0 || N[3] != 0) throw std::domain_error(msg);
    p = 0;
    q = 0;
    auto sr = sqrt_if_square(N[4]);
    if (!sr) throw std::domain_error(msg);
    r = *sr;
  }
  QuadForm g{p, q, r};
  if (!is_primitive(g)) throw std::logic_error("qc: extracted covariant is not primitive");
  g = canonical_sign_primitive(g);
  if (twisted_act(F, assoc_matrix(g)) != F)
    throw std::logic_error("qc: covariant does not stabilize F");
  return g;
}

std::vector<StabilizerPair> stabilizer_quadratics(const QuarticForm& F) {
  if (!is_integral(F)) throw std::domain_error("qc: stabilizer_quadratics needs integral input");
  if (invariants(F).disc == 0) throw std::domain_error("qc: stabilizer_quadratics needs disc != 0");
  std::vector<StabilizerPair> out;
  for (const Int& w : integer_roots(cubic_resolvent(F)))
    out.push_back(StabilizerPair{w, covariant_from_root(F, w)});
  return out;
}

LKPair lk_invariants(const QuadForm& f, const QuarticForm& F) {
  if (!is_integral(F)) throw std::domain_error("qc: lk_invariants needs integral input");
  Invariants inv = invariants(F);
  if (inv.disc == 0) throw std::domain_error("qc: lk_invariants needs disc != 0");
  if (!is_primitive(f)) throw std::domain_error("qc: lk_invariants needs primitive f");
  if (twisted_act(F, assoc_matrix(f)) != F)
    throw std::domain_error("qc: f does not stabilize F");
  QuadForm target = canonical_sign_primitive(f);
  for (const Int& w : integer_roots(cubic_resolvent(F))) {
    if (covariant_from_root(F, w) == target) {
      Int L = w;
      Int K = rat_to_int(3 * inv.I) - L * L;
      if (inv.J != Rat(L * K)) throw std::logic_error("qc: J != L*K");
      return LKPair{L, K};
    }
  }
  throw std::logic_error("qc: no resolvent root matches the stabilizer");
}

LKPair explicit_lk(const QuadForm& f, const QuarticForm& F) {
  if (f.alpha == 0 && f.gamma != 0) {
    // swap x and y: unimodular, lands in the alpha != 0 chart
    QuadForm fs{f.gamma, f.beta, f.alpha};
    QuarticForm Fs{F.a0, F.a1, F.a2, F.a3, F.a4};
    return explicit_lk(fs, Fs);
  }
  Rat A, B, C, Lr, Kr;
  Rat al(f.alpha), be(f.beta), ga(f.gamma);
  if (f.alpha != 0) {
    A = F.a4;
    B = F.a3;
    C = F.a2;
    Lr = -(12 * ga * A - 3 * be * B + 2 * al * C) / (2 * al);
    Rat b2_4ag = be * be + 4 * al * ga;
    Kr = (72 * be * be * ga * A * A + 9 * al * b2_4ag * B * B + 8 * al * al * al * C * C -
          18 * be * b2_4ag * A * B + 12 * al * (3 * be * be - 4 * al * ga) * A * C -
          24 * al * al * be * B * C) /
         (4 * al * al * al);
  } else if (f.beta != 0) {
    // alpha = gamma = 0: f is proportional to xy
    A = F.a4;
    B = F.a2;
    C = F.a0;
    Lr = (2 * be * be * B - 12 * al * al * C) / (be * be);
    Kr = (-be * be * be * be * B * B + 144 * al * al * al * al * C * C +
          36 * be * be * be * be * A * C - 24 * al * al * be * be * B * C) /
         (be * be * be * be);
  } else {
    throw std::domain_error("qc: explicit_lk needs a nonzero form");
  }
  return LKPair{rat_to_int(Lr), rat_to_int(Kr)};
}

std::pair<Int, Int> l1_l2(const QuadForm& f, const QuarticForm& F) {
  if (f.alpha == 0) throw std::domain_error("qc: l1_l2 needs alpha != 0");
  Rat al(f.alpha), be(f.beta), ga(f.gamma);
  Rat A = F.a4, B = F.a3, C = F.a2;
  Int L1 = rat_to_int(4 * (be * be - al * ga) * A - 3 * al * be * B + 2 * al * al * C);
  Int L2 = rat_to_int(2 * (2 * be * A - al * B));
  LKPair lk = explicit_lk(f, F);
  Int lhs = L1 * L1 - disc_quad(f) * L2 * L2;
  Rat rhs = Rat(4 * f.alpha * f.alpha * f.alpha * f.alpha) * (lk.L * lk.L + 4 * lk.K) / 9;
  if (Rat(lhs) != rhs) throw std::logic_error("qc: L1/L2 identity violated");
  return {L1, L2};
}

Int height(const QuadForm& f, const QuarticForm& F) {
  LKPair lk = lk_invariants(f, F);
  Int h1 = lk.L * lk.L, h2 = abs(lk.K);
  return h1 >= h2 ? h1 : h2;
}

}  // namespace qc
