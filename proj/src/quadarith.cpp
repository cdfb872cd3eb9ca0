#include "qc/quadarith.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

namespace qc {

namespace {

void require_same_field(const QuadFieldElem& x, const QuadFieldElem& y) {
  if (x.D != y.D) throw std::domain_error("quadratic field elements live in different fields");
}

void require_field_disc(const Int& D) {
  if (D <= 0 || is_square(D))
    throw std::domain_error("field discriminant must be positive and nonsquare");
}

}  // namespace

QuadFieldElem qf_add(const QuadFieldElem& x, const QuadFieldElem& y) {
  require_same_field(x, y);
  return {x.D, x.a + y.a, x.b + y.b};
}

QuadFieldElem qf_sub(const QuadFieldElem& x, const QuadFieldElem& y) {
  require_same_field(x, y);
  return {x.D, x.a - y.a, x.b - y.b};
}

QuadFieldElem qf_mul(const QuadFieldElem& x, const QuadFieldElem& y) {
  require_same_field(x, y);
  return {x.D, x.a * y.a + Rat(x.D) * x.b * y.b, x.a * y.b + x.b * y.a};
}

Rat qf_norm(const QuadFieldElem& x) { return x.a * x.a - Rat(x.D) * x.b * x.b; }

QuadFieldElem qf_inv(const QuadFieldElem& x) {
  Rat n = qf_norm(x);
  if (n == 0) {
    // a^2 = D b^2 with D nonsquare forces a = b = 0
    throw std::domain_error("division by zero in quadratic field");
  }
  return {x.D, x.a / n, -x.b / n};
}

int qf_sign(const QuadFieldElem& x) {
  int sa = sgn(x.a), sb = sgn(x.b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b*sqrt(D) compete: compare a^2 with D b^2
  int c = cmp(x.a * x.a, Rat(x.D) * x.b * x.b);
  if (c == 0) return 0;  // impossible for nonsquare D unless x = 0
  return c > 0 ? sa : sb;
}

double qf_to_double(const QuadFieldElem& x) {
  return x.a.get_d() + x.b.get_d() * std::sqrt(x.D.get_d());
}

namespace {

// Fundamental solution of x^2 - n y^2 = +-1 (n positive nonsquare) from the
// continued fraction of sqrt(n); the returned int is the achieved sign.
std::tuple<Int, Int, int> pell_unit(const Int& n) {
  Int a0 = isqrt(n);
  Int m = 0, d = 1, a = a0;
  Int pm1 = 1, p = a0, qm1 = 0, q = 1;
  long period = 0;
  while (true) {
    ++period;
    m = d * a - m;
    d = (n - m * m) / d;
    a = (a0 + m) / d;
    if (a == 2 * a0) break;  // end of the period; (p, q) is convergent period-1
    Int np = a * p + pm1, nq = a * q + qm1;
    pm1 = p;
    p = np;
    qm1 = q;
    q = nq;
    if (period > 10000000) throw std::logic_error("continued fraction of sqrt(n) did not close");
  }
  return {p, q, period % 2 == 0 ? +1 : -1};
}

}  // namespace

PellSolution pell_least(const Int& D) {
  require_field_disc(D);
  if (D % 4 == 0) {
    // u must be even and u^2 - D v^2 = +-4 collapses to (u/2)^2 - (D/4) v^2 = +-1
    auto [x, y, s] = pell_unit(D / 4);
    return {2 * x, y, 4 * s};
  }
  auto [x, y, s] = pell_unit(D);
  if (D % 4 == 1) {
    // A half-integral unit (u + v sqrt D)/2 (u, v odd) exists iff its cube is
    // the fundamental x + y sqrt(D), which pins u via u^3 - 3su = 2x.
    Int target = 2 * x;
    Int root;
    mpz_root(root.get_mpz_t(), target.get_mpz_t(), 3);
    for (Int u = root - 3; u <= root + 3; ++u) {
      if (u <= 0 || mpz_odd_p(u.get_mpz_t()) == 0) continue;
      if (u * u * u - 3 * s * u != target) continue;
      Int num = u * u - 4 * s;
      if (num <= 0 || num % D != 0) continue;
      if (auto v = sqrt_if_square(num / D); v && *v > 0) return {u, *v, 4 * s};
    }
  }
  // v odd is impossible for D = 2, 3 mod 4, so the least +-4 solution is
  // twice the least +-1 solution.
  return {2 * x, 2 * y, 4 * s};
}

std::optional<PellSolution> pell_bruteforce(const Int& D, const Int& vmax) {
  require_field_disc(D);
  for (Int v = 1; v <= vmax; ++v) {
    Int t = D * v * v;
    if (auto u = sqrt_if_square(t - 4)) return PellSolution{*u, v, -4};
    if (auto u = sqrt_if_square(t + 4)) return PellSolution{*u, v, +4};
  }
  return std::nullopt;
}

namespace {

// log of a positive Int without overflowing double
double log_int(const Int& x) {
  signed long e = 0;
  double d = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(d) + static_cast<double>(e) * std::log(2.0);
}

}  // namespace

double fundamental_t(const Int& D) {
  PellSolution p = pell_least(D);
  double lu = log_int(p.u);
  double lv = log_int(p.v) + 0.5 * log_int(D);
  double hi = std::max(lu, lv), lo = std::min(lu, lv);
  return hi + std::log1p(std::exp(lo - hi)) - std::log(2.0);
}

QuadFieldElem unit_power(const Int& D, unsigned long n) {
  if (n == 0) throw std::domain_error("unit_power wants a positive exponent");
  PellSolution p = pell_least(D);
  QuadFieldElem base{D, Rat(p.u) / 2, Rat(p.v) / 2};
  QuadFieldElem acc{D, 1, 0};
  while (n > 0) {
    if (n & 1) acc = qf_mul(acc, base);
    base = qf_mul(base, base);
    n >>= 1;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// reduction of binary quadratic forms
// ---------------------------------------------------------------------------

namespace {

QuadForm negate(const QuadForm& f) { return {-f.alpha, -f.beta, -f.gamma}; }

bool quad_less(const QuadForm& f, const QuadForm& g) {
  if (f.alpha != g.alpha) return f.alpha < g.alpha;
  if (f.beta != g.beta) return f.beta < g.beta;
  return f.gamma < g.gamma;
}

// Candidate during reduction: g together with T, twisted_act(f, T) = +-g.
struct Tracked {
  QuadForm g;
  Mat2 T;
};

Mat2 mat_int(long t1, long t2, long t3, long t4) {
  return {Rat(t1), Rat(t2), Rat(t3), Rat(t4)};
}

// definite: Gauss reduction to the unique 0 <= beta <= alpha <= gamma shape
Tracked reduce_definite(const QuadForm& f) {
  Tracked cur{f, mat_identity()};
  if (cur.g.alpha < 0) cur.g = negate(cur.g);  // flip negative definite
  for (int step = 0;; ++step) {
    if (step > 100000) throw std::logic_error("definite reduction did not terminate");
    Int a = cur.g.alpha, b = cur.g.beta;
    // shift beta into (-alpha, alpha]: k = -round(beta / (2 alpha))
    Int twoa = 2 * a;
    Int k;
    // floor((a - b) / (2a)) lands b + 2ak in (-a, a]
    mpz_fdiv_q(k.get_mpz_t(), Int(a - b).get_mpz_t(), twoa.get_mpz_t());
    if (k != 0) {
      Mat2 shear = mat_identity();
      shear.t2 = Rat(k);
      cur.T = mul(cur.T, shear);
      cur.g = twisted_act(cur.g, shear);
    }
    if (cur.g.alpha > cur.g.gamma) {
      Mat2 swap = mat_int(0, -1, 1, 0);
      cur.T = mul(cur.T, swap);
      cur.g = twisted_act(cur.g, swap);  // (gamma, -beta, alpha)
      continue;
    }
    break;
  }
  if (cur.g.beta < 0) {
    Mat2 flip = mat_int(1, 0, 0, -1);
    cur.T = mul(cur.T, flip);
    cur.g = twisted_act(cur.g, flip);                // (-alpha, beta, -gamma)
    if (cur.g.alpha < 0) cur.g = negate(cur.g);      // back to positive, beta flipped
  }
  return cur;
}

// primitive linear factors of a primitive form with square discriminant
std::pair<std::pair<Int, Int>, std::pair<Int, Int>> split_square(const QuadForm& f, const Int& h) {
  if (f.alpha == 0) {
    // f = y (beta x + gamma y)
    return {{0, 1}, {f.beta, f.gamma}};
  }
  // roots (-beta +- h) / (2 alpha) give f = s (q1 x - p1 y)(q2 x - p2 y)
  auto line = [&](const Int& num, const Int& den) {
    Int g = gcd(num, den);
    Int p = num / g, q = den / g;
    if (q < 0) {
      p = -p;
      q = -q;
    }
    return std::pair<Int, Int>{q, -p};
  };
  auto l1 = line(-f.beta + h, 2 * f.alpha);
  auto l2 = line(-f.beta - h, 2 * f.alpha);
  // fix the unit so that l1 * l2 = f exactly
  Int lead = l1.first * l2.first;
  if (lead != f.alpha) {
    if (lead != -f.alpha) throw std::logic_error("square-discriminant split lost a factor");
    l1 = {-l1.first, -l1.second};
  }
  if (l1.first * l2.second + l1.second * l2.first != f.beta ||
      l1.second * l2.second != f.gamma)
    throw std::logic_error("square-discriminant split does not multiply back");
  return {l1, l2};
}

// unimodular U (det = sigma) with (p x + q y) o U = x, for gcd(p, q) = 1
Mat2 factor_to_x(const std::pair<Int, Int>& line, int sigma) {
  Int pbar, qbar, g;
  mpz_gcdext(g.get_mpz_t(), pbar.get_mpz_t(), qbar.get_mpz_t(), line.first.get_mpz_t(),
             line.second.get_mpz_t());
  if (g != 1) throw std::logic_error("linear factor of a primitive form is imprimitive");
  Mat2 U;
  U.t1 = Rat(pbar);
  U.t2 = Rat(-sigma * line.second);
  U.t3 = Rat(qbar);
  U.t4 = Rat(sigma * line.first);
  return U;
}

// square discriminant: canonical alpha x^2 + h xy, least alpha in [1, h]
Tracked reduce_square(const QuadForm& f, const Int& h) {
  auto [l1, l2] = split_square(f, h);
  std::optional<Tracked> best;
  for (int order = 0; order < 2; ++order) {
    auto line = order == 0 ? l1 : l2;
    for (int sigma : {1, -1}) {
      Mat2 U = factor_to_x(line, sigma);
      QuadForm g = twisted_act(f, U);
      if (g.gamma != 0) throw std::logic_error("factor transport did not annihilate gamma");
      if (g.beta < 0) g = negate(g);
      if (g.beta != h) throw std::logic_error("factor transport changed the discriminant");
      // slide alpha into [1, h] with [[1,0],[k,1]]
      Int a = g.alpha;
      Int res;
      mpz_fdiv_r(res.get_mpz_t(), Int(a - 1).get_mpz_t(), h.get_mpz_t());
      Int target = res + 1;
      Int k = (target - a) / h;
      Mat2 shift = mat_identity();
      shift.t3 = Rat(k);
      Mat2 T = mul(U, shift);
      QuadForm cand = twisted_act(f, T);
      if (cand.beta < 0) cand = negate(cand);
      if (cand.alpha != target || cand.beta != h || cand.gamma != 0)
        throw std::logic_error("square-discriminant normal form slipped");
      if (!best || cand.alpha < best->g.alpha) best = Tracked{cand, T};
    }
  }
  return *best;
}

bool indefinite_reduced(const QuadForm& g, const Int& D) {
  const Int& b = g.beta;
  if (b < 1) return false;
  if (b * b >= D) return false;  // need b < sqrt(D)
  Int twoa = 2 * abs(g.alpha);
  Int s = b + twoa;
  if (s * s <= D) return false;  // need sqrt(D) < b + 2|alpha|
  if (twoa <= b) return true;    // 2|alpha| - sqrt(D) < b automatic
  Int t = twoa - b;
  return t * t < D;  // need 2|alpha| - b < sqrt(D)
}

// one rho-step (c, b', (b'^2 - D)/(4c)) with the textbook choice of b'
Tracked rho_step(const Tracked& cur, const Int& rootD) {
  const Int b = cur.g.beta, c = cur.g.gamma;
  if (c == 0) throw std::logic_error("rho step on a form with gamma = 0");
  Int absc = abs(c);
  Int mod = 2 * absc;
  Int bp;
  Int t;
  mpz_fdiv_r(t.get_mpz_t(), Int(-b).get_mpz_t(), mod.get_mpz_t());  // t in [0, 2|c|)
  if (absc > rootD) {
    bp = t <= absc ? t : t - mod;  // b' in (-|c|, |c|]
  } else {
    // largest b' <= floor(sqrt(D)) in the class
    Int diff;
    mpz_fdiv_r(diff.get_mpz_t(), Int(rootD - t).get_mpz_t(), mod.get_mpz_t());
    bp = rootD - diff;
  }
  Int two_c = 2 * c;
  if ((bp + b) % two_c != 0) throw std::logic_error("rho step chose an unreachable middle coefficient");
  Int m = (bp + b) / two_c;
  Mat2 M = mat_int(0, -1, 1, 0);
  M.t4 = Rat(m);
  QuadForm next = twisted_act(cur.g, M);
  if (next.alpha != c || next.beta != bp) throw std::logic_error("rho step disagrees with its target");
  return {next, mul(cur.T, M)};
}

// indefinite nonsquare: lexicographically least reduced form with alpha > 0
// over the cycles of the four sign variants
Tracked reduce_indefinite(const QuadForm& f, const Int& D) {
  Int rootD = isqrt(D);
  std::optional<Tracked> best;
  std::set<std::tuple<Int, Int, Int>> seen;
  Mat2 flip = mat_int(1, 0, 0, -1);
  const Tracked starts[4] = {
      {f, mat_identity()},
      {negate(f), mat_identity()},
      {{f.alpha, -f.beta, f.gamma}, flip},
      {{-f.alpha, f.beta, -f.gamma}, flip},
  };
  for (const Tracked& start : starts) {
    Tracked cur = start;
    int guard = 0;
    while (!indefinite_reduced(cur.g, D)) {
      cur = rho_step(cur, rootD);
      if (++guard > 100000) throw std::logic_error("indefinite reduction did not terminate");
    }
    QuadForm first = cur.g;
    do {
      if (seen.insert({cur.g.alpha, cur.g.beta, cur.g.gamma}).second) {
        if (cur.g.alpha > 0 && (!best || quad_less(cur.g, best->g))) best = cur;
      }
      cur = rho_step(cur, rootD);
      if (++guard > 100000) throw std::logic_error("indefinite cycle did not close");
    } while (!(cur.g == first));
  }
  return *best;
}

}  // namespace

std::pair<QuadForm, Mat2> reduce_quad(const QuadForm& f) {
  if (!is_primitive(f)) throw std::domain_error("reduce_quad wants a primitive form");
  Int D = disc_quad(f);
  if (D == 0) throw std::domain_error("reduce_quad wants a nondegenerate form");
  Tracked done;
  if (D < 0) {
    done = reduce_definite(f);
  } else if (auto h = sqrt_if_square(D)) {
    done = reduce_square(f, *h);
  } else {
    done = reduce_indefinite(f, D);
  }
  QuadForm image = twisted_act(f, done.T);
  if (!(image == done.g || image == negate(done.g)))
    throw std::logic_error("reduction transform does not carry f to the canonical form");
  if (!is_gl2z(done.T)) throw std::logic_error("reduction transform left GL2(Z)");
  return {done.g, done.T};
}

std::optional<Mat2> quad_equivalent(const QuadForm& f, const QuadForm& g) {
  if (!is_primitive(f) || !is_primitive(g))
    throw std::domain_error("quad_equivalent wants primitive forms");
  if (disc_quad(f) == 0 || disc_quad(g) == 0)
    throw std::domain_error("quad_equivalent wants nondegenerate forms");
  if (disc_quad(f) != disc_quad(g)) return std::nullopt;
  auto [cf, Tf] = reduce_quad(f);
  auto [cg, Tg] = reduce_quad(g);
  if (!(cf == cg)) return std::nullopt;
  Mat2 T = mul(Tf, inverse(Tg));
  QuadForm image = twisted_act(f, T);
  if (!is_gl2z(T) || !(image == g || image == negate(g)))
    throw std::logic_error("equivalence transform does not carry f to g");
  return T;
}

// ---------------------------------------------------------------------------
// orthogonal groups
// ---------------------------------------------------------------------------

namespace {

bool stabilizes(const QuadForm& f, const Mat2& T) {
  QuadForm image = twisted_act(f, T);
  return image == f || image == negate(f);
}

void push_with_negative(std::vector<Mat2>& out, const Mat2& T) {
  out.push_back(T);
  out.push_back(neg(T));
}

// all (u, v) with f(u, v) = n for positive definite f, via
// 4 alpha f(u,v) = (2 alpha u + beta v)^2 + |D| v^2
std::vector<std::pair<Int, Int>> represent_definite(const QuadForm& f, const Int& n,
                                                    const Int& absD) {
  std::vector<std::pair<Int, Int>> out;
  Int bound = 4 * f.alpha * n;
  for (Int v = -isqrt(bound / absD); v * v * absD <= bound; ++v) {
    Int rest = bound - absD * v * v;
    auto w = sqrt_if_square(rest);
    if (!w) continue;
    for (int sign : {1, -1}) {
      Int ww = sign * *w;
      if (ww == 0 && sign < 0) continue;
      Int num = ww - f.beta * v;
      if (num % (2 * f.alpha) != 0) continue;
      out.push_back({num / (2 * f.alpha), v});
    }
  }
  return out;
}

OrthGroup orth_definite(const QuadForm& f, const Int& D) {
  Int absD = -D;
  auto cols1 = represent_definite(f, f.alpha, absD);
  auto cols2 = represent_definite(f, f.gamma, absD);
  OrthGroup out;
  for (const auto& [t1, t3] : cols1) {
    for (const auto& [t2, t4] : cols2) {
      Int d = t1 * t4 - t2 * t3;
      if (d != 1 && d != -1) continue;
      Int cross = 2 * f.alpha * t1 * t2 + f.beta * (t1 * t4 + t2 * t3) + 2 * f.gamma * t3 * t4;
      if (cross != f.beta) continue;
      out.finite_elements.push_back({Rat(t1), Rat(t2), Rat(t3), Rat(t4)});
    }
  }
  out.structure_tag = OrthGroup::Structure::Finite;
  return out;
}

OrthGroup orth_square(const QuadForm& f) {
  // canonical (alpha, beta, 0), 1 <= alpha <= beta, gcd(alpha, beta) = 1
  const Int &a = f.alpha, &b = f.beta;
  OrthGroup out;
  push_with_negative(out.finite_elements, mat_identity());
  if ((2 * a) % b == 0) {
    Mat2 R = mat_identity();
    R.t1 = Rat(-1);
    R.t3 = Rat(2 * a / b);
    push_with_negative(out.finite_elements, R);
  }
  if ((a * a + 1) % b == 0) {
    Mat2 P{Rat(a), Rat(b), Rat(-(a * a + 1) / b), Rat(-a)};
    push_with_negative(out.finite_elements, P);
  }
  if ((a * a - 1) % b == 0) {
    Mat2 Q{Rat(a), Rat(b), Rat(-(a * a - 1) / b), Rat(-a)};
    push_with_negative(out.finite_elements, Q);
  }
  for (const Mat2& T : out.finite_elements)
    if (!is_gl2z(T) || !stabilizes(f, T))
      throw std::logic_error("listed reducible stabilizer fails to stabilize");
  out.structure_tag = OrthGroup::Structure::Finite;
  return out;
}

std::vector<Int> positive_divisors(const Int& n) {
  std::vector<Int> out;
  Int m = abs(n);
  for (Int d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    out.push_back(d);
    if (d * d != m) out.push_back(m / d);
  }
  return out;
}

// improper coset element J (J^2 = +-I) of an indefinite irreducible class, if
// one exists: either f is ambiguous (equivalent to a | b) or f represents the
// shape (a, b, -a)
std::optional<Mat2> improper_coset(const QuadForm& f, const Int& D) {
  // ambiguous candidates: every a | b class contains (a, b, c) with b in
  // {0, |a|}, and those have a | D
  for (const Int& d : positive_divisors(D)) {
    for (const Int& a : {d, Int(-d)}) {
      for (int kind = 0; kind < 2; ++kind) {
        Int b = kind == 0 ? Int(0) : abs(a);
        Int num = b * b - D;
        if (num % (4 * a) != 0) continue;
        QuadForm cand{a, b, num / (4 * a)};
        if (!is_primitive(cand)) continue;
        auto T = quad_equivalent(f, cand);
        if (!T) continue;
        Mat2 A = mat_identity();
        A.t2 = Rat(b / a);
        A.t4 = Rat(-1);
        Mat2 J = mul(mul(*T, A), inverse(*T));
        if (!is_gl2z(J) || !stabilizes(f, J))
          throw std::logic_error("ambiguous coset element fails to stabilize");
        return J;
      }
    }
  }
  // (a, m, -a) candidates: D = 4 a^2 + m^2
  for (Int a = 1; 4 * a * a < D; ++a) {
    auto m = sqrt_if_square(D - 4 * a * a);
    if (!m || *m == 0) continue;
    for (const QuadForm& cand : {QuadForm{a, *m, -a}, QuadForm{-a, *m, a}}) {
      if (!is_primitive(cand)) continue;
      auto T = quad_equivalent(f, cand);
      if (!T) continue;
      Mat2 B = mat_int(0, 1, -1, 0);
      Mat2 J = mul(mul(*T, B), inverse(*T));
      if (!is_gl2z(J) || !stabilizes(f, J))
        throw std::logic_error("antisymmetric coset element fails to stabilize");
      return J;
    }
  }
  return std::nullopt;
}

OrthGroup orth_indefinite(const QuadForm& f, const Int& D) {
  PellSolution p = pell_least(D);
  Mat2 gen;
  gen.t1 = Rat(p.u - f.beta * p.v) / 2;
  gen.t2 = Rat(-f.gamma * p.v);
  gen.t3 = Rat(f.alpha * p.v);
  gen.t4 = Rat(p.u + f.beta * p.v) / 2;
  if (!is_gl2z(gen) || !stabilizes(f, gen))
    throw std::logic_error("Pell generator fails to stabilize");
  OrthGroup out;
  push_with_negative(out.finite_elements, mat_identity());
  if (auto J = improper_coset(f, D)) push_with_negative(out.finite_elements, *J);
  out.infinite_generator = gen;
  out.structure_tag = OrthGroup::Structure::InfiniteCyclicModTorsion;
  return out;
}

}  // namespace

OrthGroup orthogonal_group(const QuadForm& f) {
  if (!is_primitive(f)) throw std::domain_error("orthogonal_group wants a primitive form");
  Int D = disc_quad(f);
  if (D == 0) throw std::domain_error("orthogonal_group wants a nondegenerate form");
  if (!(reduce_quad(f).first == f))
    throw std::domain_error("orthogonal_group wants the canonical reduced form; reduce first");
  if (D < 0) return orth_definite(f, D);
  if (is_square(D)) return orth_square(f);
  return orth_indefinite(f, D);
}

int r_f(const QuadForm& f) {
  OrthGroup O = orthogonal_group(f);
  if (O.structure_tag == OrthGroup::Structure::InfiniteCyclicModTorsion) {
    // <T_D> and +-1 are quotiented away; what is left is the improper coset
    return static_cast<int>(O.finite_elements.size()) / 2;
  }
  // count {+-I, +-M_f / sqrt(|D|)} inside the group
  Int absD = abs(disc_quad(f));
  std::size_t stab = 2;
  if (auto h = sqrt_if_square(absD)) {
    Mat2 M = assoc_matrix(f);
    Mat2 S{M.t1 / Rat(*h), M.t2 / Rat(*h), M.t3 / Rat(*h), M.t4 / Rat(*h)};
    if (is_gl2z(S)) {
      if (!stabilizes(f, S)) throw std::logic_error("scaled associated matrix fails to stabilize");
      stab = 4;
    }
  }
  if (O.finite_elements.size() % stab != 0)
    throw std::logic_error("orthogonal group size is not a multiple of the special stabilizer");
  return static_cast<int>(O.finite_elements.size() / stab);
}

std::vector<Mat2> orthogonal_bruteforce(const QuadForm& f, long entry_bound) {
  if (is_zero(f)) throw std::domain_error("orthogonal_bruteforce wants a nonzero form");
  std::vector<Mat2> out;
  const Int a = f.alpha, b = f.beta, c = f.gamma;
  for (long t1 = -entry_bound; t1 <= entry_bound; ++t1)
    for (long t2 = -entry_bound; t2 <= entry_bound; ++t2)
      for (long t3 = -entry_bound; t3 <= entry_bound; ++t3)
        for (long t4 = -entry_bound; t4 <= entry_bound; ++t4) {
          long d = t1 * t4 - t2 * t3;
          if (d != 1 && d != -1) continue;
          Int na = a * t1 * t1 + b * t1 * t3 + c * t3 * t3;
          if (na != a && na != -a) continue;
          Int ng = a * t2 * t2 + b * t2 * t4 + c * t4 * t4;
          Int nb = 2 * a * t1 * t2 + b * (t1 * t4 + t2 * t3) + 2 * c * t3 * t4;
          if ((na == a && nb == b && ng == c) || (na == -a && nb == -b && ng == -c))
            out.push_back(mat_int(t1, t2, t3, t4));
        }
  return out;
}

NegPellReport negative_pell_criterion(const Int& alpha, const Int& beta) {
  if (alpha <= 0 || beta <= 0) throw std::domain_error("negative_pell_criterion wants positive parameters");
  if (gcd(alpha, beta) != 1) throw std::domain_error("negative_pell_criterion wants coprime parameters");
  Int D = beta * beta + 4 * alpha * alpha;
  require_field_disc(D);
  NegPellReport out;
  out.pell_solvable = pell_least(D).sign == -4;
  QuadForm f{alpha, beta, -alpha};
  // ambiguous candidates with b in {0, |a|} have a | D (see improper_coset)
  out.shape_equivalent = false;
  for (const Int& d : positive_divisors(D)) {
    for (const Int& a : {d, Int(-d)}) {
      for (int kind = 0; kind < 2 && !out.shape_equivalent; ++kind) {
        Int b = kind == 0 ? Int(0) : abs(a);
        Int num = b * b - D;
        if (num % (4 * a) != 0) continue;
        QuadForm cand{a, b, num / (4 * a)};
        if (!is_primitive(cand)) continue;
        if (quad_equivalent(f, cand)) out.shape_equivalent = true;
      }
      if (out.shape_equivalent) break;
    }
    if (out.shape_equivalent) break;
  }
  return out;
}

}  // namespace qc
