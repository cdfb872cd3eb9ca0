#include "qc/forms.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace qc {

namespace {

// polynomial product of coefficient vectors (index = degree of y for binary
// forms; for univariate use it is just convolution)
std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> out(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Rat> poly_pow(const std::vector<Rat>& a, int n) {
  std::vector<Rat> out{Rat(1)};
  for (int i = 0; i < n; ++i) out = poly_mul(out, a);
  return out;
}

// strip leading (highest-degree) zero coefficients; empty = zero polynomial
void poly_trim(std::vector<Rat>& p) {
  size_t k = 0;
  while (k < p.size() && p[k] == 0) ++k;
  p.erase(p.begin(), p.begin() + static_cast<long>(k));
}

std::vector<Rat> poly_deriv(const std::vector<Rat>& p) {
  const long d = static_cast<long>(p.size()) - 1;
  std::vector<Rat> out;
  out.reserve(p.size() - 1);
  for (long i = 0; i < d; ++i) out.push_back(p[i] * (d - i));
  return out;
}

// remainder of a modulo b (coefficients highest degree first, b != 0)
std::vector<Rat> poly_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
  poly_trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a[0] / b[0];
    for (size_t i = 1; i < b.size(); ++i) a[i] -= f * b[i];
    a.erase(a.begin());
    poly_trim(a);
  }
  return a;
}

// exact quotient a / b; throws if b does not divide a
std::vector<Rat> poly_divexact(std::vector<Rat> a, const std::vector<Rat>& b) {
  poly_trim(a);
  if (a.size() < b.size()) {
    if (!a.empty()) throw std::logic_error("qc: poly_divexact with nonzero remainder");
    return {};
  }
  std::vector<Rat> q(a.size() - b.size() + 1);
  for (size_t k = 0; k < q.size(); ++k) {
    Rat f = a[k] / b[0];
    q[k] = f;
    if (f != 0)
      for (size_t i = 0; i < b.size(); ++i) a[k + i] -= f * b[i];
  }
  for (const Rat& c : a)
    if (c != 0) throw std::logic_error("qc: poly_divexact with nonzero remainder");
  return q;
}

std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    std::vector<Rat> r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) throw std::logic_error("qc: poly_gcd of zero polynomials");
  Rat lead = a[0];
  for (Rat& c : a) c /= lead;
  return a;
}

// divide out the gcd of an integer vector; make the first nonzero entry > 0
std::vector<Int> primitivize(const std::vector<Int>& v) {
  Int g = 0;
  for (const Int& c : v) g = gcd(g, c);
  if (g == 0) throw std::logic_error("qc: primitivize of zero vector");
  std::vector<Int> out;
  out.reserve(v.size());
  for (const Int& c : v) out.push_back(c / g);
  for (const Int& c : out) {
    if (c != 0) {
      if (c < 0)
        for (Int& d : out) d = -d;
      break;
    }
  }
  return out;
}

// clear denominators of a rational vector and primitivize
std::vector<Int> rat_vec_to_primitive(const std::vector<Rat>& v) {
  Int lcm_den = 1;
  for (const Rat& c : v) lcm_den = lcm(lcm_den, c.get_den());
  std::vector<Int> iv;
  iv.reserve(v.size());
  for (const Rat& c : v) {
    Rat scaled = c * lcm_den;
    iv.push_back(scaled.get_num());
  }
  return primitivize(iv);
}

Rat eval_poly(const std::vector<Rat>& c, const Rat& t) {
  Rat acc(0);
  for (const Rat& ci : c) acc = acc * t + ci;
  return acc;
}

// divide c (coefficients of t^m .. t^0) by (t - r); remainder must vanish
std::vector<Rat> deflate_root(const std::vector<Rat>& c, const Rat& r) {
  std::vector<Rat> q(c.size() - 1);
  Rat carry(0);
  for (size_t i = 0; i + 1 < c.size(); ++i) {
    carry = carry * r + c[i];
    q[i] = carry;
  }
  if (carry * r + c.back() != 0) throw std::logic_error("qc: deflate_root remainder nonzero");
  return q;
}

// Sturm chain of a squarefree polynomial (used to count distinct real roots
// in an interval via sign variations at the endpoints)
std::vector<std::vector<Rat>> sturm_chain(const std::vector<Rat>& g) {
  std::vector<std::vector<Rat>> chain{g, poly_deriv(g)};
  poly_trim(chain.back());
  while (!chain.back().empty()) {
    std::vector<Rat> r = poly_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (Rat& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_variations(const std::vector<std::vector<Rat>>& chain, const Rat& t) {
  int v = 0, prev = 0;
  for (const std::vector<Rat>& p : chain) {
    int s = sgn(eval_poly(p, t));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

// All integer roots of a monic integer polynomial (t^m first), ascending.
// Exact: Sturm counts locate the roots by bisection, so the cost is
// polynomial in the coefficient size (divisor enumeration is not).
std::vector<Int> monic_integer_roots(const std::vector<Int>& mp) {
  std::vector<Rat> g(mp.begin(), mp.end());
  std::vector<Rat> squarefree_gcd = poly_gcd(g, poly_deriv(g));
  if (squarefree_gcd.size() > 1) g = poly_divexact(g, squarefree_gcd);
  std::vector<Int> roots;
  while (g.size() >= 2) {
    Rat mx(0);
    for (size_t i = 1; i < g.size(); ++i)
      if (abs(g[i]) > mx) mx = abs(g[i]);
    Int bound = mx.get_num() / mx.get_den() + 2;  // Cauchy: |root| < 1 + max|c_i|
    std::vector<std::vector<Rat>> chain = sturm_chain(g);
    std::optional<Int> found;
    std::vector<std::pair<Int, Int>> work{{-bound, bound}};
    while (!work.empty() && !found) {
      auto [a, b] = work.back();
      work.pop_back();
      if (sign_variations(chain, Rat(a)) == sign_variations(chain, Rat(b))) continue;
      if (b - a == 1) continue;  // the roots in (a, b] are not integers
      Int m = (a + b) / 2;
      if (eval_poly(g, Rat(m)) == 0) {
        found = m;
        break;
      }
      work.push_back({a, m});
      work.push_back({m, b});
    }
    if (!found) break;
    roots.push_back(*found);
    g = deflate_root(g, Rat(*found));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// rational roots of the integer-primitive polynomial with these coefficients
// (t^m first, positive leading coefficient); returns the least root, if any.
// A root p/q of the primitive polynomial corresponds to the integer root
// L*(p/q) of the monic polynomial obtained by substituting t -> W/L, L the
// leading coefficient.
std::optional<Rat> first_rational_root(const std::vector<Int>& ip) {
  const Int& lead = ip.front();
  std::vector<Int> mp(ip.size());
  mp[0] = 1;
  Int pw = 1;
  for (size_t i = 1; i < ip.size(); ++i) {
    mp[i] = ip[i] * pw;
    pw *= lead;
  }
  std::vector<Int> roots = monic_integer_roots(mp);
  if (roots.empty()) return std::nullopt;
  Rat r(roots.front(), lead);
  r.canonicalize();
  return r;
}

// try to write the depressed quartic z^4 + P z^2 + Q z + R (no rational roots)
// as (z^2 + s z + w1)(z^2 - s z + w2) over Q
std::optional<std::pair<std::pair<Rat, Rat>, std::pair<Rat, Rat>>> split_depressed(
    const Rat& P, const Rat& Q, const Rat& R) {
  auto sqrt_rat = [](const Rat& r) {
    Rat out(sqrt_if_square(r.get_num()).value(), sqrt_if_square(r.get_den()).value());
    out.canonicalize();
    return out;
  };
  if (Q == 0) {
    Rat d = P * P - 4 * R;
    if (rat_is_square(d)) {
      Rat sd = sqrt_rat(d);
      return {{{Rat(0), (P + sd) / 2}, {Rat(0), (P - sd) / 2}}};
    }
    if (rat_is_square(R)) {
      Rat w = sqrt_rat(R);
      for (int sgn = 0; sgn < 2; ++sgn, w = -w) {
        Rat s2 = 2 * w - P;
        if (s2 != 0 && rat_is_square(s2)) {
          Rat s = sqrt_rat(s2);
          return {{{s, w}, {-s, w}}};
        }
      }
    }
    return std::nullopt;
  }
  // resolvent cubic theta^3 + 2P theta^2 + (P^2 - 4R) theta - Q^2; a quadratic
  // splitting exists iff it has a rational root theta = s^2 with s rational
  std::vector<Rat> res{Rat(1), 2 * P, P * P - 4 * R, -Q * Q};
  std::vector<Int> ires = rat_vec_to_primitive(res);
  std::vector<Rat> work(ires.begin(), ires.end());
  while (true) {
    if (work.size() == 1) break;
    std::vector<Int> ip = rat_vec_to_primitive(work);
    auto root = first_rational_root(ip);
    if (!root) break;
    Rat theta = *root;
    if (theta > 0 && rat_is_square(theta)) {
      Rat s = sqrt_rat(theta);
      Rat w1 = (P + theta) / 2 - Q / (2 * s);
      Rat w2 = (P + theta) / 2 + Q / (2 * s);
      return {{{s, w1}, {-s, w2}}};
    }
    work = deflate_root(work, theta);
  }
  return std::nullopt;
}

bool factor_less(const FormFactor& a, const FormFactor& b) {
  if (a.coeffs.size() != b.coeffs.size()) return a.coeffs.size() < b.coeffs.size();
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    if (a.coeffs[i] != b.coeffs[i]) return a.coeffs[i] < b.coeffs[i];
  return false;
}

}  // namespace

Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("qc: isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::optional<Int> sqrt_if_square(const Int& n) {
  if (!is_square(n)) return std::nullopt;
  return isqrt(n);
}

bool rat_is_square(const Rat& r) {
  Rat c = r;
  c.canonicalize();  // mpq_class(a, b) does not reduce on its own
  return c >= 0 && is_square(c.get_num()) && is_square(c.get_den());
}

Int rat_to_int(const Rat& r) {
  if (r.get_den() != 1) throw std::domain_error("qc: rational is not an integer: " + r.get_str());
  return r.get_num();
}

Mat2 mat_identity() { return Mat2{1, 0, 0, 1}; }

Rat det(const Mat2& T) { return T.t1 * T.t4 - T.t2 * T.t3; }

Mat2 mul(const Mat2& A, const Mat2& B) {
  return Mat2{A.t1 * B.t1 + A.t2 * B.t3, A.t1 * B.t2 + A.t2 * B.t4,
              A.t3 * B.t1 + A.t4 * B.t3, A.t3 * B.t2 + A.t4 * B.t4};
}

Mat2 inverse(const Mat2& T) {
  Rat d = det(T);
  if (d == 0) throw std::domain_error("qc: inverse of singular matrix");
  return Mat2{T.t4 / d, -T.t2 / d, -T.t3 / d, T.t1 / d};
}

Mat2 neg(const Mat2& T) { return Mat2{-T.t1, -T.t2, -T.t3, -T.t4}; }

bool is_gl2z(const Mat2& T) {
  for (const Rat* e : {&T.t1, &T.t2, &T.t3, &T.t4})
    if (e->get_den() != 1) return false;
  Rat d = det(T);
  return d == 1 || d == -1;
}

Int disc_quad(const QuadForm& f) { return f.beta * f.beta - 4 * f.alpha * f.gamma; }

Mat2 assoc_matrix(const QuadForm& f) {
  return Mat2{Rat(f.beta), Rat(2 * f.gamma), Rat(-2 * f.alpha), Rat(-f.beta)};
}

bool is_primitive(const QuadForm& f) {
  return gcd(gcd(f.alpha, f.beta), f.gamma) == 1;
}

bool is_zero(const QuadForm& f) { return f.alpha == 0 && f.beta == 0 && f.gamma == 0; }

Int eval(const QuadForm& f, const Int& x, const Int& y) {
  return f.alpha * x * x + f.beta * x * y + f.gamma * y * y;
}

QuadForm canonical_sign_primitive(const QuadForm& f) {
  if (is_zero(f)) throw std::domain_error("qc: canonical_sign_primitive of zero form");
  Int g = gcd(gcd(f.alpha, f.beta), f.gamma);
  for (const Int* c : {&f.alpha, &f.beta, &f.gamma}) {
    if (*c != 0) {
      if (*c < 0) g = -g;
      break;
    }
  }
  return QuadForm{f.alpha / g, f.beta / g, f.gamma / g};
}

std::vector<Rat> twisted_act_coeffs(const std::vector<Rat>& coeffs, const Mat2& T) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (d < 0 || d % 2 != 0) throw std::domain_error("qc: twisted action needs even degree");
  Rat dT = det(T);
  if (dT == 0) throw std::domain_error("qc: twisted action by singular matrix");
  // substitute x -> t1 x + t2 y, y -> t3 x + t4 y
  std::vector<Rat> xs{T.t1, T.t2}, ys{T.t3, T.t4};
  std::vector<Rat> out(coeffs.size(), Rat(0));
  for (int i = 0; i <= d; ++i) {
    if (coeffs[i] == 0) continue;
    std::vector<Rat> term = poly_mul(poly_pow(xs, d - i), poly_pow(ys, i));
    for (int k = 0; k <= d; ++k) out[k] += coeffs[i] * term[k];
  }
  Rat scale(1);
  for (int k = 0; k < d / 2; ++k) scale *= dT;
  for (Rat& c : out) c /= scale;
  return out;
}

QuarticForm twisted_act(const QuarticForm& F, const Mat2& T) {
  auto v = twisted_act_coeffs({F.a4, F.a3, F.a2, F.a1, F.a0}, T);
  return QuarticForm{v[0], v[1], v[2], v[3], v[4]};
}

QuadForm twisted_act(const QuadForm& f, const Mat2& T) {
  auto v = twisted_act_coeffs({Rat(f.alpha), Rat(f.beta), Rat(f.gamma)}, T);
  return QuadForm{rat_to_int(v[0]), rat_to_int(v[1]), rat_to_int(v[2])};
}

bool is_integral(const QuarticForm& F) {
  for (const Rat* c : {&F.a4, &F.a3, &F.a2, &F.a1, &F.a0})
    if (c->get_den() != 1) return false;
  return true;
}

bool is_zero(const QuarticForm& F) {
  return F.a4 == 0 && F.a3 == 0 && F.a2 == 0 && F.a1 == 0 && F.a0 == 0;
}

Rat eval(const QuarticForm& F, const Rat& x, const Rat& y) {
  return F.a4 * x * x * x * x + F.a3 * x * x * x * y + F.a2 * x * x * y * y +
         F.a1 * x * y * y * y + F.a0 * y * y * y * y;
}

Invariants invariants(const QuarticForm& F) {
  Rat I = 12 * F.a4 * F.a0 - 3 * F.a3 * F.a1 + F.a2 * F.a2;
  Rat J = 72 * F.a4 * F.a2 * F.a0 + 9 * F.a3 * F.a2 * F.a1 - 27 * F.a4 * F.a1 * F.a1 -
          27 * F.a3 * F.a3 * F.a0 - 2 * F.a2 * F.a2 * F.a2;
  Rat disc = (4 * I * I * I - J * J) / 27;
  return Invariants{I, J, disc};
}

QuarticForm hessian(const QuarticForm& F) {
  return QuarticForm{3 * F.a3 * F.a3 - 8 * F.a4 * F.a2,
                     4 * (F.a3 * F.a2 - 6 * F.a4 * F.a1),
                     2 * (2 * F.a2 * F.a2 - 24 * F.a4 * F.a0 - 3 * F.a3 * F.a1),
                     4 * (F.a2 * F.a1 - 6 * F.a3 * F.a0),
                     3 * F.a1 * F.a1 - 8 * F.a2 * F.a0};
}

Rat bs_height(const QuarticForm& F) {
  Invariants inv = invariants(F);
  Rat c1 = abs(inv.I * inv.I * inv.I);
  Rat c2 = inv.J * inv.J / 4;
  return c1 >= c2 ? c1 : c2;
}

Factorization factor_over_Q(const QuarticForm& F) {
  if (!is_integral(F)) throw std::domain_error("qc: factor_over_Q needs integral input");
  if (is_zero(F)) throw std::domain_error("qc: factor_over_Q of zero form");
  std::vector<Rat> rem{F.a4, F.a3, F.a2, F.a1, F.a0};
  std::vector<std::vector<Int>> found;
  // powers of y (vanishing leading coefficients) and of x (trailing)
  while (rem.front() == 0) {
    found.push_back({Int(0), Int(1)});
    rem.erase(rem.begin());
  }
  while (rem.back() == 0) {
    found.push_back({Int(1), Int(0)});
    rem.pop_back();
  }
  // rational roots of the dehomogenized polynomial: root p/q <-> factor qx - py
  while (rem.size() >= 2) {
    std::vector<Int> ip = rat_vec_to_primitive(rem);
    auto root = first_rational_root(ip);
    if (!root) break;
    Int p = root->get_num(), q = root->get_den();
    found.push_back(primitivize({q, -p}));
    rem = deflate_root(rem, *root);
  }
  size_t m = rem.size() - 1;
  if (m == 2 || m == 3) {
    found.push_back(rat_vec_to_primitive(rem));
  } else if (m == 4) {
    // no rational roots: either irreducible or a product of two quadratics
    Rat B = rem[1] / rem[0], C = rem[2] / rem[0], D = rem[3] / rem[0], E = rem[4] / rem[0];
    Rat P = C - 3 * B * B / 8;
    Rat Q = D - B * C / 2 + B * B * B / 8;
    Rat R = E - B * D / 4 + B * B * C / 16 - 3 * B * B * B * B / 256;
    auto split = split_depressed(P, Q, R);
    if (split) {
      for (const auto& [s, w] : {split->first, split->second}) {
        // z = t + B/4: z^2 + s z + w -> t^2 + (s + B/2) t + (B^2/16 + s B/4 + w)
        std::vector<Rat> quad{Rat(1), s + B / 2, B * B / 16 + s * B / 4 + w};
        found.push_back(rat_vec_to_primitive(quad));
      }
    } else {
      found.push_back(rat_vec_to_primitive(rem));
    }
  }
  // assemble: group multiplicities, re-expand, recover the content exactly
  std::vector<FormFactor> factors;
  std::sort(found.begin(), found.end());
  for (const auto& v : found) {
    if (!factors.empty() && factors.back().coeffs == v)
      ++factors.back().multiplicity;
    else
      factors.push_back(FormFactor{v, 1});
  }
  std::sort(factors.begin(), factors.end(), factor_less);
  std::vector<Rat> prod{Rat(1)};
  for (const auto& fac : factors) {
    std::vector<Rat> fv(fac.coeffs.begin(), fac.coeffs.end());
    for (int k = 0; k < fac.multiplicity; ++k) prod = poly_mul(prod, fv);
  }
  if (prod.size() != 5) throw std::logic_error("qc: factor degrees do not sum to 4");
  std::vector<Rat> orig{F.a4, F.a3, F.a2, F.a1, F.a0};
  Rat content(0);
  for (size_t i = 0; i < 5; ++i) {
    if (prod[i] != 0) {
      content = orig[i] / prod[i];
      break;
    }
  }
  for (size_t i = 0; i < 5; ++i)
    if (orig[i] != content * prod[i])
      throw std::logic_error("qc: factorization does not re-expand to the input");
  return Factorization{content, factors};
}

std::string to_string(const QuarticForm& F) {
  std::ostringstream os;
  os << "[" << F.a4 << "," << F.a3 << "," << F.a2 << "," << F.a1 << "," << F.a0 << "]";
  return os.str();
}

std::string to_string(const QuadForm& f) {
  std::ostringstream os;
  os << "[" << f.alpha << "," << f.beta << "," << f.gamma << "]";
  return os.str();
}

std::string to_string(const Mat2& T) {
  std::ostringstream os;
  os << "[[" << T.t1 << "," << T.t2 << "],[" << T.t3 << "," << T.t4 << "]]";
  return os.str();
}

namespace {

std::vector<Rat> parse_rat_list(const std::string& text, size_t want) {
  std::string s;
  for (char ch : text)
    if (!isspace(static_cast<unsigned char>(ch)) && ch != '[' && ch != ']') s.push_back(ch);
  std::vector<Rat> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    std::string piece = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (piece.empty()) throw std::domain_error("qc: empty coefficient in '" + text + "'");
    Rat r;
    try {
      r = Rat(piece);
    } catch (const std::invalid_argument&) {
      throw std::domain_error("qc: bad coefficient '" + piece + "'");
    }
    r.canonicalize();
    out.push_back(r);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.size() != want)
    throw std::domain_error("qc: expected " + std::to_string(want) + " coefficients in '" + text + "'");
  return out;
}

}  // namespace

QuarticForm parse_quartic(const std::string& text) {
  auto v = parse_rat_list(text, 5);
  return QuarticForm{v[0], v[1], v[2], v[3], v[4]};
}

QuadForm parse_quad(const std::string& text) {
  auto v = parse_rat_list(text, 3);
  return QuadForm{rat_to_int(v[0]), rat_to_int(v[1]), rat_to_int(v[2])};
}

}  // namespace qc
