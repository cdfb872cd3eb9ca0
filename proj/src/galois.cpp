#include "qc/galois.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qc/quadlattice.hpp"

namespace qc {

namespace {

// ----- dense polynomials over F_p, coefficients in [0, p), lowest first -----

using Poly = std::vector<long>;

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long mod_pow(long base, long e, long p) {
  long r = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

long mod_inv(long a, long p) { return mod_pow(a, p - 2, p); }

Poly make_monic(Poly a, long p) {
  trim(a);
  if (a.empty()) return a;
  long inv = mod_inv(a.back(), p);
  for (long& c : a) c = c * inv % p;
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

// remainder of a modulo monic g
Poly poly_rem(Poly a, const Poly& g, long p) {
  trim(a);
  while (degree(a) >= degree(g)) {
    long c = a.back();
    int shift = degree(a) - degree(g);
    if (c != 0)
      for (size_t i = 0; i < g.size(); ++i)
        a[shift + i] = ((a[shift + i] - c * g[i]) % p + p) % p;
    a.pop_back();
    trim(a);
  }
  return a;
}

// exact quotient a / g for monic g dividing a
Poly poly_divexact(const Poly& a, const Poly& g, long p) {
  if (a.empty()) return {};
  if (degree(g) == 0) return a;
  if (degree(a) < degree(g)) throw std::logic_error("qc: poly_divexact degree underflow");
  Poly rem = a;
  Poly q(a.size() - g.size() + 1, 0);
  for (int k = degree(a) - degree(g); k >= 0; --k) {
    long c = rem[k + degree(g)];
    q[k] = c;
    if (c != 0)
      for (size_t i = 0; i < g.size(); ++i)
        rem[k + i] = ((rem[k + i] - c * g[i]) % p + p) % p;
  }
  trim(rem);
  if (!rem.empty()) throw std::logic_error("qc: poly_divexact with nonzero remainder");
  trim(q);
  return q;
}

Poly poly_gcd(Poly a, Poly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly nb = make_monic(b, p);
    Poly r = poly_rem(a, nb, p);
    a = std::move(nb);
    b = std::move(r);
  }
  if (a.empty()) throw std::logic_error("qc: poly_gcd of two zero polynomials");
  return make_monic(a, p);
}

// base^e modulo monic g
Poly poly_powmod(Poly base, long e, const Poly& g, long p) {
  base = poly_rem(std::move(base), g, p);
  Poly r{1 % p};
  trim(r);
  while (e > 0) {
    if (e & 1) r = poly_rem(poly_mul(r, base, p), g, p);
    base = poly_rem(poly_mul(base, base, p), g, p);
    e >>= 1;
  }
  return r;
}

Poly subtract_x(Poly a, long p) {
  if (a.size() < 2) a.resize(2, 0);
  a[1] = ((a[1] - 1) % p + p) % p;
  trim(a);
  return a;
}

// Sorted degree string of the distinct irreducible factors of F(x,1) mod p;
// assumes p does not divide a4 or disc(F), so the reduction is a squarefree
// quartic.
std::string degree_pattern(const QuarticForm& F, long p) {
  const Rat* coeffs[5] = {&F.a0, &F.a1, &F.a2, &F.a3, &F.a4};
  Poly g(5);
  for (int i = 0; i < 5; ++i) {
    Int c = rat_to_int(*coeffs[i]);
    g[i] = static_cast<long>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p)));
  }
  if (g[4] == 0) throw std::logic_error("qc: degree_pattern at a prime dividing a4");
  g = make_monic(std::move(g), p);

  Poly xp = poly_powmod(Poly{0, 1}, p, g, p);
  Poly lin_part = poly_gcd(subtract_x(xp, p), g, p);
  int n1 = std::max(degree(lin_part), 0);
  Poly rest = n1 > 0 ? poly_divexact(g, lin_part, p) : g;

  int n2 = 0;
  if (degree(rest) >= 2) {
    Poly xp2 = poly_powmod(poly_rem(xp, rest, p), p, rest, p);
    Poly quad_part = poly_gcd(subtract_x(std::move(xp2), p), rest, p);
    int d2 = std::max(degree(quad_part), 0);
    if (d2 % 2 != 0) throw std::logic_error("qc: odd total degree of quadratic factors");
    n2 = d2 / 2;
    if (d2 > 0) rest = poly_divexact(rest, quad_part, p);
  }
  int r = std::max(degree(rest), 0);
  if ((r != 0 && r != 3 && r != 4) || n1 + 2 * n2 + r != 4)
    throw std::logic_error("qc: impossible degree pattern");

  std::string s(static_cast<size_t>(n1), '1');
  s.append(static_cast<size_t>(n2), '2');
  if (r == 3) s.push_back('3');
  if (r == 4) s.push_back('4');
  return s;
}

bool is_prime_long(long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

// first `budget` primes not dividing a4 * disc(F)
std::vector<long> sampling_primes(const QuarticForm& F, int budget) {
  Int bad = abs(rat_to_int(F.a4) * rat_to_int(invariants(F).disc));
  std::vector<long> primes;
  for (long n = 2; static_cast<int>(primes.size()) < budget; ++n) {
    if (!is_prime_long(n)) continue;
    if (mpz_divisible_ui_p(bad.get_mpz_t(), static_cast<unsigned long>(n))) continue;
    primes.push_back(n);
  }
  return primes;
}

// ----- quadratic-factor bookkeeping for reducibility_type -----

QuadForm factor_to_quad(const FormFactor& g) {
  return QuadForm{g.coeffs[0], g.coeffs[1], g.coeffs[2]};
}

QuadForm linear_product(const FormFactor& u, const FormFactor& v) {
  return QuadForm{u.coeffs[0] * v.coeffs[0],
                  u.coeffs[0] * v.coeffs[1] + u.coeffs[1] * v.coeffs[0],
                  u.coeffs[1] * v.coeffs[1]};
}

std::vector<Rat> quad_coeffs(const QuadForm& q) {
  return {Rat(q.alpha), Rat(q.beta), Rat(q.gamma)};
}

bool quad_lex_less(const QuadForm& a, const QuadForm& b) {
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  if (a.beta != b.beta) return a.beta < b.beta;
  return a.gamma < b.gamma;
}

bool anti_fixed(const QuadForm& q, const Mat2& M) {
  std::vector<Rat> img = twisted_act_coeffs(quad_coeffs(q), M);
  return img[0] == -Rat(q.alpha) && img[1] == -Rat(q.beta) && img[2] == -Rat(q.gamma);
}

QuarticForm quad_product(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  return QuarticForm{a[0] * b[0], a[0] * b[1] + a[1] * b[0],
                     a[0] * b[2] + a[1] * b[1] + a[2] * b[0], a[1] * b[2] + a[2] * b[1],
                     a[2] * b[2]};
}

}  // namespace

std::string to_string(GaloisClass c) {
  switch (c) {
    case GaloisClass::NotIrreducible: return "NotIrreducible";
    case GaloisClass::NotSmall: return "NotSmall";
    case GaloisClass::D4: return "D4";
    case GaloisClass::C4: return "C4";
    case GaloisClass::V4: return "V4";
  }
  throw std::logic_error("qc: unknown GaloisClass");
}

GaloisClass classify_with_stabilizer(const QuadForm& f, const QuarticForm& F) {
  LKPair lk = lk_invariants(f, F);  // validates integrality, disc, f itself
  Int square_part = lk.L * lk.L + 4 * lk.K;
  if (square_part >= 0 && is_square(square_part)) return GaloisClass::V4;
  Int num = square_part * (2 * lk.L * lk.L - lk.K);
  Rat ratio(num, disc_quad(f));
  ratio.canonicalize();
  return rat_is_square(ratio) ? GaloisClass::C4 : GaloisClass::D4;
}

GaloisClass classify(const QuarticForm& F) {
  if (!is_integral(F)) throw std::domain_error("qc: classify needs an integral quartic");
  if (invariants(F).disc == 0) throw std::domain_error("qc: classify needs disc != 0");
  Factorization fac = factor_over_Q(F);
  if (fac.factors.size() != 1 || fac.factors.front().coeffs.size() != 5)
    return GaloisClass::NotIrreducible;
  std::vector<StabilizerPair> stabs = stabilizer_quadratics(F);
  if (stabs.empty()) return GaloisClass::NotSmall;
  return classify_with_stabilizer(stabs.front().f, F);
}

FrobeniusReport frobenius_oracle(const QuarticForm& F, int prime_budget) {
  if (prime_budget < 1) throw std::domain_error("qc: frobenius_oracle needs prime_budget >= 1");
  if (!is_integral(F)) throw std::domain_error("qc: frobenius_oracle needs an integral quartic");
  if (invariants(F).disc == 0) throw std::domain_error("qc: frobenius_oracle needs disc != 0");
  Factorization fac = factor_over_Q(F);
  if (fac.factors.size() != 1 || fac.factors.front().coeffs.size() != 5)
    throw std::domain_error("qc: frobenius_oracle needs an irreducible quartic");

  std::vector<long> primes = sampling_primes(F, prime_budget);
  std::vector<std::string> observed(primes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < static_cast<int>(primes.size()); ++i)
    observed[i] = degree_pattern(F, primes[i]);

  FrobeniusReport rep;
  for (const std::string& s : observed) ++rep.patterns[s];
  bool saw_three_cycle = rep.patterns.count("13") > 0;
  bool saw_four_cycle = rep.patterns.count("4") > 0;
  bool saw_transposition = rep.patterns.count("112") > 0;
  if (saw_three_cycle)
    rep.probable = std::nullopt;  // 3-cycles rule out all three groups
  else if (saw_four_cycle && saw_transposition)
    rep.probable = GaloisClass::D4;
  else if (saw_four_cycle)
    rep.probable = GaloisClass::C4;
  else if (!saw_transposition)
    rep.probable = GaloisClass::V4;  // only 1111 / 22 observed
  else
    rep.probable = std::nullopt;  // transpositions but no 4-cycle yet
  return rep;
}

ReducibilityType reducibility_type(const QuadForm& f, const QuarticForm& F) {
  if (!in_V_Zf(f, F))
    throw std::domain_error("qc: reducibility_type needs twisted_act(F, M_f) = F");
  if (invariants(F).disc == 0) throw std::domain_error("qc: reducibility_type needs disc != 0");

  Factorization fac = factor_over_Q(F);
  std::vector<QuadForm> quads;
  std::vector<FormFactor> lins;
  for (const FormFactor& g : fac.factors) {
    if (g.multiplicity != 1)
      throw std::logic_error("qc: repeated factor despite disc != 0");
    size_t d = g.coeffs.size() - 1;
    if (d == 4) throw std::domain_error("qc: reducibility_type needs a reducible quartic");
    if (d == 2)
      quads.push_back(factor_to_quad(g));
    else if (d == 1)
      lins.push_back(g);
    else
      throw std::logic_error("qc: degree-3 factor of a stabilized quartic");
  }

  std::vector<std::pair<QuadForm, QuadForm>> groupings;
  if (quads.size() == 2 && lins.empty()) {
    groupings.push_back({quads[0], quads[1]});
  } else if (quads.size() == 1 && lins.size() == 2) {
    groupings.push_back({linear_product(lins[0], lins[1]), quads[0]});
  } else if (quads.empty() && lins.size() == 4) {
    groupings.push_back({linear_product(lins[0], lins[1]), linear_product(lins[2], lins[3])});
    groupings.push_back({linear_product(lins[0], lins[2]), linear_product(lins[1], lins[3])});
    groupings.push_back({linear_product(lins[0], lins[3]), linear_product(lins[1], lins[2])});
  } else {
    throw std::logic_error("qc: unexpected factor shape for a stabilized quartic");
  }

  Int content = rat_to_int(fac.content);
  Mat2 M = assoc_matrix(f);

  // shape 2 first: both blocks of some grouping exactly anti-fixed by M_f
  for (const auto& [g1, g2] : groupings) {
    if (!anti_fixed(g1, M)) continue;
    if (!anti_fixed(g2, M))
      throw std::logic_error("qc: fixed product with only one anti-fixed factor");
    ReducibilityType out;
    out.tag = ReducibilityType::Tag::Type2;
    QuadForm big = g1, small = g2;
    if (quad_lex_less(big, small)) std::swap(big, small);
    out.p = QuadForm{content * big.alpha, content * big.beta, content * big.gamma};
    out.q = small;
    out.m = 1;
    if (quad_product(quad_coeffs(out.p), quad_coeffs(out.q)) != F)
      throw std::logic_error("qc: type-2 witness fails to multiply back");
    return out;
  }

  // shape 1: the second block is proportional to the twist of the first
  for (const auto& [g1, g2] : groupings) {
    std::vector<Rat> img = twisted_act_coeffs(quad_coeffs(g1), M);
    std::vector<Rat> target = quad_coeffs(g2);
    std::optional<Rat> lam;
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      if (img[i] == 0) {
        ok = target[i] == 0;
      } else if (!lam) {
        lam = target[i] / img[i];
      } else {
        ok = target[i] / img[i] == *lam;
      }
    }
    if (!ok || !lam || *lam == 0) continue;
    ReducibilityType out;
    out.tag = ReducibilityType::Tag::Type1;
    out.p = g1;
    out.q = QuadForm{content * g2.alpha, content * g2.beta, content * g2.gamma};
    out.m = Rat(content) * (*lam);
    std::vector<Rat> twist_scaled{out.m * img[0], out.m * img[1], out.m * img[2]};
    if (quad_product(quad_coeffs(out.p), twist_scaled) != F)
      throw std::logic_error("qc: type-1 witness fails to multiply back");
    return out;
  }

  throw std::logic_error("qc: stabilized reducible quartic matched neither shape");
}

}  // namespace qc
