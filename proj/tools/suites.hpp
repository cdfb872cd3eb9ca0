#pragma once

// Verification suites shared by the CLI `verify` subcommand and the
// acceptance runner.  Each suite re-derives one published identity, count,
// or asymptotic on a pinned deterministic sample and reports pass/fail plus
// a short machine-readable detail line (counterexamples are embedded in the
// detail on failure).  Scale knobs default to the pinned acceptance values.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qc/counting.hpp"
#include "qc/forms.hpp"
#include "qc/galois.hpp"
#include "qc/params.hpp"
#include "qc/quadarith.hpp"
#include "qc/quadlattice.hpp"
#include "qc/resolvent.hpp"

namespace qc::suites {

struct SuiteResult {
  bool pass = true;
  std::string detail;
};

namespace detail {

inline std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return std::string(buf);
}

// Appends a counterexample note, keeping only the first few.
inline void note(SuiteResult& res, int& noted, const std::string& text) {
  res.pass = false;
  if (noted < 4) res.detail += "; FAIL " + text;
  ++noted;
}

inline long rand_in(std::mt19937_64& rng, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  return d(rng);
}

inline double rand_real(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

inline std::string mat_key(const Mat2& T) { return to_string(T); }

inline std::vector<std::string> sorted_keys(const std::vector<Mat2>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const Mat2& T : v) out.push_back(mat_key(T));
  std::sort(out.begin(), out.end());
  return out;
}

inline long mat_max_abs(const Mat2& T) {
  Int m = 0;
  for (const Rat* e : {&T.t1, &T.t2, &T.t3, &T.t4}) {
    Int v = abs(rat_to_int(*e));
    if (v > m) m = v;
  }
  return m.get_si();
}

// All elements of the orthogonal group with entries bounded by `bound`:
// torsion coset representatives times powers of the infinite generator,
// walked until the entries leave the box for good.
inline std::vector<Mat2> group_in_box(const OrthGroup& O, long bound) {
  std::set<std::string> seen;
  std::vector<Mat2> out;
  auto add = [&](const Mat2& T) {
    if (mat_max_abs(T) > bound) return;
    if (seen.insert(mat_key(T)).second) out.push_back(T);
  };
  for (const Mat2& e : O.finite_elements) add(e);
  if (O.infinite_generator) {
    for (int dir = 0; dir < 2; ++dir) {
      Mat2 step =
          (dir == 0) ? *O.infinite_generator : inverse(*O.infinite_generator);
      Mat2 P = step;
      for (int n = 1; n <= 64; ++n) {
        bool any = false;
        for (const Mat2& e : O.finite_elements) {
          Mat2 T = mul(e, P);
          if (mat_max_abs(T) <= bound) {
            add(T);
            any = true;
          }
        }
        // entries grow monotonically with |n| once past the box, but allow
        // one grace step for the torsion twists
        if (!any && n > 2) break;
        P = mul(P, step);
      }
    }
  }
  return out;
}

// Compares the orthogonal group of a canonical form against the brute-force
// box search.  Returns an empty string on agreement, else a description.
inline std::string orth_mismatch(const QuadForm& f, long brute_bound) {
  OrthGroup O = orthogonal_group(f);
  long bound = brute_bound;
  if (!O.infinite_generator) {
    for (const Mat2& e : O.finite_elements)
      bound = std::max(bound, mat_max_abs(e));
  }
  std::vector<Mat2> mine = group_in_box(O, bound);
  std::vector<Mat2> brute = orthogonal_bruteforce(f, bound);
  if (sorted_keys(mine) != sorted_keys(brute))
    return fmt("orthogonal mismatch at %s (box %ld: %zu vs %zu)",
               to_string(f).c_str(), bound, mine.size(), brute.size());
  return std::string();
}

}  // namespace detail

// --------------------------------------------------------------------------
// 1. Algebraic identities on random lattice points: 3I = L^2 + K, J = LK,
//    729 disc = (L^2+4K)(2L^2-K)^2, integral I and J, and the height
//    comparison (H/10)^3 <= H_BS <= H^3.
// --------------------------------------------------------------------------
inline SuiteResult identities(long points = 10000, int families = 20) {
  SuiteResult res;
  std::mt19937_64 rng(0x1dee5ULL);
  int noted = 0;

  std::vector<QuadForm> fams = {{1, 0, 1}, {1, 1, 0}, {1, 1, -1}};
  while (static_cast<int>(fams.size()) < families) {
    QuadForm f{detail::rand_in(rng, -6, 6), detail::rand_in(rng, -6, 6),
               detail::rand_in(rng, -6, 6)};
    if (sgn(f.alpha) == 0) continue;  // chart-1 sampling needs alpha != 0
    if (is_zero(f) || !is_primitive(f)) continue;
    Int d = disc_quad(f);
    if (sgn(d) == 0) continue;
    fams.push_back(f);
  }

  long per = std::max<long>(1, points / families);
  long checked = 0;
  for (const QuadForm& f : fams) {
    LatticeBasis basis = lattice_basis(f, 1);
    for (long i = 0; i < per; ++i) {
      Int u = detail::rand_in(rng, -15, 15);
      Int v = detail::rand_in(rng, -15, 15);
      Int w = detail::rand_in(rng, -15, 15);
      Int A = u * basis.rows[0][0];
      Int B = u * basis.rows[0][1] + v * basis.rows[1][1];
      Int C = u * basis.rows[0][2] + v * basis.rows[1][2] + w * basis.rows[2][2];
      QuarticForm F = complete_quartic(f, 1, A, B, C);
      if (!in_V_Zf(f, F)) {
        detail::note(res, noted,
                     detail::fmt("lattice point not stabilized at %s",
                                 to_string(f).c_str()));
        continue;
      }
      LKPair lk = explicit_lk(f, F);
      Invariants iv = invariants(F);
      Int three_i = lk.L * lk.L + lk.K;
      Int j = lk.L * lk.K;
      Int wq = lk.L * lk.L + 4 * lk.K;
      Int vq = 2 * lk.L * lk.L - lk.K;
      Int disc729 = wq * vq * vq;
      bool ok = iv.I.get_den() == 1 && iv.J.get_den() == 1 &&
                iv.I * 3 == Rat(three_i) && iv.J == Rat(j) &&
                iv.disc * 729 == Rat(disc729);
      Int l2 = lk.L * lk.L;
      Int kabs = abs(lk.K);
      Int h = l2 > kabs ? l2 : kabs;
      Rat hb = bs_height(F);
      Int h3 = h * h * h;
      Rat hb1000 = hb * 1000;
      ok = ok && hb <= Rat(h3) && Rat(h3) <= hb1000;
      if (!ok)
        detail::note(res, noted,
                     detail::fmt("identity broke at %s, F=%s",
                                 to_string(f).c_str(), to_string(F).c_str()));
      ++checked;
    }
  }
  res.detail = detail::fmt("families=%zu points=%ld", fams.size(), checked) +
               res.detail;
  return res;
}

// --------------------------------------------------------------------------
// 2. Lattice determinants against the closed forms s_f |alpha|^3 (chart 1)
//    and s_f |beta (beta^2 + 4 alpha gamma)| / 8 (chart 2).
// --------------------------------------------------------------------------
inline SuiteResult determinants(long bound = 20) {
  SuiteResult res;
  int noted = 0;
  long checked = 0;
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b)
      for (long c = -bound; c <= bound; ++c) {
        QuadForm f{a, b, c};
        if (is_zero(f) || !is_primitive(f)) continue;
        Int d = disc_quad(f);
        if (sgn(d) == 0) continue;
        int s = s_f(f);
        if (a != 0) {
          Int want = Int(s) * abs(Int(a) * a * a);
          Int got = lattice_det(f, 1);
          if (got != want)
            detail::note(res, noted,
                         detail::fmt("chart1 det %s at %s", got.get_str().c_str(),
                                     to_string(f).c_str()));
          ++checked;
        }
        Int bb4ac = Int(b) * b + 4 * Int(a) * c;
        if (b != 0 && sgn(bb4ac) != 0) {
          Int num = Int(s) * abs(Int(b) * bb4ac);
          Int got = lattice_det(f, 2);
          if (num % 8 != 0 || got != num / 8)
            detail::note(res, noted,
                         detail::fmt("chart2 det %s at %s", got.get_str().c_str(),
                                     to_string(f).c_str()));
          ++checked;
        }
      }
  res.detail = detail::fmt("bound=%ld checks=%ld", bound, checked) + res.detail;
  return res;
}

// --------------------------------------------------------------------------
// 3. Pell oracle: the continued-fraction solution is the least one (verified
//    exhaustively up to the brute-force cap) and unit powers multiply
//    exactly.
// --------------------------------------------------------------------------
inline SuiteResult pell(long dmax = 2000, long vmax = 5000) {
  SuiteResult res;
  int noted = 0;
  long full = 0, capped = 0;
  for (long D = 2; D <= dmax; ++D) {
    Int Di(D);
    if (is_square(Di)) continue;
    PellSolution p = pell_least(Di);
    Int lhs = p.u * p.u - Di * p.v * p.v;
    if (!((lhs == 4 && p.sign == 4) || (lhs == -4 && p.sign == -4)) ||
        sgn(p.v) <= 0) {
      detail::note(res, noted, detail::fmt("invalid solution at D=%ld", D));
      continue;
    }
    std::optional<PellSolution> slow = pell_bruteforce(Di, Int(vmax));
    if (p.v <= vmax) {
      if (!slow || slow->u != p.u || slow->v != p.v || slow->sign != p.sign)
        detail::note(res, noted, detail::fmt("minimality broke at D=%ld", D));
      ++full;
    } else {
      if (slow)
        detail::note(res, noted,
                     detail::fmt("brute force beat the solver at D=%ld", D));
      ++capped;
    }
  }
  for (long D : {2, 5, 8, 13, 61, 136, 1234}) {
    if (is_square(Int(D))) continue;
    for (unsigned long m : {1ul, 2ul, 3ul, 5ul})
      for (unsigned long n : {1ul, 4ul, 7ul}) {
        QuadFieldElem prod = qf_mul(unit_power(D, m), unit_power(D, n));
        if (!(prod == unit_power(D, m + n)))
          detail::note(res, noted,
                       detail::fmt("unit power %lu+%lu broke at D=%ld", m, n, D));
      }
  }
  res.detail =
      detail::fmt("dmax=%ld exhaustive=%ld capped=%ld", dmax, full, capped) +
      res.detail;
  return res;
}

// --------------------------------------------------------------------------
// 4. Orthogonal groups against the brute-force box search on the named
//    families and on random canonical forms, plus the pinned r_f values.
// --------------------------------------------------------------------------
inline SuiteResult orthogonal(int random_count = 200) {
  SuiteResult res;
  std::mt19937_64 rng(0x0e7a1ULL);
  int noted = 0;
  long named = 0, randoms = 0;

  std::vector<QuadForm> family = {{1, 0, 1}, {1, 1, 1}, {1, 1, 0},
                                  {1, 2, 0}, {1, 3, 0}, {2, 5, 0},
                                  {1, 1, -1}, {1, 2, -1}, {1, 0, -2}};
  for (long a = 1; a <= 4; ++a)
    for (long c = a; c <= 5; ++c) family.push_back(QuadForm{a, 0, c});
  for (long a = 2; a <= 4; ++a)
    for (long b = 1; b <= a; ++b) family.push_back(QuadForm{a, b, a});

  for (const QuadForm& f : family) {
    if (is_zero(f) || !is_primitive(f) || sgn(disc_quad(f)) == 0) continue;
    if (!(reduce_quad(f).first == f)) continue;  // group needs canonical input
    std::string bad = detail::orth_mismatch(f, 3);
    if (!bad.empty()) detail::note(res, noted, bad);
    ++named;
  }

  for (int i = 0; i < random_count; ++i) {
    QuadForm f{detail::rand_in(rng, -9, 9), detail::rand_in(rng, -9, 9),
               detail::rand_in(rng, -9, 9)};
    if (is_zero(f) || !is_primitive(f) || sgn(disc_quad(f)) == 0) {
      --i;
      continue;
    }
    QuadForm g = reduce_quad(f).first;
    std::string bad = detail::orth_mismatch(g, 2);
    if (!bad.empty()) detail::note(res, noted, bad);
    ++randoms;
  }

  const struct {
    QuadForm f;
    int r;
  } pinned[] = {{{1, 1, 1}, 6}, {{1, 0, 1}, 2}, {{1, 1, 0}, 2}, {{1, 2, 0}, 2}};
  for (const auto& p : pinned) {
    int got = r_f(p.f);
    if (got != p.r)
      detail::note(res, noted, detail::fmt("r=%d at %s (want %d)", got,
                                           to_string(p.f).c_str(), p.r));
  }
  res.detail = detail::fmt("named=%ld random=%ld", named, randoms) + res.detail;
  return res;
}

// --------------------------------------------------------------------------
// 5. Galois classification against the mod-p factorization oracle, plus the
//    three pinned classes.
// --------------------------------------------------------------------------
inline SuiteResult galois(int target = 500, int primes = 25) {
  SuiteResult res;
  int noted = 0;

  const struct {
    QuarticForm F;
    GaloisClass want;
  } pinned[] = {
      {parse_quartic("1,0,0,0,1"), GaloisClass::V4},
      {parse_quartic("1,1,1,1,1"), GaloisClass::C4},
      {parse_quartic("1,0,0,0,-2"), GaloisClass::D4},
  };
  for (const auto& p : pinned) {
    GaloisClass got = classify(p.F);
    if (got != p.want)
      detail::note(res, noted,
                   detail::fmt("pinned class %s -> %s", to_string(p.F).c_str(),
                               to_string(got).c_str()));
  }

  long checked = 0, disagreements = 0;
  const struct {
    QuadForm f;
    long X;
  } pools[] = {{{1, 0, 1}, 200}, {{1, 1, 0}, 150}, {{1, 1, -1}, 320}};
  for (const auto& pool : pools) {
    std::vector<QuarticForm> members = enumerate_S(pool.f, pool.X);
    for (const QuarticForm& F : members) {
      if (checked >= target) break;
      GaloisClass cls = classify(F);
      if (cls != GaloisClass::D4 && cls != GaloisClass::C4 &&
          cls != GaloisClass::V4)
        continue;
      FrobeniusReport rep = frobenius_oracle(F, primes);
      if (rep.probable && *rep.probable != cls) {
        ++disagreements;
        detail::note(res, noted,
                     detail::fmt("oracle says %s, classify says %s at %s",
                                 to_string(*rep.probable).c_str(),
                                 to_string(cls).c_str(), to_string(F).c_str()));
      }
      ++checked;
    }
  }
  if (checked < target)
    detail::note(res, noted, detail::fmt("only %ld forms sampled", checked));
  res.detail = detail::fmt("forms=%ld primes=%d disagreements=%ld", checked,
                           primes, disagreements) +
               res.detail;
  return res;
}

// --------------------------------------------------------------------------
// 6. Window multiplicity: sampled non-square-discriminant members meet the
//    window in exactly r_f equivalent copies, and the raw D4/C4 tallies
//    divide exactly by r_f (count_classes hard-errors otherwise).
// --------------------------------------------------------------------------
inline SuiteResult multiplicity(long X = 500, int samples = 12) {
  SuiteResult res;
  int noted = 0;
  long tested = 0;
  for (const QuadForm& f :
       {QuadForm{1, 0, 1}, QuadForm{1, 1, 0}, QuadForm{1, 1, -1}}) {
    int r = r_f(f);
    try {
      (void)count_classes(f, X);  // throws std::logic_error on bad division
    } catch (const std::logic_error& e) {
      detail::note(res, noted, detail::fmt("tally division broke at %s: %s",
                                           to_string(f).c_str(), e.what()));
      continue;
    }
    std::vector<QuarticForm> members = enumerate_S(f, X);
    std::map<std::pair<Int, Int>, std::vector<size_t>> buckets;
    std::vector<bool> sq(members.size());
    for (size_t i = 0; i < members.size(); ++i) {
      Invariants iv = invariants(members[i]);
      buckets[{rat_to_int(iv.I), rat_to_int(iv.J)}].push_back(i);
      sq[i] = rat_is_square(iv.disc);
    }
    int picked = 0;
    size_t stride = std::max<size_t>(1, members.size() / samples);
    for (size_t i = 0; i < members.size() && picked < samples; i += stride) {
      size_t j = i;
      while (j < members.size() && sq[j]) ++j;  // need non-square disc
      if (j >= members.size()) break;
      Invariants iv = invariants(members[j]);
      const auto& bucket = buckets[{rat_to_int(iv.I), rat_to_int(iv.J)}];
      int copies = 0;
      for (size_t k : bucket)
        if (quartic_equivalent(members[j], members[k])) ++copies;
      if (copies != r)
        detail::note(res, noted,
                     detail::fmt("%d copies of %s in the %s window (want %d)",
                                 copies, to_string(members[j]).c_str(),
                                 to_string(f).c_str(), r));
      ++picked;
      ++tested;
    }
  }
  res.detail = detail::fmt("X=%ld sampled=%ld", X, tested) + res.detail;
  return res;
}

// --------------------------------------------------------------------------
// 7. Census oracle: the streamed class counts equal the brute-force
//    partition on the three census forms.
// --------------------------------------------------------------------------
inline SuiteResult census_oracle(long X = 120) {
  SuiteResult res;
  int noted = 0;
  for (const QuadForm& f :
       {QuadForm{1, 0, 1}, QuadForm{1, 1, 0}, QuadForm{1, 1, -1}}) {
    ClassCountReport fast = count_classes(f, X);
    ClassCountReport slow = brute_force_classes(f, X);
    if (fast.n_d4 != slow.n_d4 || fast.n_c4 != slow.n_c4 ||
        fast.n_v4 != slow.n_v4)
      detail::note(
          res, noted,
          detail::fmt("%s: fast %lld/%lld/%lld vs brute %lld/%lld/%lld",
                      to_string(f).c_str(), fast.n_d4, fast.n_c4, fast.n_v4,
                      slow.n_d4, slow.n_c4, slow.n_v4));
    res.detail += detail::fmt("%s[%lld,%lld,%lld] ", to_string(f).c_str(),
                              fast.n_d4, fast.n_c4, fast.n_v4);
  }
  res.detail = detail::fmt("X=%ld ", X) + res.detail;
  return res;
}

// --------------------------------------------------------------------------
// 8. Asymptotic reproduction at the pinned scales.
// --------------------------------------------------------------------------
inline double d4_ratio(const ClassCountReport& r) {
  double x = mpz_get_d(r.X.get_mpz_t());
  return static_cast<double>(r.n_d4) / std::pow(x, 1.5);
}

// Single-family ratio check used by the CLI: N_D4 / (s r)^-1-normalized main
// term coefficient within `tol` of the closed form.
inline SuiteResult asymptotic_single(const QuadForm& f, long X,
                                     double tol = 0.25) {
  SuiteResult res;
  ClassCountReport rep = count_classes(f, X);
  double ratio = rep.main_term > 0
                     ? static_cast<double>(rep.n_d4) / rep.main_term
                     : 0.0;
  res.pass = std::abs(ratio - 1.0) <= tol;
  res.detail = detail::fmt("f=%s X=%ld N_D4=%lld main=%.6g ratio=%.6g tol=%g",
                           to_string(f).c_str(), X, rep.n_d4, rep.main_term,
                           ratio, tol);
  return res;
}

inline SuiteResult asymptotic(long x_lo = 10000, long x_mid = 20000,
                              long x_hi = 40000) {
  SuiteResult res;
  const double pi = 3.14159265358979323846;

  // Positive definite family: ratio against 13 pi / 432, strictly improving.
  ClassCountReport p1 = count_classes(QuadForm{1, 0, 1}, x_lo);
  ClassCountReport p4 = count_classes(QuadForm{1, 0, 1}, x_hi);
  double cpd = 13.0 * pi / 432.0;
  double e1 = std::abs(d4_ratio(p1) - cpd);
  double e4 = std::abs(d4_ratio(p4) - cpd);
  bool pass_pd = e4 <= 0.25 * cpd && e4 < e1;

  // Reducible family: least-squares slope of N/X^{3/2} against log X.
  ClassCountReport r1 = count_classes(QuadForm{1, 1, 0}, x_lo);
  ClassCountReport r2 = count_classes(QuadForm{1, 1, 0}, x_mid);
  ClassCountReport r3 = count_classes(QuadForm{1, 1, 0}, x_hi);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const ClassCountReport* r : {&r1, &r2, &r3}) {
    double lx = std::log(mpz_get_d(r->X.get_mpz_t()));
    double y = d4_ratio(*r);
    sx += lx;
    sy += y;
    sxx += lx * lx;
    sxy += lx * y;
  }
  double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  double cred = 1.0 / 18.0;
  bool pass_red = std::abs(slope - cred) <= 0.25 * cred;

  // Indefinite family: ratio against 2 t5 / (9 * 5^{3/2}).
  ClassCountReport q4 = count_classes(QuadForm{1, 1, -1}, x_hi);
  double t5 = std::log((1.0 + std::sqrt(5.0)) / 2.0);
  double cind = 2.0 * t5 / (9.0 * std::pow(5.0, 1.5));
  double eind = std::abs(d4_ratio(q4) - cind);
  bool pass_ind = eind <= 0.25 * cind;

  res.pass = pass_pd && pass_red && pass_ind;
  res.detail = detail::fmt(
      "posdef ratio %.6g->%.6g vs %.6g (%s); split slope %.6g vs %.6g (%s); "
      "indef ratio %.6g vs %.6g (%s)",
      d4_ratio(p1), d4_ratio(p4), cpd, pass_pd ? "ok" : "FAIL", slope, cred,
      pass_red ? "ok" : "FAIL", d4_ratio(q4), cind, pass_ind ? "ok" : "FAIL");
  return res;
}

// --------------------------------------------------------------------------
// 9. Smallness of the cyclic and biquadratic counts next to the dihedral
//    count at the pinned scale.
// --------------------------------------------------------------------------
inline SuiteResult smallness(long X = 10000) {
  SuiteResult res;
  int noted = 0;
  for (const QuadForm& f :
       {QuadForm{1, 0, 1}, QuadForm{1, 1, 0}, QuadForm{1, 2, 0}}) {
    ClassCountReport rep = count_classes(f, X);
    long long side = rep.n_c4 + rep.n_v4;
    if (20 * side > rep.n_d4)
      detail::note(res, noted,
                   detail::fmt("%s: C4+V4 = %lld vs D4 = %lld",
                               to_string(f).c_str(), side, rep.n_d4));
    res.detail += detail::fmt("%s[%lld/%lld] ", to_string(f).c_str(), side,
                              rep.n_d4);
  }
  res.detail = detail::fmt("X=%ld ", X) + res.detail;
  return res;
}

// --------------------------------------------------------------------------
// 10. Negative Pell criterion: the solvability of x^2 - D y^2 = -4 and the
//     divisor-shape equivalence coincide for every admissible (alpha, beta).
// --------------------------------------------------------------------------
inline SuiteResult negpell(long dmax = 500) {
  SuiteResult res;
  int noted = 0;
  long checked = 0;
  for (long beta = 1; beta * beta <= dmax; ++beta)
    for (long alpha = 1; beta * beta + 4 * alpha * alpha <= dmax; ++alpha) {
      Int D = Int(beta) * beta + 4 * Int(alpha) * alpha;
      if (gcd(Int(alpha), Int(beta)) != 1 || is_square(D)) continue;
      NegPellReport r = negative_pell_criterion(Int(alpha), Int(beta));
      if (r.pell_solvable != r.shape_equivalent)
        detail::note(res, noted,
                     detail::fmt("split at alpha=%ld beta=%ld", alpha, beta));
      ++checked;
    }
  res.detail = detail::fmt("dmax=%ld pairs=%ld", dmax, checked) + res.detail;
  return res;
}

// --------------------------------------------------------------------------
// 11. Parametrization: (L, K) round-trip through the chart coordinates and
//     the finite-difference Jacobian determinant -1/18, per branch.
// --------------------------------------------------------------------------
inline SuiteResult params(int points = 100) {
  SuiteResult res;
  std::mt19937_64 rng(0x9a2a7ULL);
  int noted = 0;
  const ParamBranch branches[] = {
      ParamBranch::PosDef, ParamBranch::Indef1, ParamBranch::Indef2,
      ParamBranch::Indef3, ParamBranch::Indef4, ParamBranch::Red1,
      ParamBranch::Red2};

  auto sample_stabilizer = [&](ParamBranch b) -> QuadForm {
    for (;;) {
      switch (b) {
        case ParamBranch::PosDef: {
          QuadForm f{detail::rand_in(rng, 1, 3), detail::rand_in(rng, -3, 3),
                     detail::rand_in(rng, 1, 4)};
          if (sgn(disc_quad(f)) < 0) return f;
          break;
        }
        case ParamBranch::Red1:
        case ParamBranch::Red2: {
          QuadForm f{detail::rand_in(rng, -2, 2), detail::rand_in(rng, -3, 3),
                     0};
          if (sgn(f.beta) != 0) return f;
          break;
        }
        default: {
          QuadForm f{detail::rand_in(rng, 1, 3), detail::rand_in(rng, -3, 3),
                     detail::rand_in(rng, -4, 4)};
          Int d = disc_quad(f);
          if (sgn(d) > 0 && !is_square(d)) return f;
          break;
        }
      }
    }
  };
  auto sample_lk = [&](ParamBranch b) -> std::array<double, 2> {
    for (;;) {
      double L = detail::rand_real(rng, -6.0, 6.0);
      double w = detail::rand_real(rng, 0.5, 30.0);
      bool negw = (b == ParamBranch::Indef3 || b == ParamBranch::Indef4) ||
                  ((b == ParamBranch::Red1 || b == ParamBranch::Red2) &&
                   detail::rand_in(rng, 0, 1) == 1);
      if (negw) w = -w;
      double K = (w - L * L) / 4.0;
      if (std::abs(2.0 * L * L - K) < 0.25) continue;
      return {L, K};
    }
  };

  long tested = 0;
  const double h = 1e-5;
  for (ParamBranch b : branches) {
    for (int i = 0; i < points; ++i) {
      QuadForm f = sample_stabilizer(b);
      std::array<double, 2> lk = sample_lk(b);
      double t = (b == ParamBranch::PosDef)
                     ? detail::rand_real(rng, -0.7, 0.7)
                     : detail::rand_real(rng, -0.4, 0.4);
      ParamPoint p{lk[0], lk[1], t, b};
      RealChart c = param_form(f, p);
      std::array<double, 2> back = lk_from_chart(f, c);
      double tol0 = 1e-9 * std::max(1.0, std::abs(lk[0]));
      double tol1 = 1e-9 * std::max(1.0, std::abs(lk[1]));
      if (std::abs(back[0] - lk[0]) > tol0 || std::abs(back[1] - lk[1]) > tol1)
        detail::note(res, noted,
                     detail::fmt("round-trip drift at branch %d point %d",
                                 static_cast<int>(b), i));
      double jd = jacobian_det(f, p, h);
      if (std::abs(jd - (-1.0 / 18.0)) > 1e-6)
        detail::note(res, noted,
                     detail::fmt("jacobian %.8g at branch %d point %d", jd,
                                 static_cast<int>(b), i));
      ++tested;
    }
  }
  res.detail = detail::fmt("branches=7 points=%ld", tested) + res.detail;
  return res;
}

}  // namespace qc::suites
