#include "qc/quadlattice.hpp"

#include <stdexcept>
#include <utility>

namespace qc {

namespace {

struct ChartData {
  // numerators of the two completed coefficients: N[i] . (A,B,C), each
  // divisible by mod[i] exactly on the lattice
  std::array<std::array<Int, 3>, 2> N;
  std::array<Int, 2> mod;
};

ChartData chart_data(const QuadForm& f, int chart) {
  const Int &a = f.alpha, &b = f.beta, &g = f.gamma;
  ChartData d;
  if (chart == 1) {
    if (a == 0) throw std::domain_error("qc: chart 1 needs alpha != 0");
    // a1 = N0/(2 alpha^2), a0 = N1/(8 alpha^3)
    d.N[0] = {4 * b * g, -(b * b + 2 * a * g), 2 * a * b};
    d.N[1] = {4 * g * (b * b + 2 * a * g), -b * (b * b + 4 * a * g), 2 * a * b * b};
    d.mod = {2 * a * a, 8 * a * a * a};
  } else if (chart == 2) {
    Int m = b * (b * b + 4 * a * g);
    if (m == 0) throw std::domain_error("qc: chart 2 needs beta*(beta^2+4*alpha*gamma) != 0");
    // a3 = N0/m, a1 = -N1/m
    d.N[0] = {g * (4 * b * b + 8 * a * g), 2 * a * b * b, -8 * a * a * a};
    d.N[1] = {8 * g * g * g, -2 * b * b * g, -a * (4 * b * b + 8 * a * g)};
    d.mod = {m, m};
  } else {
    throw std::domain_error("qc: chart must be 1 or 2");
  }
  return d;
}

Int dot3(const std::array<Int, 3>& r, const Int& A, const Int& B, const Int& C) {
  return r[0] * A + r[1] * B + r[2] * C;
}

// floor quotient (mpz_class's operator/ truncates)
Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Kernel of the 2x5 matrix [N | -diag(mod)] over Z, projected to the first
// three coordinates: these are exactly the (A,B,C) with mod[i] | N[i].(A,B,C).
// Column echelon with a tracked unimodular transform.
std::array<std::array<Int, 3>, 3> congruence_kernel(const ChartData& d) {
  std::array<std::array<Int, 5>, 2> M{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) M[i][j] = d.N[i][j];
    M[i][3 + i] = -d.mod[i];
  }
  std::array<std::array<Int, 5>, 5> U{};
  for (int i = 0; i < 5; ++i) U[i][i] = 1;
  int c = 0;
  for (int r = 0; r < 2; ++r) {
    while (true) {
      int piv = -1;
      for (int j = c; j < 5; ++j)
        if (M[r][j] != 0 && (piv < 0 || mpz_cmpabs(M[r][j].get_mpz_t(), M[r][piv].get_mpz_t()) < 0)) piv = j;
      if (piv < 0) throw std::logic_error("qc: congruence matrix lost full row rank");
      if (piv != c) {
        for (int i = 0; i < 2; ++i) std::swap(M[i][piv], M[i][c]);
        for (int i = 0; i < 5; ++i) std::swap(U[i][piv], U[i][c]);
      }
      bool clean = true;
      for (int j = c + 1; j < 5; ++j) {
        if (M[r][j] == 0) continue;
        Int q = M[r][j] / M[r][c];
        if (q != 0) {
          for (int i = 0; i < 2; ++i) M[i][j] -= q * M[i][c];
          for (int i = 0; i < 5; ++i) U[i][j] -= q * U[i][c];
        }
        if (M[r][j] != 0) clean = false;
      }
      if (clean) break;
    }
    ++c;
  }
  std::array<std::array<Int, 3>, 3> K;
  for (int t = 0; t < 3; ++t)
    for (int j = 0; j < 3; ++j) K[t][j] = U[j][2 + t];
  return K;
}

std::array<std::array<Int, 3>, 3> row_hnf3(std::array<std::array<Int, 3>, 3> R) {
  for (int col = 0; col < 3; ++col) {
    int r = col;
    while (true) {
      int piv = -1;
      for (int i = r; i < 3; ++i)
        if (R[i][col] != 0 && (piv < 0 || mpz_cmpabs(R[i][col].get_mpz_t(), R[piv][col].get_mpz_t()) < 0)) piv = i;
      if (piv < 0) throw std::logic_error("qc: congruence lattice is not full rank");
      std::swap(R[piv], R[r]);
      bool clean = true;
      for (int i = r + 1; i < 3; ++i) {
        if (R[i][col] == 0) continue;
        Int q = R[i][col] / R[r][col];
        if (q != 0)
          for (int j = 0; j < 3; ++j) R[i][j] -= q * R[r][j];
        if (R[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (R[r][col] < 0)
      for (int j = 0; j < 3; ++j) R[r][j] = -R[r][j];
    for (int i = 0; i < r; ++i) {
      Int q = fdiv(R[i][col], R[r][col]);
      if (q != 0)
        for (int j = 0; j < 3; ++j) R[i][j] -= q * R[r][j];
    }
  }
  return R;
}

}  // namespace

bool in_V_Zf(const QuadForm& f, const QuarticForm& F) {
  if (disc_quad(f) == 0) throw std::domain_error("qc: in_V_Zf needs disc(f) != 0");
  if (!is_integral(F)) throw std::domain_error("qc: in_V_Zf needs integral F");
  return twisted_act(F, assoc_matrix(f)) == F;
}

QuarticForm complete_quartic(const QuadForm& f, int chart, const Int& A, const Int& B,
                             const Int& C) {
  ChartData d = chart_data(f, chart);
  Rat n0 = Rat(dot3(d.N[0], A, B, C)) / d.mod[0];
  Rat n1 = Rat(dot3(d.N[1], A, B, C)) / d.mod[1];
  n0.canonicalize();
  n1.canonicalize();
  if (chart == 1) return QuarticForm{Rat(A), Rat(B), Rat(C), n0, n1};
  return QuarticForm{Rat(A), n0, Rat(B), -n1, Rat(C)};
}

LatticeBasis lattice_basis(const QuadForm& f, int chart) {
  if (!is_primitive(f)) throw std::domain_error("qc: lattice_basis needs primitive f");
  if (disc_quad(f) == 0) throw std::domain_error("qc: lattice_basis needs disc(f) != 0");
  ChartData d = chart_data(f, chart);
  LatticeBasis basis{chart, row_hnf3(congruence_kernel(d))};
  // determinant sanity check against the closed form
  Int det = basis.rows[0][0] * basis.rows[1][1] * basis.rows[2][2];
  Int expected;
  if (chart == 1) {
    expected = s_f(f) * abs(f.alpha * f.alpha * f.alpha);
  } else {
    Int m8 = s_f(f) * abs(f.beta * (f.beta * f.beta + 4 * f.alpha * f.gamma));
    if (m8 % 8 != 0) throw std::logic_error("qc: chart-2 determinant formula is fractional");
    expected = m8 / 8;
  }
  if (det != expected) throw std::logic_error("qc: lattice determinant mismatch");
  return basis;
}

Int lattice_det(const QuadForm& f, int chart) {
  LatticeBasis basis = lattice_basis(f, chart);
  return basis.rows[0][0] * basis.rows[1][1] * basis.rows[2][2];
}

int s_f(const QuadForm& f) {
  Int d = disc_quad(f);
  if (d == 0) throw std::domain_error("qc: s_f needs disc(f) != 0");
  return mpz_odd_p(d.get_mpz_t()) ? 8 : 1;
}

bool lattice_contains(const LatticeBasis& basis, const Int& A, const Int& B, const Int& C) {
  std::array<Int, 3> v{A, B, C};
  for (int r = 0; r < 3; ++r) {
    if (v[r] % basis.rows[r][r] != 0) return false;
    Int u = v[r] / basis.rows[r][r];
    for (int j = r; j < 3; ++j) v[j] -= u * basis.rows[r][j];
  }
  return true;
}

int preferred_chart(const QuadForm& f) {
  Int d = disc_quad(f);
  return (d >= 0 && is_square(d)) ? 2 : 1;
}

}  // namespace qc
