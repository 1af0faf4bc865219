#pragma once

// Reference computations for the tests. Everything here is built from the bracket
// definition, Koszul, or elementary integer arithmetic, never from the library's
// closed forms.

#include "aah/algebra.hpp"
#include "aah/lattice.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using aah::MatD;
using aah::VecD;

inline MatD mat(std::initializer_list<std::initializer_list<double>> rows) {
  MatD M(rows.size(), rows.begin()->size());
  int i = 0;
  for (auto& r : rows) {
    int j = 0;
    for (double x : r) M(i, j++) = x;
    ++i;
  }
  return M;
}

inline MatD random_L(std::mt19937_64& rng, int n, double lo = -2, double hi = 2) {
  std::uniform_real_distribution<double> U(lo, hi);
  MatD L(2 * n - 1, 2 * n - 1);
  for (int i = 0; i < L.rows(); ++i)
    for (int j = 0; j < L.cols(); ++j) L(i, j) = U(rng);
  return L;
}

inline MatD make_unimodular(MatD L) {
  const double t = L.trace() / L.rows();
  for (int i = 0; i < L.rows(); ++i) L(i, i) -= t;
  return L;
}

inline VecD random_vec(std::mt19937_64& rng, int N) {
  std::normal_distribution<double> G;
  VecD v(N);
  for (int i = 0; i < N; ++i) v(i) = G(rng);
  return v;
}

// [x, y] for g = R e0 ⋉_L u, written out componentwise.
inline VecD bracket(const MatD& L, const VecD& x, const VecD& y) {
  const int N = static_cast<int>(x.size());
  VecD r = VecD::Zero(N);
  for (int i = 1; i < N; ++i)
    for (int j = 1; j < N; ++j) r(i) += L(i - 1, j - 1) * (x(0) * y(j) - y(0) * x(j));
  return r;
}

inline VecD e(int N, int i) { return VecD::Unit(N, i); }

// ∇_{e_i} as matrices, from 2<∇_x y,z> = <[x,y],z> - <[y,z],x> + <[z,x],y>.
inline std::vector<MatD> koszul(const MatD& L) {
  const int N = static_cast<int>(L.rows()) + 1;
  std::vector<MatD> nab(N, MatD::Zero(N, N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        nab[i](k, j) = 0.5 * (bracket(L, e(N, i), e(N, j))(k) - bracket(L, e(N, j), e(N, k))(i) +
                              bracket(L, e(N, k), e(N, i))(j));
  return nab;
}

inline MatD std_J(int n) {
  MatD J = MatD::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    J(2 * i + 1, 2 * i) = 1;
    J(2 * i, 2 * i + 1) = -1;
  }
  return J;
}

inline double energy(const MatD& L, const MatD& J) {
  double s = 0;
  for (const MatD& Ni : koszul(L)) s += (Ni * J - J * Ni).squaredNorm();
  return s;
}

// Tangent vector at J: skew and anticommuting with J.
inline MatD random_tangent(std::mt19937_64& rng, const MatD& J) {
  const int N = static_cast<int>(J.rows());
  MatD X(N, N);
  for (int i = 0; i < N; ++i) X.col(i) = random_vec(rng, N);
  X = X - X.transpose().eval();
  return 0.5 * (X + J * X * J);
}

// Curve through J with velocity V.
inline MatD along(const MatD& J, const MatD& V, double t) {
  MatD W = 0.5 * J * V * t;
  return W.exp() * J * (-W).exp();
}

// dω(x,y,z) = -ω([x,y],z) - ω([y,z],x) - ω([z,x],y), ω(a,b) = <Ja,b>.
inline double d_omega(const MatD& L, const MatD& J, const VecD& x, const VecD& y, const VecD& z) {
  auto w = [&](const VecD& a, const VecD& b) { return (J * a).dot(b); };
  return -w(bracket(L, x, y), z) - w(bracket(L, y, z), x) - w(bracket(L, z, x), y);
}

// (∇_x ω)(y,z) = -ω(∇_x y, z) - ω(y, ∇_x z)
inline double nabla_omega(const std::vector<MatD>& nab, const MatD& J, int i, const VecD& y, const VecD& z) {
  auto w = [&](const VecD& a, const VecD& b) { return (J * a).dot(b); };
  return -w(nab[i] * y, z) - w(y, nab[i] * z);
}

inline VecD nijenhuis(const MatD& L, const MatD& J, const VecD& x, const VecD& y) {
  return bracket(L, x, y) + J * (bracket(L, J * x, y) + bracket(L, x, J * y)) - bracket(L, J * x, J * y);
}

// Random L with a chosen subset of the class-defining constraints imposed, so that
// sweeps reach every class instead of only W. variant in [0, 12).
inline MatD structured_L(std::mt19937_64& rng, int n, int variant) {
  std::uniform_real_distribution<double> U(-2, 2);
  const int m = 2 * n - 2;
  MatD L = random_L(rng, n);
  MatD Jp = std_J(n).bottomRightCorner(m, m);
  MatD D = L.bottomRightCorner(m, m);
  MatD Ds = 0.5 * (D + D.transpose()), Da = 0.5 * (D - D.transpose());
  auto commuting = [&](const MatD& X) { return MatD(0.5 * (X - Jp * X * Jp)); };
  auto anticommuting = [&](const MatD& X) { return MatD(0.5 * (X + Jp * X * Jp)); };
  const bool kill_v = variant % 2 == 1 || variant >= 8;
  const bool kill_w = (variant / 2) % 2 == 1 || variant >= 10;
  switch (variant % 6) {
    case 0: break;
    case 1: Da = commuting(Da); break;
    case 2: Da = commuting(Da); Ds = commuting(Ds); break;
    case 3: Da = commuting(Da); Ds = anticommuting(Ds); break;
    case 4: Da = commuting(Da); Ds = anticommuting(Ds) + U(rng) * MatD::Identity(m, m); break;
    case 5: Da = commuting(Da); Ds = U(rng) * MatD::Identity(m, m); break;
  }
  if (variant == 9) Ds.setZero();
  L.bottomRightCorner(m, m) = Ds + Da;
  if (kill_v) L.block(1, 0, m, 1).setZero();
  if (kill_w) L.block(0, 1, 1, m).setZero();
  // trace-free D on a third of the draws
  if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
    const double t = L.bottomRightCorner(m, m).trace() / m;
    L.bottomRightCorner(m, m) -= t * MatD::Identity(m, m);
  }
  if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) L(0, 0) = 0;
  return L;
}

// ---- integer oracles

using Int = __int128;

inline Int det_bareiss(std::vector<std::vector<Int>> a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline long long gcd_ll(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return static_cast<long long>(a);
}

// Determinantal divisors: d_k = gcd of k×k minors; invariant factors are d_k / d_{k-1}.
inline std::vector<long long> invariant_factors(const aah::MatZ& M) {
  const int r = static_cast<int>(M.rows()), c = static_cast<int>(M.cols());
  const int kmax = std::min(r, c);
  std::vector<long long> dk{1};
  auto combos = [](int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> s(k);
    std::iota(s.begin(), s.end(), 0);
    if (k > n) return out;
    while (true) {
      out.push_back(s);
      int i = k - 1;
      while (i >= 0 && s[i] == n - k + i) --i;
      if (i < 0) break;
      ++s[i];
      for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
    return out;
  };
  for (int k = 1; k <= kmax; ++k) {
    long long g = 0;
    for (const auto& rows : combos(r, k))
      for (const auto& cols : combos(c, k)) {
        std::vector<std::vector<Int>> a(k, std::vector<Int>(k));
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) a[i][j] = M(rows[i], cols[j]);
        g = gcd_ll(g, det_bareiss(a));
      }
    dk.push_back(g);
  }
  std::vector<long long> f;
  for (int k = 1; k <= kmax; ++k) f.push_back(dk[k - 1] == 0 ? 0 : dk[k] / dk[k - 1]);
  return f;
}

}  // namespace oracle
