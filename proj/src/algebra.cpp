#include "aah/algebra.hpp"
#include "aah/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aah {

namespace {

template <class T>
void check_finite(const Mat<T>& L) {
  if constexpr (!is_exact_v<T>) {
    if (!L.allFinite()) fail(ErrorKind::InvalidInput, "L has non-finite entries");
  }
}

}  // namespace

template <class T>
AlgebraSpec<T> AlgebraSpec<T>::from_matrix(int n, Mat<T> L, double tolerance) {
  if (n < 2) fail(ErrorKind::InvalidInput, "n must be >= 2, got " + std::to_string(n));
  if (L.rows() != 2 * n - 1 || L.cols() != 2 * n - 1) {
    std::ostringstream os;
    os << "L must be " << 2 * n - 1 << "x" << 2 * n - 1 << " for n=" << n << ", got " << L.rows() << "x"
       << L.cols();
    fail(ErrorKind::InvalidInput, os.str());
  }
  if (!(tolerance > 0) && !is_exact_v<T>) fail(ErrorKind::InvalidInput, "tolerance must be positive");
  check_finite(L);
  AlgebraSpec s;
  s.n = n;
  s.L = std::move(L);
  s.tolerance = tolerance;
  return s;
}

template <class T>
AlgebraSpec<T> AlgebraSpec<T>::from_components(int n, const T& mu, const Vec<T>& v0, const Vec<T>& w0,
                                               const Mat<T>& D, double tolerance) {
  if (n < 2) fail(ErrorKind::InvalidInput, "n must be >= 2, got " + std::to_string(n));
  const int m = 2 * n - 2;
  if (v0.size() != m || w0.size() != m || D.rows() != m || D.cols() != m)
    fail(ErrorKind::InvalidInput, "components must have v0,w0 of length " + std::to_string(m) + " and D " +
                                      std::to_string(m) + "x" + std::to_string(m));
  Mat<T> L = Mat<T>::Zero(m + 1, m + 1);
  L(0, 0) = mu;
  L.block(0, 1, 1, m) = w0.transpose();
  L.block(1, 0, m, 1) = v0;
  L.block(1, 1, m, m) = D;
  return from_matrix(n, std::move(L), tolerance);
}

template <class T>
double Decomposition<T>::tol(int degree) const {
  return tolerance * std::pow(scale, degree);
}

template <class T>
Mat<T> Decomposition<T>::reassemble() const {
  const Eigen::Index m = D.rows();
  Mat<T> R(m + 1, m + 1);
  R(0, 0) = mu;
  R.block(0, 1, 1, m) = w0.transpose();
  R.block(1, 0, m, 1) = v0;
  R.block(1, 1, m, m) = D;
  return R;
}

template <class T>
Decomposition<T> decompose(const AlgebraSpec<T>& spec) {
  if (spec.L.rows() != 2 * spec.n - 1 || spec.L.cols() != 2 * spec.n - 1)
    fail(ErrorKind::InvalidInput, "dimension mismatch between n and L");
  const int m = 2 * spec.n - 2;
  Decomposition<T> d;
  d.n = spec.n;
  d.L = spec.L;
  d.tolerance = spec.tolerance;
  d.scale = std::max(1.0, frob(spec.L));
  d.mu = spec.L(0, 0);
  d.w0 = spec.L.block(0, 1, 1, m).transpose();
  d.v0 = spec.L.block(1, 0, m, 1);
  d.D = spec.L.block(1, 1, m, m);
  if constexpr (is_exact_v<T>) {
    const Rational half(1, 2);
    d.gamma = (d.v0 + d.w0) * half;
    d.rho = (d.v0 - d.w0) * half;
    d.Ds = (d.D + d.D.transpose()) * half;
    d.Da = (d.D - d.D.transpose()) * half;
    d.S = (spec.L + spec.L.transpose()) * half;
    d.A = (spec.L - spec.L.transpose()) * half;
  } else {
    d.gamma = 0.5 * (d.v0 + d.w0);
    d.rho = 0.5 * (d.v0 - d.w0);
    d.Ds = 0.5 * (d.D + d.D.transpose());
    d.Da = 0.5 * (d.D - d.D.transpose());
    d.S = 0.5 * (spec.L + spec.L.transpose());
    d.A = 0.5 * (spec.L - spec.L.transpose());
  }
  d.trace_S = d.S.trace();
  return d;
}

template <class T>
ComplexStructure<T> standard_J(int n) {
  if (n < 2) fail(ErrorKind::InvalidInput, "standard_J needs n >= 2, got " + std::to_string(n));
  ComplexStructure<T> c;
  c.J = Mat<T>::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    c.J(2 * i + 1, 2 * i) = 1;
    c.J(2 * i, 2 * i + 1) = -1;
  }
  c.Jprime = c.J.block(2, 2, 2 * n - 2, 2 * n - 2);
  return c;
}

template <class T>
bool is_unimodular(const AlgebraSpec<T>& spec) {
  T tr = spec.L.trace();
  return scalar_vanishes(tr, spec.tolerance * std::max(1.0, frob(spec.L)));
}

template <class T>
Mat<T> ad_e0(const Mat<T>& L) {
  const Eigen::Index m = L.rows();
  Mat<T> M = Mat<T>::Zero(m + 1, m + 1);
  M.block(1, 1, m, m) = L;
  return M;
}

template <class T>
Vec<T> bracket(const AlgebraSpec<T>& spec, const Vec<T>& x, const Vec<T>& y) {
  const int N = spec.dim();
  if (x.size() != N || y.size() != N) fail(ErrorKind::InvalidInput, "bracket: vectors must have length 2n");
  Vec<T> r = Vec<T>::Zero(N);
  Vec<T> xu = x.tail(N - 1), yu = y.tail(N - 1);
  Vec<T> t = spec.L * yu * x(0) - spec.L * xu * y(0);
  r.tail(N - 1) = t;
  return r;
}

template <class T>
AlgebraSpec<T> convert_spec(const AlgebraSpec<Rational>& spec) {
  if constexpr (is_exact_v<T>) {
    return spec;
  } else {
    AlgebraSpec<double> s;
    s.n = spec.n;
    s.L = to_double(spec.L);
    s.tolerance = spec.tolerance;
    return s;
  }
}

namespace {

template <class T>
void check_compatible_impl(const Mat<T>& J, double tol) {
  if (J.rows() != J.cols() || J.rows() % 2 != 0)
    fail(ErrorKind::InvalidInput, "J must be square of even size");
  const Eigen::Index N = J.rows();
  Mat<T> I = Mat<T>::Identity(N, N);
  Mat<T> sq = J * J + I;
  Mat<T> orth = J.transpose() * J - I;
  if (!vanishes(sq, tol) || !vanishes(orth, tol)) {
    std::ostringstream os;
    os << "J is not a compatible almost complex structure: ||J^2+I|| = " << frob(sq)
       << ", ||J^t J - I|| = " << frob(orth);
    fail(ErrorKind::InvalidInput, os.str());
  }
}

}  // namespace

void check_compatible(const MatD& J, double tol) { check_compatible_impl(J, tol); }
void check_compatible(const MatQ& J, double tol) { check_compatible_impl(J, tol); }

AdaptedFrame adapt_basis(const AlgebraSpec<double>& spec, const MatD& J) {
  const int N = spec.dim();
  check_compatible(J, 1e-9);
  MatD P = MatD::Zero(N, N);
  VecD e0 = VecD::Unit(N, 0);
  P.col(0) = e0;
  P.col(1) = J * e0;
  int filled = 2;
  while (filled < N) {
    // Largest residual of a standard basis vector against the current span.
    int best = -1;
    double best_norm = -1;
    VecD best_r;
    for (int k = 0; k < N; ++k) {
      VecD r = VecD::Unit(N, k);
      for (int c = 0; c < filled; ++c) r -= P.col(c).dot(r) * P.col(c);
      double nr = r.norm();
      if (nr > best_norm) {
        best_norm = nr;
        best = k;
        best_r = r;
      }
    }
    if (best < 0 || best_norm < 1e-8) fail(ErrorKind::Degenerate, "adapt_basis: could not extend J-adapted frame");
    VecD x = best_r / best_norm;
    VecD jx = J * x;
    for (int c = 0; c < filled; ++c) jx -= P.col(c).dot(jx) * P.col(c);
    jx.normalize();
    P.col(filled) = x;
    P.col(filled + 1) = jx;
    filled += 2;
  }
  MatD ad = ad_e0(spec.L);
  MatD adP = P.transpose() * ad * P;
  AdaptedFrame f;
  f.P = P;
  f.spec = AlgebraSpec<double>::from_matrix(spec.n, adP.block(1, 1, N - 1, N - 1), spec.tolerance);
  return f;
}

#define AAH_INSTANTIATE(T)                                                              \
  template struct AlgebraSpec<T>;                                                       \
  template struct Decomposition<T>;                                                     \
  template Decomposition<T> decompose<T>(const AlgebraSpec<T>&);                        \
  template ComplexStructure<T> standard_J<T>(int);                                      \
  template bool is_unimodular<T>(const AlgebraSpec<T>&);                                \
  template Mat<T> ad_e0<T>(const Mat<T>&);                                              \
  template Vec<T> bracket<T>(const AlgebraSpec<T>&, const Vec<T>&, const Vec<T>&);      \
  template AlgebraSpec<T> convert_spec<T>(const AlgebraSpec<Rational>&);

AAH_INSTANTIATE(double)
AAH_INSTANTIATE(Rational)

}  // namespace aah
