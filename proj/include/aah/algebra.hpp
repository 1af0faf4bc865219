#pragma once

#include "aah/scalar.hpp"

namespace aah {

// g = R e0 ⋉_L R^{2n-1}; L acts on u = span{e1..e_{2n-1}} in the orthonormal basis.
template <class T>
struct AlgebraSpec {
  int n = 2;
  Mat<T> L;
  double tolerance = 1e-9;  // ignored when T is Rational

  int dim() const { return 2 * n; }
  static AlgebraSpec from_matrix(int n, Mat<T> L, double tolerance = 1e-9);
  static AlgebraSpec from_components(int n, const T& mu, const Vec<T>& v0, const Vec<T>& w0, const Mat<T>& D,
                                     double tolerance = 1e-9);
};

template <class T>
struct Decomposition {
  int n = 2;
  T mu;
  Vec<T> v0, w0, gamma, rho;
  Mat<T> D, Ds, Da;
  Mat<T> S, A;  // on u, size 2n-1
  T trace_S;
  Mat<T> L;
  double tolerance = 1e-9;
  double scale = 1.0;  // max(1, ||L||)

  // Absolute threshold for a residual homogeneous of the given degree in L.
  double tol(int degree = 1) const;
  Mat<T> reassemble() const;
  T trace_D() const { return D.trace(); }
};

template <class T>
struct ComplexStructure {
  Mat<T> J;       // 2n x 2n
  Mat<T> Jprime;  // restriction to a, (2n-2) x (2n-2)
};

template <class T>
Decomposition<T> decompose(const AlgebraSpec<T>& spec);

template <class T>
ComplexStructure<T> standard_J(int n);

template <class T>
bool is_unimodular(const AlgebraSpec<T>& spec);

// ad_{e0} on g: L in the lower-right block, zero first row and column.
template <class T>
Mat<T> ad_e0(const Mat<T>& L);

template <class T>
Vec<T> bracket(const AlgebraSpec<T>& spec, const Vec<T>& x, const Vec<T>& y);

template <class T>
AlgebraSpec<T> convert_spec(const AlgebraSpec<Rational>& spec);

// J^2 + I and J^t J - I residuals; throws InvalidInput if either exceeds tol.
void check_compatible(const MatD& J, double tol);
void check_compatible(const MatQ& J, double tol);

// Re-express (L, J) in an orthonormal J-adapted basis with e0 ⟂ u and e1 = J e0, so the
// closed-form conditions apply to a non-standard J. P has the new basis as columns.
struct AdaptedFrame {
  AlgebraSpec<double> spec;
  MatD P;
};
AdaptedFrame adapt_basis(const AlgebraSpec<double>& spec, const MatD& J);

}  // namespace aah
