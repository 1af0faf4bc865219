#include "aah/connection.hpp"
#include "aah/errors.hpp"

namespace aah {

template <class T>
Mat<T> ConnectionTable<T>::along(const Vec<T>& x) const {
  const int N = dim();
  Mat<T> M = Mat<T>::Zero(N, N);
  for (int i = 0; i < N; ++i)
    if (x(i) != 0) M += nabla[i] * x(i);
  return M;
}

template <class T>
ConnectionTable<T> levi_civita(const Decomposition<T>& dec) {
  const int N = 2 * dec.n;
  ConnectionTable<T> c;
  c.nabla.assign(N, Mat<T>::Zero(N, N));
  c.nabla[0].block(1, 1, N - 1, N - 1) = dec.A;
  for (int i = 1; i < N; ++i) {
    // ∇_u e0 = -S u, ∇_u v = <Su, v> e0
    Vec<T> Su = dec.S.col(i - 1);
    c.nabla[i].block(1, 0, N - 1, 1) = -Su;
    c.nabla[i].block(0, 1, 1, N - 1) = Su.transpose();
  }
  return c;
}

template <class T>
Vec<T> koszul_oracle(const AlgebraSpec<T>& spec, const Vec<T>& x, const Vec<T>& y) {
  const int N = spec.dim();
  Vec<T> r(N);
  Vec<T> xy = bracket(spec, x, y);
  for (int k = 0; k < N; ++k) {
    Vec<T> ek = Vec<T>::Unit(N, k);
    T v = xy(k) - bracket(spec, y, ek).dot(x) + bracket(spec, ek, x).dot(y);
    r(k) = v * ratio<T>(1, 2);
  }
  return r;
}

template <class T>
ConnectionTable<T> koszul_table(const AlgebraSpec<T>& spec) {
  const int N = spec.dim();
  ConnectionTable<T> c;
  c.nabla.assign(N, Mat<T>::Zero(N, N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      c.nabla[i].col(j) = koszul_oracle(spec, Vec<T>(Vec<T>::Unit(N, i)), Vec<T>(Vec<T>::Unit(N, j)));
  return c;
}

template <class T>
Mat<T> rough_laplacian(const ConnectionTable<T>& conn, const Mat<T>& J) {
  const int N = conn.dim();
  Mat<T> R = Mat<T>::Zero(N, N);
  Vec<T> v = Vec<T>::Zero(N);
  for (int i = 0; i < N; ++i) {
    const Mat<T>& Ni = conn.nabla[i];
    Mat<T> DJ = Ni * J - J * Ni;
    R += Ni * DJ - DJ * Ni;
    v += Ni.col(i);
  }
  Mat<T> Nv = conn.along(v);
  R -= Nv * J - J * Nv;
  return R;
}

template <class T>
Mat<T> harmonic_commutator(const ConnectionTable<T>& conn, const Mat<T>& J) {
  Mat<T> R = rough_laplacian(conn, J);
  return (J * R - R * J) * ratio<T>(1, 2);
}

template <class T>
Mat<T> harmonic_commutator_explicit(const ConnectionTable<T>& conn, const Mat<T>& J) {
  const int N = conn.dim();
  Mat<T> H = Mat<T>::Zero(N, N);
  Vec<T> v = Vec<T>::Zero(N);
  for (int i = 0; i < N; ++i) {
    const Mat<T>& Ni = conn.nabla[i];
    Mat<T> NJ = Ni * J;
    H += NJ * NJ - J * NJ * Ni;
    v += Ni.col(i);
  }
  Mat<T> Nv = conn.along(v);
  H -= J * (Nv * J - J * Nv);
  return H;
}

template <class T>
Vec<T> nijenhuis(const AlgebraSpec<T>& spec, const Mat<T>& J, const Vec<T>& x, const Vec<T>& y) {
  Vec<T> Jx = J * x, Jy = J * y;
  Vec<T> inner = bracket(spec, Jx, y) + bracket(spec, x, Jy);
  return bracket(spec, x, y) + J * inner - bracket(spec, Jx, Jy);
}

template <class T>
T GenericTensors<T>::T_pm(int sign, int i, int j, int k) const {
  T acc = nabla_omega[idx(i, j, k)];
  T other = 0;
  for (int a = 0; a < N; ++a) {
    if (J(a, i) == 0) continue;
    for (int b = 0; b < N; ++b) {
      if (J(b, j) == 0) continue;
      other += J(a, i) * J(b, j) * nabla_omega[idx(a, b, k)];
    }
  }
  return sign > 0 ? T(acc + other) : T(acc - other);
}

template <class T>
T GenericTensors<T>::U(int i, int j, int k) const {
  Vec<T> dwJ = J.transpose() * delta_omega;  // δω(J e_k)
  T r = 0;
  if (i == j) r += delta_omega(k);
  if (i == k) r -= delta_omega(j);
  r -= J(i, j) * dwJ(k);
  r += J(i, k) * dwJ(j);
  return r;
}

template <class T>
GenericTensors<T> generic_tensors(const AlgebraSpec<T>& spec, const Mat<T>& J) {
  GenericTensors<T> g;
  const int N = spec.dim();
  g.N = N;
  g.J = J;
  g.conn = koszul_table(spec);
  const size_t N3 = static_cast<size_t>(N) * N * N;
  g.nabla_omega.assign(N3, T(0));
  g.d_omega.assign(N3, T(0));
  g.nijenhuis.assign(N3, T(0));
  for (int i = 0; i < N; ++i) {
    Mat<T> DJ = g.conn.nabla[i] * J - J * g.conn.nabla[i];
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) g.nabla_omega[g.idx(i, j, k)] = DJ(k, j);
  }
  auto omega = [&](const Vec<T>& a, const Vec<T>& b) -> T { return (J * a).dot(b); };
  std::vector<Vec<T>> e(N);
  for (int i = 0; i < N; ++i) e[i] = Vec<T>::Unit(N, i);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Vec<T> nij = nijenhuis(spec, J, e[i], e[j]);
      for (int k = 0; k < N; ++k) {
        g.nijenhuis[g.idx(i, j, k)] = nij(k);
        T v = -omega(bracket(spec, e[i], e[j]), e[k]) - omega(bracket(spec, e[j], e[k]), e[i]) -
              omega(bracket(spec, e[k], e[i]), e[j]);
        g.d_omega[g.idx(i, j, k)] = v;
      }
    }
  g.delta_omega = Vec<T>::Zero(N);
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i) g.delta_omega(k) -= g.nabla_omega[g.idx(i, i, k)];
  Vec<T> dwJ = J.transpose() * g.delta_omega;
  g.lee_form = dwJ * ratio<T>(-1, spec.n - 1);
  return g;
}

#define AAH_INSTANTIATE(T)                                                                     \
  template struct ConnectionTable<T>;                                                          \
  template struct GenericTensors<T>;                                                           \
  template ConnectionTable<T> levi_civita<T>(const Decomposition<T>&);                         \
  template Vec<T> koszul_oracle<T>(const AlgebraSpec<T>&, const Vec<T>&, const Vec<T>&);       \
  template ConnectionTable<T> koszul_table<T>(const AlgebraSpec<T>&);                          \
  template Mat<T> rough_laplacian<T>(const ConnectionTable<T>&, const Mat<T>&);                \
  template Mat<T> harmonic_commutator<T>(const ConnectionTable<T>&, const Mat<T>&);            \
  template Mat<T> harmonic_commutator_explicit<T>(const ConnectionTable<T>&, const Mat<T>&);   \
  template Vec<T> nijenhuis<T>(const AlgebraSpec<T>&, const Mat<T>&, const Vec<T>&, const Vec<T>&); \
  template GenericTensors<T> generic_tensors<T>(const AlgebraSpec<T>&, const Mat<T>&);

AAH_INSTANTIATE(double)
AAH_INSTANTIATE(Rational)

}  // namespace aah
