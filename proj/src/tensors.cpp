#include "aah/connection.hpp"
#include "aah/errors.hpp"

namespace aah {

namespace {

// x = x0 e0 + x1 e1 + xa, xa in a
template <class T>
struct Split {
  T x0, x1;
  Vec<T> xa;
};

template <class T>
Split<T> split(const Vec<T>& x) {
  return {x(0), x(1), x.tail(x.size() - 2)};
}

template <class T>
Mat<T> jprime(int n) {
  return standard_J<T>(n).Jprime;
}

template <class T>
void check_len(const Decomposition<T>& dec, const Vec<T>& x) {
  if (x.size() != 2 * dec.n) fail(ErrorKind::InvalidInput, "tensor argument must have length 2n");
}

// Skew form f(Y,Z) = Y0<p,Za> - Z0<p,Ya> + Y1<q,Za> - Z1<q,Ya> + <M Ya, Za>.
template <class T>
T skew_form(const Split<T>& Y, const Split<T>& Z, const Vec<T>& p, const Vec<T>& q, const Mat<T>* M) {
  T r = Y.x0 * p.dot(Z.xa) - Z.x0 * p.dot(Y.xa) + Y.x1 * q.dot(Z.xa) - Z.x1 * q.dot(Y.xa);
  if (M) r += (*M * Y.xa).dot(Z.xa);
  return r;
}

template <class T>
Vec<T> applyJ(int n, const Vec<T>& x) {
  return standard_J<T>(n).J * x;
}

}  // namespace

template <class T>
NijenhuisClosed<T> nijenhuis_closed(const Decomposition<T>& dec) {
  Mat<T> Jp = jprime<T>(dec.n);
  return {dec.w0, dec.D + Jp * dec.D * Jp};
}

template <class T>
Vec<T> nijenhuis_closed_eval(const Decomposition<T>& dec, const Vec<T>& x, const Vec<T>& y) {
  check_len(dec, x);
  check_len(dec, y);
  const int N = 2 * dec.n;
  Mat<T> Jp = jprime<T>(dec.n);
  NijenhuisClosed<T> nc = nijenhuis_closed(dec);
  // N(e0,a) = (L + JLJ)a = -<w0,J'a> e0 + <w0,a> e1 + op a; the e0 term comes from J e1 = -e0.
  // N(e1,a) = -J N(e0,a); N vanishes on a x a.
  Vec<T> w0J = Jp * nc.w0;  // -<w0,J'a> = <J'w0, a>
  auto n0 = [&](const Vec<T>& a) {
    Vec<T> r = Vec<T>::Zero(N);
    r(0) = w0J.dot(a);
    r(1) = nc.w0.dot(a);
    r.tail(N - 2) = nc.op * a;
    return r;
  };
  auto n1 = [&](const Vec<T>& a) {
    Vec<T> r = Vec<T>::Zero(N);
    r(0) = nc.w0.dot(a);
    r(1) = -w0J.dot(a);
    r.tail(N - 2) = -(Jp * (nc.op * a));
    return r;
  };
  Split<T> X = split(x), Y = split(y);
  Vec<T> r = n0(Y.xa) * X.x0 - n0(X.xa) * Y.x0 + n1(Y.xa) * X.x1 - n1(X.xa) * Y.x1;
  return r;
}

template <class T>
T d_omega(const Decomposition<T>& dec, const Vec<T>& x, const Vec<T>& y, const Vec<T>& z) {
  check_len(dec, x);
  check_len(dec, y);
  check_len(dec, z);
  Mat<T> Jp = jprime<T>(dec.n);
  Mat<T> B = dec.D.transpose() * Jp + Jp * dec.D;
  Vec<T> zero = Vec<T>::Zero(dec.v0.size());
  Vec<T> v0J = -(Jp * dec.v0);  // <v0, J'w> = <-J' v0, w>
  // dω(e0,Y,Z) for Y,Z without e0-part: Y1<v0,J'Za> - Z1<v0,J'Ya> + <Ya,(D^tJ'+J'D)Za>
  auto b = [&](const Vec<T>& Y, const Vec<T>& Z) {
    Split<T> sy = split(Y), sz = split(Z);
    sy.x0 = 0;
    sz.x0 = 0;
    Mat<T> Bt = B.transpose();
    return skew_form(sy, sz, zero, v0J, &Bt);
  };
  return x(0) * b(y, z) - y(0) * b(x, z) + z(0) * b(x, y);
}

template <class T>
Vec<T> delta_omega(const Decomposition<T>& dec) {
  const int N = 2 * dec.n;
  Vec<T> r = Vec<T>::Zero(N);
  r(1) = dec.D.trace();
  r.tail(N - 2) = -dec.v0;
  return r;
}

template <class T>
Vec<T> lee_form(const Decomposition<T>& dec) {
  const int N = 2 * dec.n;
  Mat<T> Jp = jprime<T>(dec.n);
  T k = ratio<T>(1, dec.n - 1);
  Vec<T> r = Vec<T>::Zero(N);
  r(0) = -dec.D.trace() * k;
  r.tail(N - 2) = -(Jp * dec.v0) * k;  // <v0, J'x> = <-J'v0, x>
  return r;
}

template <class T>
T nabla_omega(const Decomposition<T>& dec, const Vec<T>& x, const Vec<T>& y, const Vec<T>& z) {
  check_len(dec, x);
  check_len(dec, y);
  check_len(dec, z);
  Mat<T> Jp = jprime<T>(dec.n);
  Split<T> X = split(x), Y = split(y), Z = split(z);
  Mat<T> AJ = dec.Da * Jp - Jp * dec.Da;
  // X = e0: (e0,a) -> <ρ,a>, (e1,a) -> <ρ,J'a>, (a,b) -> <[Da,J']a,b>
  T r0 = skew_form(Y, Z, dec.rho, Vec<T>(-(Jp * dec.rho)), &AJ);
  // X = e1: (e1,a) -> <γ,a>, (e0,a) -> -<γ,J'a>
  T r1 = skew_form(Y, Z, Vec<T>(Jp * dec.gamma), dec.gamma, static_cast<const Mat<T>*>(nullptr));
  // X = xa: (e1,a) -> <Ds xa, a>, (e0,a) -> -<Ds xa, J'a>
  Vec<T> s = dec.Ds * X.xa;
  T ra = skew_form(Y, Z, Vec<T>(Jp * s), s, static_cast<const Mat<T>*>(nullptr));
  return X.x0 * r0 + X.x1 * r1 + ra;
}

template <class T>
T tensor_T(int sign, const Decomposition<T>& dec, const Vec<T>& x, const Vec<T>& y, const Vec<T>& z) {
  check_len(dec, x);
  check_len(dec, y);
  check_len(dec, z);
  if (sign != 1 && sign != -1) fail(ErrorKind::InvalidInput, "tensor_T sign must be +1 or -1");
  const int n = dec.n;
  Mat<T> Jp = jprime<T>(n);
  Vec<T> tau = sign > 0 ? Vec<T>(dec.rho + dec.gamma) : Vec<T>(dec.rho - dec.gamma);
  Mat<T> AJ = dec.Da * Jp - Jp * dec.Da;
  Mat<T> M = sign > 0 ? Mat<T>(dec.Ds - Jp * dec.Ds * Jp) : Mat<T>(dec.Ds + Jp * dec.Ds * Jp);
  // T(e0,Y,Z): (e0,a) -> <τ,a>, (e1,a) -> <τ,J'a>, (a,b) -> <[Da,J']a,b>
  auto t0 = [&](const Vec<T>& Yv, const Vec<T>& Zv) {
    return skew_form(split(Yv), split(Zv), tau, Vec<T>(-(Jp * tau)), &AJ);
  };
  Split<T> X = split(x);
  T r = X.x0 * t0(y, z);
  // T(e1,Y,Z) = T(J e0, Y, Z) = ∓ T(e0, JY, Z)
  T t1 = t0(applyJ(n, y), z);
  if (sign > 0)
    r -= X.x1 * t1;
  else
    r += X.x1 * t1;
  // T(xa,Y,Z): (e1,a) -> <M xa, a>, (e0,a) -> -<M xa, J'a>
  Vec<T> mx = M * X.xa;
  r += skew_form(split(y), split(z), Vec<T>(Jp * mx), mx, static_cast<const Mat<T>*>(nullptr));
  return r;
}

template <class T>
T tensor_U(const Decomposition<T>& dec, const Vec<T>& x, const Vec<T>& y, const Vec<T>& z) {
  check_len(dec, x);
  check_len(dec, y);
  check_len(dec, z);
  const int n = dec.n;
  Mat<T> Jp = jprime<T>(n);
  T trD = dec.D.trace();
  Vec<T> v0 = dec.v0;
  Vec<T> mv0 = -v0;
  // U(e0,Y,Z): (e0,a) -> -<v0,a>, (e1,a) -> -<v0,J'a>, (a,b) -> 0
  auto u0 = [&](const Vec<T>& Yv, const Vec<T>& Zv) {
    return skew_form(split(Yv), split(Zv), mv0, Vec<T>(Jp * v0), static_cast<const Mat<T>*>(nullptr));
  };
  Split<T> X = split(x), Y = split(y), Z = split(z);
  T r = X.x0 * u0(y, z);
  r -= X.x1 * u0(applyJ(n, y), z);  // U(J e0, Y, Z) = -U(e0, JY, Z)
  // U(xa,Y,Z): (e1,a) -> -<xa,a> TrD, (e0,a) -> <xa,J'a> TrD, (a,b) from δω
  Vec<T> p = -(Jp * X.xa) * trD;
  Vec<T> q = X.xa * T(-trD);
  r += skew_form(Y, Z, p, q, static_cast<const Mat<T>*>(nullptr));
  Vec<T> Jy = Jp * Y.xa, Jz = Jp * Z.xa;
  r += -X.xa.dot(Y.xa) * v0.dot(Z.xa) + X.xa.dot(Z.xa) * v0.dot(Y.xa) + X.xa.dot(Jy) * v0.dot(Jz) -
       X.xa.dot(Jz) * v0.dot(Jy);
  return r;
}

template <class T>
TensorReport tensor_report(const Decomposition<T>& dec) {
  const int N = 2 * dec.n;
  TensorReport rep;
  std::vector<Vec<T>> e(N);
  for (int i = 0; i < N; ++i) e[i] = Vec<T>::Unit(N, i);
  T nsq = 0, dsq = 0, wsq = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Vec<T> nij = nijenhuis_closed_eval(dec, e[i], e[j]);
      nsq += nij.squaredNorm();
      for (int k = 0; k < N; ++k) {
        T dv = d_omega(dec, e[i], e[j], e[k]);
        T wv = nabla_omega(dec, e[i], e[j], e[k]);
        dsq += dv * dv;
        wsq += wv * wv;
      }
    }
  rep.nijenhuis_norm = std::sqrt(to_double(nsq));
  rep.d_omega_norm = std::sqrt(to_double(dsq));
  rep.nabla_omega_norm = std::sqrt(to_double(wsq));
  rep.delta_omega = to_double(delta_omega(dec));
  rep.lee_form = to_double(lee_form(dec));
  Mat<T> H = harmonic_commutator(levi_civita(dec), standard_J<T>(dec.n).J);
  rep.H = to_double(H);
  rep.H_norm = frob(H);
  rep.metric_flat_hint = vanishes(Mat<T>(dec.L + dec.L.transpose()), dec.tol(1));
  return rep;
}

template <class T>
DenseTensors dense_tensors(const Decomposition<T>& dec) {
  const int N = 2 * dec.n;
  DenseTensors d;
  d.N = N;
  const size_t N3 = static_cast<size_t>(N) * N * N;
  d.nijenhuis.resize(N3);
  d.d_omega.resize(N3);
  d.nabla_omega.resize(N3);
  std::vector<Vec<T>> e(N);
  for (int i = 0; i < N; ++i) e[i] = Vec<T>::Unit(N, i);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Vec<T> nij = nijenhuis_closed_eval(dec, e[i], e[j]);
      for (int k = 0; k < N; ++k) {
        size_t id = (static_cast<size_t>(i) * N + j) * N + k;
        d.nijenhuis[id] = to_double(nij(k));
        d.d_omega[id] = to_double(d_omega(dec, e[i], e[j], e[k]));
        d.nabla_omega[id] = to_double(nabla_omega(dec, e[i], e[j], e[k]));
      }
    }
  return d;
}

#define AAH_INSTANTIATE(T)                                                                            \
  template NijenhuisClosed<T> nijenhuis_closed<T>(const Decomposition<T>&);                           \
  template Vec<T> nijenhuis_closed_eval<T>(const Decomposition<T>&, const Vec<T>&, const Vec<T>&);    \
  template T d_omega<T>(const Decomposition<T>&, const Vec<T>&, const Vec<T>&, const Vec<T>&);        \
  template Vec<T> delta_omega<T>(const Decomposition<T>&);                                            \
  template Vec<T> lee_form<T>(const Decomposition<T>&);                                               \
  template T nabla_omega<T>(const Decomposition<T>&, const Vec<T>&, const Vec<T>&, const Vec<T>&);    \
  template T tensor_T<T>(int, const Decomposition<T>&, const Vec<T>&, const Vec<T>&, const Vec<T>&);  \
  template T tensor_U<T>(const Decomposition<T>&, const Vec<T>&, const Vec<T>&, const Vec<T>&);       \
  template TensorReport tensor_report<T>(const Decomposition<T>&);                                    \
  template DenseTensors dense_tensors<T>(const Decomposition<T>&);

AAH_INSTANTIATE(double)
AAH_INSTANTIATE(Rational)

}  // namespace aah
