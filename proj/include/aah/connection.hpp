#pragma once

#include "aah/algebra.hpp"

#include <vector>

namespace aah {

// nabla[i] is the matrix of ∇_{e_i} on g; column j holds ∇_{e_i} e_j.
template <class T>
struct ConnectionTable {
  std::vector<Mat<T>> nabla;

  int dim() const { return static_cast<int>(nabla.size()); }
  Mat<T> along(const Vec<T>& x) const;
};

template <class T>
ConnectionTable<T> levi_civita(const Decomposition<T>& dec);

// ∇_x y from 2<∇_x y, z> = <[x,y],z> - <[y,z],x> + <[z,x],y>.
template <class T>
Vec<T> koszul_oracle(const AlgebraSpec<T>& spec, const Vec<T>& x, const Vec<T>& y);

template <class T>
ConnectionTable<T> koszul_table(const AlgebraSpec<T>& spec);

// ∇*∇J = Σ_i [∇_i,[∇_i,J]] - [∇_v, J] with v = Σ_i ∇_{e_i} e_i.
template <class T>
Mat<T> rough_laplacian(const ConnectionTable<T>& conn, const Mat<T>& J);

// H = ½[J, ∇*∇J].
template <class T>
Mat<T> harmonic_commutator(const ConnectionTable<T>& conn, const Mat<T>& J);

// Right side of the frame identity for [J,∇*∇J], halved:
// Σ_i (∇_i J ∇_i J - J ∇_i J ∇_i) - J [∇_v, J], with ∇_i the operator ∇_{e_i}.
template <class T>
Mat<T> harmonic_commutator_explicit(const ConnectionTable<T>& conn, const Mat<T>& J);

// ---- closed forms in the standard J-adapted basis -------------------------------------

template <class T>
struct NijenhuisClosed {
  Vec<T> w0;  // N(e0,x) = <w0,x> e1 + op x, x in a
  Mat<T> op;  // D + J'DJ'
};

template <class T>
NijenhuisClosed<T> nijenhuis_closed(const Decomposition<T>& dec);

template <class T>
Vec<T> nijenhuis_closed_eval(const Decomposition<T>& dec, const Vec<T>& x, const Vec<T>& y);

template <class T>
T d_omega(const Decomposition<T>& dec, const Vec<T>& x, const Vec<T>& y, const Vec<T>& z);

template <class T>
Vec<T> delta_omega(const Decomposition<T>& dec);

template <class T>
Vec<T> lee_form(const Decomposition<T>& dec);

// (∇_x ω)(y, z)
template <class T>
T nabla_omega(const Decomposition<T>& dec, const Vec<T>& x, const Vec<T>& y, const Vec<T>& z);

// T^±(x,y,z); sign = +1 or -1.
template <class T>
T tensor_T(int sign, const Decomposition<T>& dec, const Vec<T>& x, const Vec<T>& y, const Vec<T>& z);

template <class T>
T tensor_U(const Decomposition<T>& dec, const Vec<T>& x, const Vec<T>& y, const Vec<T>& z);

// ---- generic definitions, valid for any compatible J -------------------------------------

// N(X,Y) = [X,Y] + J([JX,Y] + [X,JY]) - [JX,JY]
template <class T>
Vec<T> nijenhuis(const AlgebraSpec<T>& spec, const Mat<T>& J, const Vec<T>& x, const Vec<T>& y);

// Dense basis tensors built from brackets and the Koszul table only.
template <class T>
struct GenericTensors {
  int N = 0;
  Mat<T> J;
  ConnectionTable<T> conn;
  std::vector<T> nabla_omega;  // [i][j][k] = (∇_{e_i}ω)(e_j,e_k)
  std::vector<T> d_omega;      // [i][j][k]
  std::vector<T> nijenhuis;    // [i][j][k] = <N(e_i,e_j), e_k>
  Vec<T> delta_omega;          // -Σ_i (∇_{e_i}ω)(e_i,·)
  Vec<T> lee_form;

  size_t idx(int i, int j, int k) const { return (static_cast<size_t>(i) * N + j) * N + k; }
  T T_pm(int sign, int i, int j, int k) const;
  T U(int i, int j, int k) const;
};

template <class T>
GenericTensors<T> generic_tensors(const AlgebraSpec<T>& spec, const Mat<T>& J);

struct TensorReport {
  double nijenhuis_norm = 0;
  double d_omega_norm = 0;
  VecD delta_omega;
  VecD lee_form;
  double nabla_omega_norm = 0;
  MatD H;
  double H_norm = 0;
  bool metric_flat_hint = false;
};

// Closed-form norms over all basis triples, H from the ConnectionTable.
template <class T>
TensorReport tensor_report(const Decomposition<T>& dec);

struct DenseTensors {
  int N = 0;
  std::vector<double> nijenhuis, d_omega, nabla_omega;
};

template <class T>
DenseTensors dense_tensors(const Decomposition<T>& dec);

}  // namespace aah
