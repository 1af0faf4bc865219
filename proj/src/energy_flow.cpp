#include "aah/energy_flow.hpp"
#include "aah/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace aah {

template <class T>
T dirichlet_energy(const Decomposition<T>& dec, const Mat<T>& J) {
  check_compatible(J, 1e-9);
  ConnectionTable<T> conn = levi_civita(dec);
  T e = 0;
  for (const Mat<T>& Ni : conn.nabla) {
    Mat<T> C = Ni * J - J * Ni;
    e += C.cwiseProduct(C).sum();
  }
  return e;
}

MatD tangent_projection(const MatD& J, const MatD& X) { return (X + J * X * J) / 2; }

MatD energy_gradient(const Decomposition<double>& dec, const MatD& J) {
  if (std::abs(dec.L.trace()) > dec.tol(1)) {
    std::ostringstream os;
    os << "energy_gradient requires a unimodular algebra: Tr L = " << dec.L.trace();
    fail(ErrorKind::Precondition, os.str());
  }
  check_compatible(J, 1e-9);
  // dE[V] = -2<R, V>; the tangent projection of -2R is -(R + JRJ)
  MatD R = rough_laplacian(levi_civita(dec), J);
  return -tangent_projection(J, 2 * R);
}

namespace {

// J <- ½(J - J^{-1}) after skew-symmetrizing; fixes drift in J^2 = -I and orthogonality.
MatD polish(const MatD& J) {
  MatD S = (J - J.transpose()) / 2;
  return (S - S.inverse()) / 2;
}

}  // namespace

FlowState make_state(const Decomposition<double>& dec, const MatD& J, double h) {
  FlowState s;
  s.J = J;
  s.energy = dirichlet_energy(dec, J);
  s.grad_norm = energy_gradient(dec, J).norm();
  s.h = h;
  return s;
}

FlowState flow_step(const Decomposition<double>& dec, const FlowState& state, double h) {
  if (!(h > 0)) fail(ErrorKind::InvalidInput, "flow_step needs h > 0");
  MatD K = energy_gradient(dec, state.J);
  if (K.norm() == 0) {
    FlowState s = state;
    s.step += 1;
    return s;
  }
  const MatD Omega = state.J * K / 2;
  const double eps = std::numeric_limits<double>::epsilon();
  for (; h >= 1e-14; h /= 2) {
    MatD Jn = polish((-h * Omega).exp() * state.J * (h * Omega).exp());
    double En = dirichlet_energy(dec, Jn);
    // a change at rounding level counts as no increase once the gradient has shrunk
    bool ok = En <= state.energy;
    MatD Kn;
    if (!ok && En - state.energy <= 8 * eps * std::max(1.0, state.energy)) {
      Kn = energy_gradient(dec, Jn);
      ok = Kn.norm() < state.grad_norm;
    }
    if (ok) {
      FlowState s;
      s.J = Jn;
      s.energy = std::min(En, state.energy);
      s.grad_norm = (Kn.size() ? Kn : energy_gradient(dec, Jn)).norm();
      s.step = state.step + 1;
      s.h = h;
      return s;
    }
  }
  std::ostringstream os;
  os << "step size underflow at step " << state.step << ": energy " << state.energy << ", gradient norm "
     << state.grad_norm;
  throw StagnationError(os.str(), state);
}

FlowResult run_flow(const Decomposition<double>& dec, const MatD& J0, const FlowOptions& opt) {
  FlowResult r;
  FlowState s = make_state(dec, J0, opt.h0);
  r.initial_energy = s.energy;
  std::string stop;
  while (s.grad_norm > opt.tol_grad) {
    if (s.step >= opt.max_steps) {
      stop = "step budget exhausted";
      break;
    }
    try {
      const double tried = s.h;
      FlowState next = flow_step(dec, s, tried);
      if (next.h < tried) r.rejected += static_cast<long>(std::lround(std::log2(tried / next.h)));
      next.h = std::min(2 * next.h, opt.h_max);
      s = std::move(next);
    } catch (const StagnationError& e) {
      s = e.state;
      stop = e.what();
      break;
    }
    if (opt.on_step) opt.on_step(s);
  }
  r.final = s;
  r.converged = s.grad_norm <= opt.tol_grad;
  std::ostringstream os;
  os << "steps " << s.step << ", halvings " << r.rejected << ", energy " << r.initial_energy << " -> " << s.energy
     << ", gradient norm " << s.grad_norm;
  if (!r.converged) {
    r.report = "not converged (" + stop + "): " + os.str();
    return r;
  }
  r.report = "converged: " + os.str();

  // ||K|| = 2||H||, so the oracle threshold follows the gradient tolerance
  r.oracle = is_harmonic_oracle(dec, s.J);
  r.oracle.threshold = std::max(r.oracle.threshold, opt.tol_grad);
  r.oracle.harmonic = r.oracle.residual("H") <= r.oracle.threshold;
  AlgebraSpec<double> spec = AlgebraSpec<double>::from_matrix(dec.n, dec.L, dec.tolerance);
  AdaptedFrame fr = adapt_basis(spec, s.J);
  Decomposition<double> ad = decompose(fr.spec);
  r.closed_form = is_harmonic_general(ad);
  const double ci = r.closed_form.residual("condition_i"), cii = r.closed_form.residual("condition_ii");
  r.closed_form.threshold = r.oracle.threshold;
  r.closed_form.harmonic = std::sqrt(4 * ci * ci + cii * cii) <= r.oracle.threshold * (1 + 1e-6);
  if (!r.oracle.harmonic || !r.closed_form.harmonic) {
    std::ostringstream e;
    e << "flow limit not certified: oracle ||H|| = " << r.oracle.residual("H") << ", closed-form |(i)| = " << ci
      << ", |(ii)| = " << cii << " (threshold " << r.oracle.threshold << ")";
    fail(ErrorKind::Consistency, e.str());
  }
  return r;
}

MatD random_compatible_J(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const int N = 2 * n;
  MatD G(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) G(i, j) = g(rng);
  Eigen::HouseholderQR<MatD> qr(G);
  MatD Q = qr.householderQ();
  // sign fix on R's diagonal makes Q Haar-distributed
  MatD Rm = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < N; ++i)
    if (Rm(i, i) < 0) Q.col(i) *= -1;
  MatD J = Q * standard_J<double>(n).J * Q.transpose();
  return polish(J);
}

template double dirichlet_energy<double>(const Decomposition<double>&, const MatD&);
template Rational dirichlet_energy<Rational>(const Decomposition<Rational>&, const MatQ&);

}  // namespace aah
