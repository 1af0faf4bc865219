#pragma once

#include "aah/errors.hpp"
#include "aah/harmonicity.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace aah {

struct FlowState {
  MatD J;
  double energy = 0;
  double grad_norm = 0;
  long step = 0;
  double h = 0;  // step size that the next step starts from
};

// E(J) = Σ_i ||∇_{e_i} J||^2 with ∇_{e_i}J = [∇_{e_i}, J].
template <class T>
T dirichlet_energy(const Decomposition<T>& dec, const Mat<T>& J);

// Riemannian gradient of E on {J : J^2 = -I, J^t = -J}; requires Tr L = 0.
// With R = ∇*∇J it equals -(R + JRJ); it vanishes iff [J, R] = 0.
MatD energy_gradient(const Decomposition<double>& dec, const MatD& J);

// Projection onto the tangent space at J: ½(X + JXJ).
MatD tangent_projection(const MatD& J, const MatD& X);

// Thrown by flow_step when backtracking drives h below 1e-14.
class StagnationError : public Error {
 public:
  StagnationError(const std::string& what, FlowState s) : Error(ErrorKind::NonConvergence, what), state(std::move(s)) {}
  FlowState state;
};

FlowState make_state(const Decomposition<double>& dec, const MatD& J, double h);

// One accepted step of J -> exp(-hΩ) J exp(hΩ), Ω = ½ J K, with h halved until the energy does not increase.
FlowState flow_step(const Decomposition<double>& dec, const FlowState& state, double h);

struct FlowOptions {
  double tol_grad = 1e-8;
  long max_steps = 100000;
  double h0 = 0.1;
  double h_max = 10.0;
  std::function<void(const FlowState&)> on_step;  // called after every accepted step
};

struct FlowResult {
  FlowState final;
  bool converged = false;
  double initial_energy = 0;
  long rejected = 0;           // halvings
  HarmonicVerdict oracle;      // on the terminal J
  HarmonicVerdict closed_form; // closed-form conditions in the J-adapted frame of the terminal J
  std::string report;
};

FlowResult run_flow(const Decomposition<double>& dec, const MatD& J0, const FlowOptions& opt = {});

// Q J_std Q^t with Q Haar-distributed in O(2n).
MatD random_compatible_J(int n, std::uint64_t seed);

}  // namespace aah
