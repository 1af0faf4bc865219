#include <doctest.h>

#include "aah/energy_flow.hpp"
#include "aah/errors.hpp"
#include "constructions.hpp"
#include "oracles.hpp"

using namespace aah;
using oracle::mat;
using construct::kaehler_admitting;

namespace {

const MatD L0 = mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
const MatD L2 = mat({{0, 1, 0}, {0, 1, 0}, {0, 0, -1}});
const MatD KT = mat({{0, 0, 0}, {0, 0, 0}, {0, 1, 0}});

Decomposition<double> dec_of(int n, const MatD& L) { return decompose(AlgebraSpec<double>::from_matrix(n, L)); }

double compat(const MatD& J) {
  const int N = static_cast<int>(J.rows());
  return std::max((J * J + MatD::Identity(N, N)).norm(), (J.transpose() * J - MatD::Identity(N, N)).norm());
}

}  // namespace

TEST_CASE("energy values") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    MatD J = random_compatible_J(3, s);
    CHECK(dirichlet_energy(dec_of(3, MatD::Zero(5, 5)), J) == 0);
  }
  std::mt19937_64 rng(1);
  CHECK(dirichlet_energy(dec_of(3, kaehler_admitting(rng, 3)), oracle::std_J(3)) < 1e-28);
  // Kodaira-Thurston, standard J: regression constant, and the independent Koszul value
  const double kt = dirichlet_energy(dec_of(2, KT), oracle::std_J(2));
  CHECK(kt == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(kt == doctest::Approx(oracle::energy(KT, oracle::std_J(2))).epsilon(1e-14));
  // on this algebra E does not depend on J at all
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(dirichlet_energy(dec_of(2, KT), random_compatible_J(2, s)) == doctest::Approx(2.0).epsilon(1e-12));
  MatD bad = MatD::Identity(4, 4);
  CHECK_THROWS_AS(dirichlet_energy(dec_of(2, KT), bad), Error);
  // exact mode
  MatQ Lq = MatQ::Zero(3, 3);
  Lq(2, 1) = 1;
  CHECK(dirichlet_energy(decompose(AlgebraSpec<Rational>::from_matrix(2, Lq)), MatQ(standard_J<Rational>(2).J)) == Rational(2));
}

TEST_CASE("energy matches the independent Koszul value for random J") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + rep % 3;
    MatD L = oracle::random_L(rng, n);
    MatD J = random_compatible_J(n, rep);
    CHECK(compat(J) < 1e-12);
    CHECK(dirichlet_energy(dec_of(n, L), J) == doctest::Approx(oracle::energy(L, J)).epsilon(1e-11));
  }
}

TEST_CASE("gradient") {
  CHECK(energy_gradient(dec_of(2, L0), oracle::std_J(2)).norm() < 1e-14);
  CHECK(energy_gradient(dec_of(2, KT), oracle::std_J(2)).norm() < 1e-14);
  CHECK(energy_gradient(dec_of(3, MatD::Zero(5, 5)), random_compatible_J(3, 4)).norm() == 0);
  try {
    energy_gradient(dec_of(2, MatD::Identity(3, 3)), oracle::std_J(2));
    FAIL("expected precondition");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
  std::mt19937_64 rng(8);
  double worst = 0;
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + rep % 3;
    MatD L = oracle::make_unimodular(oracle::random_L(rng, n));
    MatD J = random_compatible_J(n, 100 + rep);
    MatD K = energy_gradient(dec_of(n, L), J);
    CHECK((K + K.transpose()).norm() < 1e-10);
    CHECK((K * J + J * K).norm() < 1e-10);
    for (int d = 0; d < 10; ++d) {
      MatD V = oracle::random_tangent(rng, J);
      const double h = 1e-5;
      double fd = (oracle::energy(L, oracle::along(J, V, h)) - oracle::energy(L, oracle::along(J, V, -h))) / (2 * h);
      double an = (K.array() * V.array()).sum();
      worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(fd)));
    }
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("stationarity: projection vanishes iff X commutes with J") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + rep % 3, N = 2 * n;
    MatD J = random_compatible_J(n, rep);
    MatD X(N, N);
    for (int i = 0; i < N; ++i) X.col(i) = oracle::random_vec(rng, N);
    X = X - X.transpose().eval();
    MatD C = 0.5 * (X - J * X * J);  // commutes with J
    CHECK((C * J - J * C).norm() < 1e-12);
    CHECK(tangent_projection(J, C).norm() < 1e-12);
    CHECK(tangent_projection(J, X).norm() > 1e-3);
  }
  // gradient zero iff harmonic, on random unimodular input
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + rep % 3;
    auto d = dec_of(n, oracle::make_unimodular(oracle::random_L(rng, n)));
    MatD J = random_compatible_J(n, 500 + rep);
    CHECK(energy_gradient(d, J).norm() == doctest::Approx(2 * is_harmonic_oracle(d, J).residual("H")).epsilon(1e-9));
  }
}

TEST_CASE("flow steps") {
  SUBCASE("fixed point") {
    auto d = dec_of(2, L0);
    FlowState s = make_state(d, oracle::std_J(2), 0.1);
    FlowState t = flow_step(d, s, 0.1);
    CHECK((t.J - s.J).norm() < 1e-14);
  }
  SUBCASE("strict decrease, compatibility, spectrum") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
      const int n = 2 + rep % 2;
      MatD L = rep == 0 ? L2 : oracle::make_unimodular(oracle::random_L(rng, n));
      const int nn = rep == 0 ? 2 : n;
      auto d = dec_of(nn, L);
      FlowState s = make_state(d, random_compatible_J(nn, rep), 1e-2);
      FlowState t = flow_step(d, s, 1e-2);
      CHECK(t.energy < s.energy);
      CHECK(compat(t.J) < 1e-12);
      Eigen::EigenSolver<MatD> es(t.J, false);
      for (int i = 0; i < 2 * nn; ++i) {
        CHECK(std::abs(es.eigenvalues()(i).real()) < 1e-10);
        CHECK(std::abs(std::abs(es.eigenvalues()(i).imag()) - 1) < 1e-10);
      }
    }
  }
  CHECK_THROWS_AS(flow_step(dec_of(2, L2), make_state(dec_of(2, L2), oracle::std_J(2), 0.1), 0.0), Error);
  SUBCASE("stagnation carries the last state") {
    auto d = dec_of(2, L2);
    FlowState s = make_state(d, random_compatible_J(2, 1), 1e-15);
    try {
      flow_step(d, s, 1e-15);
      FAIL("expected stagnation");
    } catch (const StagnationError& e) {
      CHECK(e.kind() == ErrorKind::NonConvergence);
      CHECK((e.state.J - s.J).norm() == 0);
    }
  }
}

TEST_CASE("flow runs") {
  SUBCASE("harmonic start converges in zero steps") {
    auto r = run_flow(dec_of(2, L0), oracle::std_J(2));
    CHECK(r.converged);
    CHECK(r.final.step == 0);
    CHECK(r.oracle.harmonic);
  }
  SUBCASE("monotone energy along a random unimodular run") {
    std::mt19937_64 rng(12);
    auto d = dec_of(3, oracle::make_unimodular(oracle::random_L(rng, 3)));
    double last = 1e300, worst_compat = 0;
    FlowOptions o;
    o.max_steps = 300;
    o.on_step = [&](const FlowState& s) {
      CHECK(s.energy <= last);
      last = s.energy;
      worst_compat = std::max(worst_compat, compat(s.J));
    };
    FlowResult r;
    try {
      r = run_flow(d, random_compatible_J(3, 9), o);
    } catch (const Error& e) {
      FAIL(e.what());
    }
    CHECK(r.final.energy <= r.initial_energy);
    CHECK(worst_compat < 1e-12);
  }
  SUBCASE("Kodaira-Thurston limits are harmonic") {
    for (std::uint64_t s = 0; s < 4; ++s) {
      auto r = run_flow(dec_of(2, KT), random_compatible_J(2, s));
      CHECK(r.converged);
      CHECK(r.oracle.residual("H") <= 1e-6);
    }
  }
  SUBCASE("Kaehler-admitting algebra reaches energy zero") {
    std::mt19937_64 rng(6);
    auto d = dec_of(3, kaehler_admitting(rng, 3));
    for (std::uint64_t s = 0; s < 3; ++s) {
      auto r = run_flow(d, random_compatible_J(3, 40 + s));
      CHECK(r.converged);
      CHECK(r.final.energy <= 1e-10);
      CHECK(r.closed_form.harmonic);
    }
  }
  SUBCASE("budget exhausted") {
    std::mt19937_64 rng(13);
    auto d = dec_of(3, oracle::make_unimodular(oracle::random_L(rng, 3)));
    FlowOptions o;
    o.max_steps = 2;
    o.tol_grad = 1e-14;
    auto r = run_flow(d, random_compatible_J(3, 2), o);
    CHECK_FALSE(r.converged);
    CHECK(r.report.find("not converged") == 0);
  }
}

TEST_CASE("random compatible J is deterministic per seed") {
  CHECK((random_compatible_J(3, 42) - random_compatible_J(3, 42)).norm() == 0);
  CHECK((random_compatible_J(3, 42) - random_compatible_J(3, 43)).norm() > 0.1);
}
