#include <doctest.h>

#include "aah/connection.hpp"
#include "oracles.hpp"

using namespace aah;
using oracle::mat;

namespace {

const MatD L0 = mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
const MatD L2 = mat({{0, 1, 0}, {0, 1, 0}, {0, 0, -1}});

Decomposition<double> dec_of(int n, const MatD& L) { return decompose(AlgebraSpec<double>::from_matrix(n, L)); }

VecD ev(int N, int i) { return VecD::Unit(N, i); }

}  // namespace

TEST_CASE("flat abelian connection") {
  auto c = levi_civita(dec_of(3, MatD::Zero(5, 5)));
  for (const auto& m : c.nabla) CHECK(m.norm() == 0);
  auto s = AlgebraSpec<double>::from_matrix(3, MatD::Zero(5, 5));
  CHECK(koszul_oracle(s, ev(6, 1), ev(6, 3)).norm() == 0);
  auto J = standard_J<double>(3).J;
  CHECK(rough_laplacian(c, J).norm() == 0);
  CHECK(harmonic_commutator(c, J).norm() == 0);
}

TEST_CASE("nabla_{e1} e0 = -S e1 for L0") {
  auto c = levi_civita(dec_of(2, L0));
  VecD r = c.nabla[1].col(0);
  CHECK((r + ev(4, 2)).norm() < 1e-15);
  auto s = AlgebraSpec<double>::from_matrix(2, L0);
  CHECK(koszul_oracle(s, ev(4, 0), ev(4, 0)).norm() == 0);
}

TEST_CASE("Levi-Civita table against independent Koszul, metric and torsion") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + rep % 3, N = 2 * n;
    MatD L = oracle::random_L(rng, n);
    auto spec = AlgebraSpec<double>::from_matrix(n, L);
    auto c = levi_civita(decompose(spec));
    auto ref = oracle::koszul(L);
    for (int i = 0; i < N; ++i) {
      CHECK((c.nabla[i] - ref[i]).norm() < 1e-12);
      CHECK((c.nabla[i] + c.nabla[i].transpose()).norm() < 1e-13);
      for (int j = 0; j < N; ++j) {
        VecD tors = c.nabla[i].col(j) - c.nabla[j].col(i) - oracle::bracket(L, ev(N, i), ev(N, j));
        CHECK(tors.norm() < 1e-13);
      }
    }
    VecD x = oracle::random_vec(rng, N), y = oracle::random_vec(rng, N);
    CHECK((koszul_oracle(spec, x, y) - c.along(x) * y).norm() < 1e-11);
  }
}

TEST_CASE("Nijenhuis closed form") {
  auto d = dec_of(2, L2);
  auto nc = nijenhuis_closed(d);
  CHECK((nc.op - 2 * d.D).norm() < 1e-15);
  auto s = AlgebraSpec<double>::from_matrix(2, L2);
  auto J = standard_J<double>(2).J;
  VecD expect = ev(4, 1) + 2 * ev(4, 2);
  CHECK((nijenhuis(s, J, ev(4, 0), ev(4, 2)) - expect).norm() < 1e-14);
  CHECK((nijenhuis_closed_eval(d, ev(4, 0), ev(4, 2)) - expect).norm() < 1e-14);

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + rep % 3, N = 2 * n;
    MatD L = oracle::random_L(rng, n);
    auto sp = AlgebraSpec<double>::from_matrix(n, L);
    auto dd = decompose(sp);
    MatD Jn = standard_J<double>(n).J;
    VecD x = oracle::random_vec(rng, N), y = oracle::random_vec(rng, N);
    VecD Nxy = nijenhuis(sp, Jn, x, y);
    CHECK((Nxy - oracle::nijenhuis(L, Jn, x, y)).norm() < 1e-11);
    CHECK((nijenhuis_closed_eval(dd, x, y) - Nxy).norm() < 1e-10);
    CHECK(nijenhuis(sp, Jn, x, VecD(Jn * x)).norm() < 1e-11);
    CHECK(nijenhuis(sp, Jn, x, x).norm() == 0);
    CHECK((nijenhuis(sp, Jn, VecD(Jn * x), y) + Jn * Nxy).norm() < 1e-10);
  }
}

TEST_CASE("integrable structures have N = 0") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 3;
    MatD Jp = standard_J<double>(n).Jprime;
    // D commuting with J': complex-linear matrix a + J'b
    MatD A = oracle::random_L(rng, n).bottomRightCorner(4, 4), B = oracle::random_L(rng, n).bottomRightCorner(4, 4);
    MatD D = 0.5 * (A - Jp * A * Jp) + 0.5 * (B - Jp * B * Jp) * Jp;
    MatD L = MatD::Zero(5, 5);
    L(0, 0) = 0.4;
    L.block(1, 0, 4, 1) = oracle::random_vec(rng, 4);
    L.bottomRightCorner(4, 4) = D;
    auto sp = AlgebraSpec<double>::from_matrix(n, L);
    MatD J = standard_J<double>(n).J;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) CHECK(nijenhuis(sp, J, ev(6, i), ev(6, j)).norm() < 1e-12);
  }
}

TEST_CASE("d omega, delta omega, Lee form, nabla omega against definitions") {
  SUBCASE("almost Kaehler L2 has d omega = 0") {
    auto d = dec_of(2, L2);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) CHECK(std::abs(d_omega(d, ev(4, i), ev(4, j), ev(4, k))) < 1e-15);
  }
  SUBCASE("L1 has delta omega = 0") {
    auto d = dec_of(2, mat({{0, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
    CHECK(delta_omega(d).norm() == 0);
  }
  SUBCASE("zero algebra") {
    auto d = dec_of(2, MatD::Zero(3, 3));
    CHECK(delta_omega(d).norm() == 0);
    CHECK(lee_form(d).norm() == 0);
  }
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 2 + rep % 3, N = 2 * n;
    MatD L = oracle::random_L(rng, n);
    auto d = dec_of(n, L);
    MatD J = standard_J<double>(n).J;
    auto nab = oracle::koszul(L);
    VecD x = oracle::random_vec(rng, N), y = oracle::random_vec(rng, N), z = oracle::random_vec(rng, N);
    CHECK(d_omega(d, x, y, z) == doctest::Approx(oracle::d_omega(L, J, x, y, z)).epsilon(1e-9).scale(1));
    // dω(e0,e1,x) = <v0,Jx>
    VecD xa = VecD::Zero(N);
    xa.tail(N - 2) = x.tail(N - 2);
    CHECK(d_omega(d, ev(N, 0), ev(N, 1), xa) == doctest::Approx(d.v0.dot((J * xa).tail(N - 2))));
    // δω = -Σ_i (∇_{e_i}ω)(e_i,·)
    VecD delta(N);
    for (int k = 0; k < N; ++k) {
      double s = 0;
      for (int i = 0; i < N; ++i) s -= oracle::nabla_omega(nab, J, i, ev(N, i), ev(N, k));
      delta(k) = s;
    }
    VecD dw = delta_omega(d);
    CHECK(std::abs(dw(0)) == 0);
    CHECK((dw - delta).norm() < 1e-11);
    // θ = -(1/(n-1)) δω∘J
    VecD theta = -(J.transpose() * dw) / (n - 1);
    CHECK((lee_form(d) - theta).norm() < 1e-11);
    // ∇ω and its J-symmetry
    for (int i = 0; i < N; ++i) {
      CHECK(nabla_omega(d, ev(N, i), y, z) == doctest::Approx(oracle::nabla_omega(nab, J, i, y, z)).epsilon(1e-9).scale(1));
      CHECK(nabla_omega(d, ev(N, i), VecD(J * y), z) == doctest::Approx(nabla_omega(d, ev(N, i), y, VecD(J * z))).scale(1));
      CHECK(std::abs(nabla_omega(d, ev(N, i), y, VecD(J * y))) < 1e-10);
    }
    // (∇_{e0}ω)(e0,x) = <ρ,x>
    CHECK(nabla_omega(d, ev(N, 0), ev(N, 0), xa) == doctest::Approx(d.rho.dot(xa.tail(N - 2))).scale(1));
    // T± and U from the definitions
    auto nw = [&](const VecD& a, const VecD& b, const VecD& c) {
      double s = 0;
      for (int i = 0; i < N; ++i) s += a(i) * oracle::nabla_omega(nab, J, i, b, c);
      return s;
    };
    for (int sign : {1, -1}) {
      double ref = nw(x, y, z) + sign * nw(J * x, J * y, z);
      CHECK(tensor_T(sign, d, x, y, z) == doctest::Approx(ref).epsilon(1e-9).scale(1));
      CHECK(tensor_T(sign, d, VecD(J * x), y, z) ==
            doctest::Approx(-sign * tensor_T(sign, d, x, VecD(J * y), z)).epsilon(1e-9).scale(1));
    }
    CHECK(tensor_U(d, VecD(J * x), VecD(J * y), z) == doctest::Approx(tensor_U(d, x, y, z)).epsilon(1e-9).scale(1));
  }
}

TEST_CASE("rough Laplacian and harmonic commutator") {
  auto J2 = standard_J<double>(2).J;
  SUBCASE("L0 is harmonic") { CHECK(harmonic_commutator(levi_civita(dec_of(2, L0)), J2).norm() < 1e-14); }
  SUBCASE("integrable non-harmonic example") {
    auto H = harmonic_commutator(levi_civita(dec_of(2, mat({{0, 0, 0}, {1, 0, -1}, {0, 1, 0}}))), J2);
    CHECK(H.norm() > 0.1);
  }
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 2 + rep % 3;
    MatD L = oracle::random_L(rng, n);
    auto d = dec_of(n, L);
    auto c = levi_civita(d);
    MatD J = standard_J<double>(n).J;
    MatD H = harmonic_commutator(c, J);
    CHECK((H + H.transpose()).norm() < 1e-11);
    CHECK((H * J + J * H).norm() < 1e-11);
    CHECK((H - harmonic_commutator_explicit(c, J)).norm() < 1e-10);
    // Σ_i ∇_{e_i} e_i = (Tr S) e0
    VecD v = VecD::Zero(2 * n);
    for (int i = 0; i < 2 * n; ++i) v += c.nabla[i].col(i);
    CHECK(std::abs(v(0) - d.trace_S) < 1e-12);
    CHECK(v.tail(2 * n - 1).norm() < 1e-12);
    for (int i = 0; i < 2 * n; ++i) {
      MatD DJ = c.nabla[i] * J - J * c.nabla[i];
      CHECK((J * DJ + DJ * J).norm() < 1e-12);
    }
    // R from the independent Koszul table
    auto nab = oracle::koszul(L);
    MatD R = MatD::Zero(2 * n, 2 * n);
    VecD w = VecD::Zero(2 * n);
    for (int i = 0; i < 2 * n; ++i) {
      MatD DJ = nab[i] * J - J * nab[i];
      R += nab[i] * DJ - DJ * nab[i];
      w += nab[i].col(i);
    }
    MatD Nw = MatD::Zero(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i) Nw += w(i) * nab[i];
    R -= Nw * J - J * Nw;
    CHECK((rough_laplacian(c, J) - R).norm() < 1e-10);
  }
}

TEST_CASE("tensor report") {
  auto rep = tensor_report(dec_of(2, MatD::Zero(3, 3)));
  CHECK(rep.nijenhuis_norm == 0);
  CHECK(rep.H_norm == 0);
  CHECK(rep.metric_flat_hint);
  auto rep2 = tensor_report(dec_of(2, L2));
  CHECK(rep2.d_omega_norm < 1e-15);
  CHECK(rep2.nijenhuis_norm > 0);
  CHECK_FALSE(rep2.metric_flat_hint);
}
