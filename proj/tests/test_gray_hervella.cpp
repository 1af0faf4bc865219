#include <doctest.h>

#include "aah/errors.hpp"
#include "aah/gray_hervella.hpp"
#include "oracles.hpp"

#include <bit>

using namespace aah;
using oracle::mat;

namespace {

Decomposition<double> dec_of(int n, const MatD& L) { return decompose(AlgebraSpec<double>::from_matrix(n, L)); }

ClassReport oracle_report(int n, const MatD& L) {
  return classify_oracle(AlgebraSpec<double>::from_matrix(n, L), MatD(standard_J<double>(n).J));
}

MatD w2w3_example(double am) {
  MatD L = MatD::Zero(5, 5);
  L(0, 1) = 1;
  L(2, 2) = am;
  L(3, 3) = -am;
  return L;
}

}  // namespace

TEST_CASE("class names") {
  CHECK(gh_name(kKaehler) == "Kaehler");
  CHECK(gh_name(kW2 | kW3) == "W2+W3");
  CHECK(gh_name(kW) == "W");
  for (int c = 0; c < 16; ++c) CHECK(gh_parse(gh_name(static_cast<GHClass>(c))) == c);
  CHECK(gh_parse("{0}") == kKaehler);
  CHECK_THROWS_AS(gh_parse("W5"), Error);
  CHECK(gh_listed(2).size() == 4);
  CHECK(gh_listed(3).size() == 16);
}

TEST_CASE("atomic predicates") {
  SUBCASE("W2+W3 example") {
    auto a = atomic_predicates(dec_of(3, w2w3_example(std::log((3 + std::sqrt(5.0)) / 2))));
    CHECK(a.v);
    CHECK(a.au);
    CHECK(a.tr);
    CHECK_FALSE(a.sp);
    CHECK_FALSE(a.w);
  }
  SUBCASE("zero") {
    auto a = atomic_predicates(dec_of(3, MatD::Zero(5, 5)));
    CHECK((a.v && a.w && a.sym0 && a.au && a.su && a.sp && a.tr && a.homothety && a.conf_sp));
  }
  SUBCASE("D in u(n-1) is Kaehler") {
    MatD L = MatD::Zero(5, 5);
    L(0, 0) = 0.3;
    L.bottomRightCorner(4, 4) = mat({{0, -2, 1, 0}, {2, 0, 0, 1}, {-1, 0, 0, -3}, {0, -1, 3, 0}});
    auto d = dec_of(3, L);
    auto a = atomic_predicates(d);
    CHECK((a.v && a.w && a.sym0 && a.au));
    CHECK(classify(d).genuine == kKaehler);
  }
}

TEST_CASE("worked examples") {
  auto l0 = classify_checked(dec_of(2, mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}})));
  CHECK(l0.genuine == kW);
  CHECK_FALSE(l0.member(kW2));
  CHECK_FALSE(l0.member(kW4));
  CHECK(classify_checked(dec_of(2, mat({{0, 0, 0}, {0, 0, 0}, {0, 1, 0}}))).genuine == kW2);
  CHECK_THROWS_AS(l0.member(kW1), Error);  // not listed in dimension 4

  MatD skt = MatD::Zero(5, 5);
  skt(0, 0) = 1;
  skt(1, 1) = skt(2, 2) = -0.5;
  skt(1, 2) = -1.5707963267948966;
  skt(2, 1) = 1.5707963267948966;
  skt(3, 4) = -1.5707963267948966;
  skt(4, 3) = 1.5707963267948966;
  auto s = classify_checked(dec_of(3, skt));
  CHECK(s.genuine == (kW3 | kW4));
  CHECK_FALSE(s.member(kW3));
  CHECK_FALSE(s.member(kW4));

  auto w23 = classify_checked(dec_of(3, w2w3_example(0.9624236501192069)));
  CHECK(w23.genuine == (kW2 | kW3));
}

TEST_CASE("W2+W4 example: d omega = theta ^ omega") {
  for (int n : {3, 4, 5}) {
    const int k = n - 1;
    MatD L = MatD::Zero(2 * n - 1, 2 * n - 1);
    L(0, 0) = 1;
    for (int i = 0; i < k; ++i) {
      L(1 + 2 * i, 1 + 2 * i) = static_cast<double>(i) / k;
      L(2 + 2 * i, 2 + 2 * i) = -static_cast<double>(i + 1) / k;
    }
    auto d = dec_of(n, L);
    CHECK(classify(d).genuine == (kW2 | kW4));
    CHECK(oracle_report(n, L).member(kW2 | kW4));
    // dω = θ∧ω with θ = -(1/(n-1)) δω∘J, evaluated from the bracket alone
    const int N = 2 * n;
    MatD J = oracle::std_J(n);
    auto nab = oracle::koszul(L);
    VecD delta(N);
    for (int c = 0; c < N; ++c) {
      double acc = 0;
      for (int i = 0; i < N; ++i) acc -= oracle::nabla_omega(nab, J, i, oracle::e(N, i), oracle::e(N, c));
      delta(c) = acc;
    }
    VecD theta = -(J.transpose() * delta) / (n - 1);
    auto om = [&](const VecD& a, const VecD& b) { return (J * a).dot(b); };
    double worst = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int c = 0; c < N; ++c) {
          VecD x = oracle::e(N, i), y = oracle::e(N, j), z = oracle::e(N, c);
          double wedge = theta.dot(x) * om(y, z) + theta.dot(y) * om(z, x) + theta.dot(z) * om(x, y);
          worst = std::max(worst, std::abs(oracle::d_omega(L, J, x, y, z) - wedge));
        }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("W2 membership is d omega = 0") {
  std::mt19937_64 rng(31);
  int hits = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + rep % 3, N = 2 * n;
    MatD L = oracle::structured_L(rng, n, rep % 12);
    MatD J = oracle::std_J(n);
    double dw = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
          dw = std::max(dw, std::abs(oracle::d_omega(L, J, oracle::e(N, i), oracle::e(N, j), oracle::e(N, k))));
    auto d = dec_of(n, L);
    const bool closed = dw <= d.tol(1);
    CHECK(classify(d).member(kW2) == closed);
    CHECK(oracle_report(n, L).member(kW2) == closed);
    hits += closed;
  }
  CHECK(hits > 10);
}

TEST_CASE("classify agrees with the tensor oracle; collapses and monotonicity") {
  std::mt19937_64 rng(77);
  std::vector<int> seen(16, 0);
  for (int rep = 0; rep < 360; ++rep) {
    const int n = 2 + rep % 3;
    MatD L = oracle::structured_L(rng, n, rep % 12);
    auto d = dec_of(n, L);
    auto a = classify(d);
    auto b = oracle_report(n, L);
    REQUIRE(a.memberships.size() == b.memberships.size());
    for (size_t i = 0; i < a.memberships.size(); ++i) CHECK(a.memberships[i] == b.memberships[i]);
    CHECK(a.genuine == b.genuine);
    CHECK(a.member(a.genuine));
    seen[a.genuine]++;
    for (auto [c, in] : a.memberships) {
      if (!in) continue;
      for (auto [c2, in2] : a.memberships)
        if ((c & c2) == c) CHECK(in2);  // superclasses
      if ((c & a.genuine) != a.genuine) CHECK(std::popcount(c) >= std::popcount(a.genuine));
    }
    if (n >= 3) {
      CHECK(a.member(kW1) == a.member(kKaehler));
      CHECK(a.member(kW1 | kW2) == a.member(kW2));
      CHECK(a.member(kW1 | kW3) == a.member(kW3));
      CHECK(a.member(kW1 | kW4) == a.member(kW4));
      CHECK(a.member(kW1 | kW2 | kW4) == a.member(kW2 | kW4));
      CHECK(a.member(kW1 | kW3 | kW4) == a.member(kW3 | kW4));
    }
  }
  int classes = 0;
  for (int c : seen) classes += c > 0;
  CHECK(classes >= 8);
}

TEST_CASE("exact mode classification") {
  MatQ L = MatQ::Zero(5, 5);
  L(0, 1) = 1;
  L(2, 2) = Rational(3, 2);
  L(3, 3) = Rational(-3, 2);
  auto d = decompose(AlgebraSpec<Rational>::from_matrix(3, L));
  auto r = classify_checked(d);
  CHECK(r.genuine == (kW2 | kW3));
  CHECK(r.collapses.size() == 6);
}
