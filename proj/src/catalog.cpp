#include "aah/catalog.hpp"
#include "aah/errors.hpp"
#include "aah/gray_hervella.hpp"
#include "aah/harmonicity.hpp"
#include "aah/lattice.hpp"
#include "aah/skt.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

namespace aah {

namespace {

constexpr double kPi = std::numbers::pi;

double a_m(long long m) {
  const double md = static_cast<double>(m);
  return std::log((md + std::sqrt(md * md - 4)) / 2);
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

// Expected abelian group Z^rank + torsion, torsion factors 1 dropped.
struct Group {
  int rank = 1;
  std::vector<long long> torsion;

  Group& z(int k = 1) {
    rank += k;
    return *this;
  }
  Group& t(long long d, int times = 1) {
    for (int i = 0; i < times; ++i)
      if (d > 1) torsion.push_back(d);
    return *this;
  }
  // coker(R_θ - I) for the admissible angles
  Group& rot(double theta, int times = 1) {
    for (int i = 0; i < times; ++i) {
      if (std::abs(theta - 2 * kPi) < 1e-12) z(2);
      else if (std::abs(theta - kPi) < 1e-12) t(2, 2);
      else if (std::abs(theta - 2 * kPi / 3) < 1e-12) t(3);
      else if (std::abs(theta - kPi / 2) < 1e-12) t(2);
    }
    return *this;
  }
  // invariant-factor form, so Z_2 + Z_3 reads Z_6
  std::string str() const {
    AbelianGroup g;
    g.rank = rank;
    if (!torsion.empty()) {
      MatZ T = MatZ::Zero(torsion.size(), torsion.size());
      for (size_t i = 0; i < torsion.size(); ++i) T(i, i) = torsion[i];
      for (long long d : smith_normal_form(T).factors)
        if (d > 1) g.torsion.push_back(d);
    }
    return g.describe();
  }
};

struct LatticeExpect {
  double t0 = 1;
  MatD source;  // exp(t0 * source) must be conjugate to the witness
  std::vector<BlockSpec> blocks;
  std::string abelianization;
};

struct Fixture {
  std::string notes;
  int n = 2;
  MatD L;
  bool harmonic = true;
  GHClass genuine = kW;
  bool integrable = false;
  std::optional<bool> skt;
  std::optional<SktCase> skt_case;
  std::optional<LatticeExpect> lattice;
  std::vector<std::function<FieldCheck()>> extra;
};

MatD mat(std::initializer_list<std::initializer_list<double>> rows) {
  MatD M(rows.size(), rows.begin()->size());
  int i = 0;
  for (auto r : rows) {
    int j = 0;
    for (double x : r) M(i, j++) = x;
    ++i;
  }
  return M;
}

MatD direct_sum(const MatD& A, const MatD& B) {
  MatD M = MatD::Zero(A.rows() + B.rows(), A.cols() + B.cols());
  M.topLeftCorner(A.rows(), A.cols()) = A;
  M.bottomRightCorner(B.rows(), B.cols()) = B;
  return M;
}

MatD repeat(const MatD& A, int k) {
  MatD M(0, 0);
  for (int i = 0; i < k; ++i) M = direct_sum(M, A);
  return M;
}

MatD rot2(double t) { return mat({{0, -t}, {t, 0}}); }

MatD L0_dim4() { return mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}); }
MatD L1_dim4() { return mat({{0, 0, 0}, {0, 1, 0}, {0, 0, -1}}); }
MatD L2_dim4() { return mat({{0, 1, 0}, {0, 1, 0}, {0, 0, -1}}); }

void require_n(const CatalogParams& p, int min_n) {
  if (p.n < min_n) fail(ErrorKind::InvalidInput, "this entry needs n >= " + std::to_string(min_n));
  if (p.m < 3) fail(ErrorKind::InvalidInput, "m must be >= 3");
}

FieldCheck check(const std::string& field, const std::string& expected, const std::string& actual) {
  return {field, expected, actual, expected == actual};
}

FieldCheck iso_check(const std::string& field, const MatD& A, const MatD& B) {
  return check(field, "true", yes_no(isomorphism_scale_check(A, B, 1.0)));
}

// L^3 = 0 with the almost Kähler harmonic equations forces L^2 = 0: sample the constraint set exactly.
FieldCheck nilpotent_quantifier() {
  std::mt19937 rng(20240607);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  auto q = [&] { return Rational(num(rng), den(rng)); };
  int checked = 0, counter = 0;
  for (int it = 0; it < 200; ++it) {
    // generic nilpotent D in sp(1): k [[uv, -u^2], [v^2, -uv]]
    Rational u = q(), v = q(), k = q();
    Rational a = k * u * v, b = -k * u * u, c = k * v * v;
    // kernel of (r,s) -> (ar + cs, br - as)
    Rational r = c, s = -a;
    if (r == 0 && s == 0) r = a, s = b;
    if (r == 0 && s == 0) r = q(), s = q();
    Rational t = q();
    MatQ L(3, 3);
    L << 0, r * t, s * t, 0, a, b, 0, c, -a;
    MatQ L2 = L * L, L3 = L2 * L;
    if (!all_zero(L3)) return check("L^3=0 and aK-harmonic => L^2=0", "holds on 200 samples", "sample not nilpotent");
    auto dec = decompose(AlgebraSpec<Rational>::from_matrix(2, L));
    if (!is_harmonic_oracle(dec).harmonic)
      return check("L^3=0 and aK-harmonic => L^2=0", "holds on 200 samples", "sample not harmonic");
    if (!all_zero(L2)) ++counter;
    ++checked;
    // control: off the kernel of (r,s) -> (ar + cs, br - as), L^2 != 0
    if (!(a == 0 && b == 0 && c == 0)) {
      Rational dr = a, ds = c;
      if (dr == 0 && ds == 0) dr = b, ds = -a;
      MatQ Lc = L;
      Lc(0, 1) += dr;
      Lc(0, 2) += ds;
      if (all_zero(MatQ(Lc * Lc))) ++counter;
    }
  }
  std::ostringstream os;
  os << (counter == 0 ? "holds on " : "fails on ") << checked << " samples";
  return check("L^3=0 and aK-harmonic => L^2=0", "holds on 200 samples", os.str());
}

using Builder = std::function<Fixture(const CatalogParams&)>;

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> r = {
      {"dim4-W-harmonic",
       [](const CatalogParams& p) {
         require_n(p, 2);
         Fixture f;
         f.notes = "harmonic, non-integrable (w0 != 0), general class W; countably many non-isomorphic lattices";
         f.n = 2;
         f.L = L0_dim4();
         f.harmonic = true;
         f.genuine = kW;
         f.integrable = false;
         f.skt = false;
         f.lattice = LatticeExpect{a_m(p.m), f.L, {BlockSpec::hyperbolic(p.m), BlockSpec::identity(1)},
                                   Group{}.z().t(p.m - 2).str()};
         f.extra.push_back([] {
           std::ostringstream got;
           bool ok = true;
           for (long long m = 3; m <= 12; ++m) {
             auto w = assemble_witness({BlockSpec::hyperbolic(m), BlockSpec::identity(1)});
             ok = ok && lattice_abelianization(w.E).describe() == Group{}.z().t(m - 2).str();
           }
           return check("abelianization Z^2 + Z_{m-2}, m = 3..12", "true", yes_no(ok));
         });
         f.extra.push_back([] { return iso_check("L0 ~ L1", L0_dim4(), L1_dim4()); });
         f.extra.push_back([] { return iso_check("L0 ~ L2", L0_dim4(), L2_dim4()); });
         f.extra.push_back([] { return iso_check("L1 ~ L2", L1_dim4(), L2_dim4()); });
         return f;
       }},
      {"dim4-aK-harmonic",
       [](const CatalogParams&) {
         Fixture f;
         f.notes = "almost Kaehler and harmonic; algebra isomorphic to the dim4-W-harmonic one";
         f.n = 2;
         f.L = L1_dim4();
         f.harmonic = true;
         f.genuine = kW2;
         f.integrable = false;
         return f;
       }},
      {"dim4-aK-nonharmonic",
       [](const CatalogParams&) {
         Fixture f;
         f.notes = "almost Kaehler, not harmonic";
         f.n = 2;
         f.L = L2_dim4();
         f.harmonic = false;
         f.genuine = kW2;
         f.integrable = false;
         return f;
       }},
      {"dim4-integrable-nonharmonic",
       [](const CatalogParams& p) {
         Fixture f;
         f.notes = "integrable, not harmonic; the basis change e0' = e0 + e2, e1' = e1 + e3 gives a flat Kaehler metric";
         f.n = 2;
         f.L = mat({{0, 0, 0}, {1, 0, -1}, {0, 1, 0}});
         f.harmonic = false;
         f.genuine = kW4;
         f.integrable = true;
         f.skt = true;
         f.skt_case = SktCase::NotHarmonic;
         f.lattice = LatticeExpect{p.a, f.L, {BlockSpec::identity(1), BlockSpec::rotation(p.a)}, Group{}.z().rot(p.a).str()};
         MatD L = f.L;
         f.extra.push_back([] {
           auto w = assemble_witness({BlockSpec::identity(1), BlockSpec::rotation(2 * kPi)});
           return check("t = 2pi lattice", "Z^4", lattice_abelianization(w.E).describe());
         });
         f.extra.push_back([] {
           MatD Lp = mat({{0, 0, 0}, {0, 0, -1}, {0, 1, 0}});
           auto dec = decompose(AlgebraSpec<double>::from_matrix(2, Lp));
           std::string got = gh_name(classify_checked(dec).genuine) + "," + yes_no(harmonic_cross_checked(dec).harmonic) +
                             "," + yes_no(is_integrable(dec));
           return check("L' class,harmonic,integrable", "Kaehler,true,true", got);
         });
         f.extra.push_back([L] { return iso_check("L ~ L'", L, mat({{0, 0, 0}, {0, 0, -1}, {0, 1, 0}})); });
         return f;
       }},
      {"kodaira-thurston",
       [](const CatalogParams&) {
         Fixture f;
         f.notes = "nilpotent H3 x R, almost Kaehler and harmonic (Abbena metric)";
         f.n = 2;
         f.L = mat({{0, 0, 0}, {0, 0, 0}, {0, 1, 0}});
         f.harmonic = true;
         f.genuine = kW2;
         f.integrable = false;
         f.skt = false;
         f.lattice = LatticeExpect{1, f.L, {BlockSpec::identity(1), BlockSpec::unipotent(2)}, Group{}.z(2).str()};
         return f;
       }},
      {"nilpotent-3step-W",
       [](const CatalogParams&) {
         Fixture f;
         f.notes = "3-step nilpotent, harmonic, general class W; no harmonic almost Kaehler structure exists";
         f.n = 2;
         f.L = mat({{0, 1, 0}, {0, 0, 0}, {1, 0, 0}});
         f.harmonic = true;
         f.genuine = kW;
         f.integrable = false;
         f.lattice = LatticeExpect{1, f.L, {BlockSpec::unipotent(3)}, Group{}.z().str()};
         MatD L = f.L;
         f.extra.push_back([L] {
           return check("L^3 = 0, L^2 != 0", "true", yes_no((L * L * L).norm() == 0 && (L * L).norm() != 0));
         });
         f.extra.push_back(nilpotent_quantifier);
         return f;
       }},
      {"W2-harmonic-2n",
       [](const CatalogParams& p) {
         require_n(p, 3);
         Fixture f;
         f.notes = "almost Kaehler, harmonic; lattices with abelianization Z^2 + (Z_{m-2})^{n-1}";
         f.n = p.n;
         f.L = direct_sum(MatD::Zero(1, 1), repeat(mat({{0, 1}, {1, 0}}), p.n - 1));
         f.harmonic = true;
         f.genuine = kW2;
         f.integrable = false;
         std::vector<BlockSpec> blocks{BlockSpec::identity(1)};
         for (int i = 0; i < p.n - 1; ++i) blocks.push_back(BlockSpec::hyperbolic(p.m));
         f.lattice = LatticeExpect{a_m(p.m), f.L, blocks, Group{}.z().t(p.m - 2, p.n - 1).str()};
         return f;
       }},
      {"W2W3-harmonic",
       [](const CatalogParams& p) {
         require_n(p, 3);
         Fixture f;
         const double am = a_m(p.m);
         f.notes = "harmonic, genuinely W2+W3";
         f.n = p.n;
         MatD L = MatD::Zero(5, 5);
         L(0, 1) = 1;
         L(2, 2) = am;
         L(3, 3) = -am;
         f.L = direct_sum(L, repeat(mat({{am, 0}, {0, -am}}), p.n - 3));
         f.harmonic = true;
         f.genuine = kW2 | kW3;
         f.integrable = false;
         std::vector<BlockSpec> blocks{BlockSpec::unipotent(2), BlockSpec::hyperbolic(p.m), BlockSpec::identity(1)};
         for (int i = 0; i < p.n - 3; ++i) blocks.push_back(BlockSpec::hyperbolic(p.m));
         f.lattice = LatticeExpect{1, f.L, blocks, Group{}.z(2).t(p.m - 2, p.n - 2).str()};
         return f;
       }},
      {"W1W2W3-harmonic",
       [](const CatalogParams& p) {
         require_n(p, 3);
         Fixture f;
         const double am = a_m(p.m);
         f.notes = "harmonic, genuinely W1+W2+W3 ([Da,J'] != 0)";
         f.n = p.n;
         MatD D = mat({{am, 0, 0, 0}, {0, 0, -p.b, 0}, {0, p.b, 0, 0}, {0, 0, 0, -am}});
         f.L = direct_sum(MatD::Zero(1, 1), direct_sum(D, repeat(mat({{am, 0}, {0, -am}}), p.n - 3)));
         f.harmonic = true;
         f.genuine = kW1 | kW2 | kW3;
         f.integrable = false;
         std::vector<BlockSpec> blocks{BlockSpec::identity(1), BlockSpec::hyperbolic(p.m), BlockSpec::rotation(p.b)};
         for (int i = 0; i < p.n - 3; ++i) blocks.push_back(BlockSpec::hyperbolic(p.m));
         f.lattice = LatticeExpect{1, f.L, blocks, Group{}.z().t(p.m - 2, p.n - 2).rot(p.b).str()};
         return f;
       }},
      {"W2W4-harmonic",
       [](const CatalogParams& p) {
         require_n(p, 3);
         Fixture f;
         f.notes = "harmonic (w0 = 0), genuinely W2+W4; D = lambda I + B with B in sp";
         f.n = p.n;
         const int k = p.n - 1;
         MatD L = MatD::Zero(2 * p.n - 1, 2 * p.n - 1);
         L(0, 0) = 1;
         for (int i = 0; i < k; ++i) {
           L(1 + 2 * i, 1 + 2 * i) = static_cast<double>(i) / k;
           L(2 + 2 * i, 2 + 2 * i) = -static_cast<double>(i + 1) / k;
         }
         f.L = L;
         f.harmonic = true;
         f.genuine = kW2 | kW4;
         f.integrable = false;
         return f;
       }},
      {"W3W4-integrable-harmonic",
       [](const CatalogParams& p) {
         require_n(p, 3);
         Fixture f;
         const double a = p.a;
         f.notes = "integrable and harmonic (Dv0 = 0), genuinely W3+W4; isomorphic to the L1 form used for lattices";
         f.n = p.n;
         MatD L0 = mat({{0, 0, 0, 0, 0}, {0, 0, -a, 0, 0}, {0, a, 0, 0, 0}, {1, 0, -a, 0, 0}, {1, a, 0, 0, 0}});
         f.L = direct_sum(L0, repeat(rot2(p.b), p.n - 3));
         MatD L1 = direct_sum(mat({{0, 1}, {0, 0}}), direct_sum(mat({{0, -a, 0}, {a, 0, 0}, {0, 0, 0}}),
                                                              repeat(rot2(p.b), p.n - 3)));
         f.harmonic = true;
         f.genuine = kW3 | kW4;
         f.integrable = true;
         std::vector<BlockSpec> blocks{BlockSpec::unipotent(2), BlockSpec::rotation(a), BlockSpec::identity(1)};
         for (int i = 0; i < p.n - 3; ++i) blocks.push_back(BlockSpec::rotation(p.b));
         f.lattice = LatticeExpect{1, L1, blocks, Group{}.z(2).rot(a).rot(p.b, p.n - 3).str()};
         MatD L = f.L;
         f.extra.push_back([L, L1] { return iso_check("L0 ~ L1", L, L1); });
         return f;
       }},
      {"W2W3W4-harmonic",
       [](const CatalogParams& p) {
         require_n(p, 3);
         Fixture f;
         const double am = a_m(p.m);
         f.notes = "harmonic, genuinely W2+W3+W4 (v0, w0 != 0)";
         f.n = p.n;
         MatD N = mat({{0, 0, 2}, {2, 0, 0}, {0, 0, 0}});
         f.L = direct_sum(N, repeat(mat({{am, 0}, {0, -am}}), p.n - 2));
         f.harmonic = true;
         f.genuine = kW2 | kW3 | kW4;
         f.integrable = false;
         MatZ E(3, 3);
         E << 1, 0, 2, 2, 1, 2, 0, 0, 1;
         std::vector<BlockSpec> blocks{BlockSpec::explicit_block(E)};
         for (int i = 0; i < p.n - 2; ++i) blocks.push_back(BlockSpec::hyperbolic(p.m));
         f.lattice = LatticeExpect{1, f.L, blocks, Group{}.z().t(2, 2).t(p.m - 2, p.n - 2).str()};
         f.extra.push_back([E] {
           // N nilpotent: exp N = I + N + N^2/2, exactly
           MatQ Nq = MatQ::Zero(3, 3);
           Nq(0, 2) = 2;
           Nq(1, 0) = 2;
           MatQ ex = MatQ::Identity(3, 3) + Nq + Nq * Nq * Rational(1, 2);
           bool eq = true;
           for (int i = 0; i < 3; ++i)
             for (int j = 0; j < 3; ++j) eq = eq && ex(i, j) == Rational(static_cast<long>(E(i, j)));
           return check("exp of nilpotent block is integer", "true", yes_no(eq));
         });
         return f;
       }},
      {"W-harmonic-2n",
       [](const CatalogParams& p) {
         require_n(p, 3);
         Fixture f;
         const double t = a_m(p.m);
         f.notes = "harmonic, genuinely W; v0 = w0 = t_m e2 with a rotation mixing the J'-pairs";
         f.n = p.n;
         MatD L = MatD::Zero(5, 5);
         L(0, 1) = t;
         L(1, 0) = t;
         L(2, 3) = -p.a;
         L(3, 2) = p.a;
         f.L = direct_sum(L, repeat(rot2(p.b), p.n - 3));
         f.harmonic = true;
         f.genuine = kW;
         f.integrable = false;
         std::vector<BlockSpec> blocks{BlockSpec::hyperbolic(p.m), BlockSpec::rotation(p.a), BlockSpec::identity(1)};
         for (int i = 0; i < p.n - 3; ++i) blocks.push_back(BlockSpec::rotation(p.b));
         f.lattice = LatticeExpect{1, f.L, blocks, Group{}.z().t(p.m - 2).rot(p.a).rot(p.b, p.n - 3).str()};
         return f;
       }},
      {"skt-family",
       [](const CatalogParams& p) {
         require_n(p, 2);
         if (p.mu == 0) fail(ErrorKind::InvalidInput, "skt-family needs mu != 0");
         Fixture f;
         f.notes = "SKT with harmonic J, case (i); blocks with real parts -mu/2 and 0";
         f.n = p.n;
         MatD M = mat({{p.mu, 0, 0}, {0, -p.mu / 2, -p.a}, {0, p.a, -p.mu / 2}});
         f.L = direct_sum(M, repeat(rot2(p.b), p.n - 2));
         f.harmonic = true;
         f.genuine = kW3 | kW4;
         f.integrable = true;
         f.skt = true;
         f.skt_case = SktCase::CaseI;
         MatD L = f.L;
         const int n = p.n;
         const double mu = p.mu;
         f.extra.push_back([L, n, mu] {
           auto dec = decompose(AlgebraSpec<double>::from_matrix(n, L));
           BlockBasis bb = skt_block_basis(dec);
           bool ok = bb.identity && bb.reconstruction_error <= dec.tol(1);
           for (auto [a, b] : bb.ab) ok = ok && (std::abs(a) <= dec.tol(1) || std::abs(a + mu / 2) <= dec.tol(1));
           return check("block basis is the identity, real parts in {0,-mu/2}", "true", yes_no(ok));
         });
         return f;
       }},
      {"skt-case-ii",
       [](const CatalogParams& p) {
         require_n(p, 3);
         Fixture f;
         f.notes = "SKT with harmonic J, case (ii): mu = 0, D in u(n-1), v0 in ker D";
         f.n = p.n;
         MatD D = direct_sum(direct_sum(rot2(p.b), MatD::Zero(2, 2)), repeat(rot2(p.b), p.n - 3));
         MatD L = MatD::Zero(2 * p.n - 1, 2 * p.n - 1);
         L.bottomRightCorner(2 * p.n - 2, 2 * p.n - 2) = D;
         L(3, 0) = 1;  // v0 = e4
         f.L = L;
         f.harmonic = true;
         f.genuine = kW3 | kW4;
         f.integrable = true;
         f.skt = true;
         f.skt_case = SktCase::CaseII;
         std::vector<BlockSpec> blocks{BlockSpec::unipotent(2), BlockSpec::rotation(p.b), BlockSpec::identity(1)};
         for (int i = 0; i < p.n - 3; ++i) blocks.push_back(BlockSpec::rotation(p.b));
         f.lattice = LatticeExpect{1, f.L, blocks, Group{}.z(2).rot(p.b, p.n - 2).str()};
         return f;
       }},
  };
  return r;
}

template <class F>
FieldCheck guarded(const std::string& field, const std::string& expected, F&& actual) {
  try {
    return check(field, expected, actual());
  } catch (const std::exception& e) {
    return {field, expected, std::string("error: ") + e.what(), false};
  }
}

}  // namespace

std::vector<EntryInfo> catalog_entries() {
  std::vector<EntryInfo> out;
  CatalogParams p;
  for (const auto& [name, build] : registry()) out.push_back({name, build(p).notes});
  return out;
}

EntryReport run_entry(const std::string& name, const CatalogParams& p) {
  const Builder* build = nullptr;
  for (const auto& [k, b] : registry())
    if (k == name) build = &b;
  if (!build) {
    std::string names;
    for (const auto& [k, b] : registry()) names += (names.empty() ? "" : ", ") + k;
    fail(ErrorKind::Lookup, "unknown catalog entry '" + name + "'; available: " + names);
  }
  Fixture f = (*build)(p);
  EntryReport rep;
  rep.name = name;
  rep.notes = f.notes;
  rep.n = f.n;
  rep.L = f.L;
  auto spec = AlgebraSpec<double>::from_matrix(f.n, f.L);
  auto dec = decompose(spec);

  rep.fields.push_back(guarded("harmonic", yes_no(f.harmonic), [&] {
    auto vs = all_harmonic_verdicts(dec);
    return yes_no(vs.front().harmonic);
  }));
  rep.fields.push_back(guarded("genuine_class", gh_name(f.genuine), [&] { return gh_name(classify_checked(dec).genuine); }));
  rep.fields.push_back(guarded("integrable", yes_no(f.integrable), [&] { return yes_no(is_integrable(dec)); }));
  if (f.skt)
    rep.fields.push_back(guarded("skt", yes_no(*f.skt), [&] { return yes_no(is_skt(dec).skt); }));
  if (f.skt_case)
    rep.fields.push_back(
        guarded("skt_case", skt_case_name(*f.skt_case), [&] { return std::string(skt_case_name(skt_harmonic(dec).harmonic_case)); }));
  if (f.lattice) {
    const LatticeExpect& le = *f.lattice;
    std::optional<LatticeWitness> w;
    rep.fields.push_back(guarded("lattice_witness", "det 1, char poly match", [&] {
      w = assemble_witness(le.blocks);
      std::ostringstream os;
      os << "det " << w->det << ", char poly " << (w->charpoly_match ? "match" : "mismatch");
      return os.str();
    }));
    rep.fields.push_back(guarded("exp(t0 L) ~ E", "true", [&] {
      if (!w) return std::string("no witness");
      MatD X = (le.t0 * le.source).exp();
      return yes_no(isomorphism_scale_check(X, w->E.cast<double>(), 1.0, 1e-7));
    }));
    rep.fields.push_back(guarded("lattice_abelianization", le.abelianization, [&] {
      if (!w) return std::string("no witness");
      return lattice_abelianization(w->E).describe();
    }));
  }
  for (auto& x : f.extra) {
    try {
      rep.fields.push_back(x());
    } catch (const std::exception& e) {
      rep.fields.push_back({"extra", "no error", std::string("error: ") + e.what(), false});
    }
  }
  rep.pass = std::all_of(rep.fields.begin(), rep.fields.end(), [](const FieldCheck& c) { return c.pass; });
  return rep;
}

std::vector<EntryReport> run_all(const CatalogParams& p) {
  std::vector<EntryReport> out;
  for (const auto& [name, b] : registry()) out.push_back(run_entry(name, p));
  return out;
}

}  // namespace aah
