#include "aah/gray_hervella.hpp"
#include "aah/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace aah {

std::string gh_name(GHClass c) {
  if (c == kKaehler) return "Kaehler";
  if (c == kW) return "W";
  std::string s;
  for (int i = 0; i < 4; ++i)
    if (c & (1u << i)) {
      if (!s.empty()) s += "+";
      s += "W" + std::to_string(i + 1);
    }
  return s;
}

GHClass gh_parse(const std::string& name) {
  for (int c = 0; c < 16; ++c)
    if (gh_name(static_cast<GHClass>(c)) == name) return static_cast<GHClass>(c);
  if (name == "{0}" || name == "Kahler" || name == "0") return kKaehler;
  fail(ErrorKind::InvalidInput, "unknown Gray-Hervella class '" + name + "'");
}

std::vector<GHClass> gh_listed(int n) {
  if (n == 2) return {kKaehler, kW2, kW4, kW};
  std::vector<GHClass> v;
  for (int c = 0; c < 16; ++c) v.push_back(static_cast<GHClass>(c));
  std::stable_sort(v.begin(), v.end(), [](GHClass a, GHClass b) { return std::popcount(a) < std::popcount(b); });
  return v;
}

bool ClassReport::member(GHClass c) const {
  for (const auto& [k, v] : memberships)
    if (k == c) return v;
  fail(ErrorKind::Lookup, "class " + gh_name(c) + " is not listed for n = " + std::to_string(n));
}

GHClass genuine_of(const std::vector<std::pair<GHClass, bool>>& memberships) {
  GHClass acc = kW;
  bool any = false;
  for (const auto& [c, v] : memberships)
    if (v) {
      acc &= c;
      any = true;
    }
  if (!any) return kW;
  for (const auto& [c, v] : memberships)
    if (c == acc && v) return acc;
  // not closed under intersection; fall back to the smallest true class
  GHClass best = kW;
  for (const auto& [c, v] : memberships)
    if (v && std::popcount(c) < std::popcount(best)) best = c;
  return best;
}

namespace {

template <class T>
Mat<T> jp(int n) {
  return standard_J<T>(n).Jprime;
}

std::vector<std::string> collapse_notes(int n) {
  if (n == 2) return {"dim 4: W1 = W3 = Kaehler, only Kaehler, W2, W4, W occur"};
  return {"W1 = Kaehler", "W1+W2 = W2", "W1+W3 = W3", "W1+W4 = W4", "W1+W2+W4 = W2+W4", "W1+W3+W4 = W3+W4"};
}

template <class T>
ClassReport classify_dim4(const Decomposition<T>& dec) {
  const Mat<T>& L = dec.L;
  const double t = dec.tol(1);
  auto z = [&](const T& x) { return scalar_vanishes(x, t); };
  const T r = L(0, 1), s = L(0, 2), p = L(1, 0), q = L(2, 0);
  const T a = L(1, 1), b = L(1, 2), c = L(2, 1), d = L(2, 2);
  bool kae = z(p) && z(q) && z(r) && z(s) && z(a) && z(d) && z(T(b + c));
  bool w2 = z(p) && z(q) && z(T(a + d));
  bool w4 = z(r) && z(s) && z(T(a - d)) && z(T(b + c));
  ClassReport rep;
  rep.n = 2;
  rep.memberships = {{kKaehler, kae}, {kW2, w2}, {kW4, w4}, {kW, true}};
  rep.genuine = genuine_of(rep.memberships);
  rep.collapses = collapse_notes(2);
  return rep;
}

}  // namespace

template <class T>
AtomicPredicates atomic_predicates(const Decomposition<T>& dec) {
  if (dec.n < 3) fail(ErrorKind::Precondition, "atomic_predicates requires n >= 3");
  const int n = dec.n;
  Mat<T> Jp = jp<T>(n);
  const double t = dec.tol(1);
  T trD = dec.D.trace();
  T c = trD * ratio<T>(1, 2 * (n - 1));
  Mat<T> I = Mat<T>::Identity(dec.D.rows(), dec.D.cols());
  Mat<T> au = dec.Da * Jp - Jp * dec.Da;
  Mat<T> su = dec.Ds * Jp - Jp * dec.Ds;
  Mat<T> sp = dec.Ds * Jp + Jp * dec.Ds;
  Mat<T> hom = dec.Ds - I * c;
  Mat<T> csp = sp - Jp * (c * 2);
  AtomicPredicates a;
  a.v = vanishes(dec.v0, t);
  a.w = vanishes(dec.w0, t);
  a.sym0 = vanishes(dec.Ds, t);
  a.au = vanishes(au, t);
  a.su = vanishes(su, t);
  a.sp = vanishes(sp, t);
  a.tr = scalar_vanishes(trD, t);
  a.homothety = vanishes(hom, t);
  a.conf_sp = vanishes(csp, t);
  a.residuals = {{"v0", frob(dec.v0)},       {"w0", frob(dec.w0)},    {"Ds", frob(dec.Ds)},
                 {"[Da,J']", frob(au)},      {"[Ds,J']", frob(su)},   {"DsJ'+J'Ds", frob(sp)},
                 {"TrD", std::abs(to_double(trD))}, {"Ds-cI", frob(hom)}, {"DsJ'+J'Ds-2cJ'", frob(csp)}};
  return a;
}

template <class T>
ClassReport classify(const Decomposition<T>& dec) {
  if (dec.n == 2) return classify_dim4(dec);
  AtomicPredicates p = atomic_predicates(dec);
  const bool kae = p.v && p.w && p.sym0 && p.au;
  const bool w2 = p.v && p.au && p.sp;
  const bool w3 = p.tr && p.v && p.w && p.au && p.su;
  const bool w4 = p.v && p.w && p.homothety && p.au;
  const bool w23 = p.tr && p.v && p.au;
  const bool w123 = p.tr && p.v;
  const bool w24 = p.v && p.au && p.conf_sp;
  const bool w34 = p.w && p.au && p.su;
  const bool w234 = p.au;
  ClassReport rep;
  rep.n = dec.n;
  for (GHClass c : gh_listed(dec.n)) {
    bool m = true;
    switch (c) {
      case kKaehler: case kW1: m = kae; break;
      case kW2: case kW1 | kW2: m = w2; break;
      case kW3: case kW1 | kW3: m = w3; break;
      case kW4: case kW1 | kW4: m = w4; break;
      case kW2 | kW3: m = w23; break;
      case kW1 | kW2 | kW3: m = w123; break;
      case kW2 | kW4: case kW1 | kW2 | kW4: m = w24; break;
      case kW3 | kW4: case kW1 | kW3 | kW4: m = w34; break;
      case kW2 | kW3 | kW4: m = w234; break;
      default: m = true;
    }
    rep.memberships.emplace_back(c, m);
  }
  rep.genuine = genuine_of(rep.memberships);
  rep.collapses = collapse_notes(dec.n);
  return rep;
}

template <class T>
ClassReport classify_oracle(const AlgebraSpec<T>& spec, const Mat<T>& J) {
  check_compatible(J, 1e-9);
  const int n = spec.n, N = spec.dim();
  const double t = spec.tolerance * std::max(1.0, frob(spec.L));
  GenericTensors<T> g = generic_tensors(spec, J);
  auto zero_when = [&](auto&& f) {
    // Frobenius norm over basis triples of a residual tensor f(i,j,k)
    T acc = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
          T v = f(i, j, k);
          acc += v * v;
        }
    if constexpr (is_exact_v<T>)
      return acc == 0;
    else
      return std::sqrt(acc) <= t;
  };
  auto omega = [&](int a, int b) -> T { return J(b, a); };  // <J e_a, e_b>
  const T kU = ratio<T>(-1, 2 * (n - 1));
  const T kU2 = ratio<T>(-1, n - 1);

  const bool nabla0 = zero_when([&](int i, int j, int k) { return g.nabla_omega[g.idx(i, j, k)]; });
  const bool dw0 = zero_when([&](int i, int j, int k) { return g.d_omega[g.idx(i, j, k)]; });
  const bool N0 = zero_when([&](int i, int j, int k) { return g.nijenhuis[g.idx(i, j, k)]; });
  const bool delta0 = vanishes(g.delta_omega, t);

  ClassReport rep;
  rep.n = n;
  if (n == 2) {
    rep.memberships = {{kKaehler, nabla0}, {kW2, dw0}, {kW4, N0}, {kW, true}};
    rep.genuine = genuine_of(rep.memberships);
    rep.collapses = collapse_notes(2);
    return rep;
  }
  const bool w1 = zero_when([&](int i, int j, int k) {
    return T(g.nabla_omega[g.idx(i, j, k)] * 3 - g.d_omega[g.idx(i, j, k)]);
  });
  const bool w4 = zero_when([&](int i, int j, int k) { return T(g.nabla_omega[g.idx(i, j, k)] - kU * g.U(i, j, k)); });
  const bool w12 = zero_when([&](int i, int j, int k) { return g.T_pm(1, i, j, k); });
  // T^-(X,X,Y) = 0 polarized
  const bool w13 = delta0 && zero_when([&](int i, int j, int k) { return T(g.T_pm(-1, i, j, k) + g.T_pm(-1, j, i, k)); });
  const bool w24 = zero_when([&](int i, int j, int k) {
    T tw = g.lee_form(i) * omega(j, k) + g.lee_form(j) * omega(k, i) + g.lee_form(k) * omega(i, j);
    return T(g.d_omega[g.idx(i, j, k)] - tw);
  });
  const bool w14 = zero_when([&](int i, int j, int k) {
    T lhs = g.nabla_omega[g.idx(i, j, k)] + g.nabla_omega[g.idx(j, i, k)];
    T rhs = kU * (g.U(i, j, k) + g.U(j, i, k));
    return T(lhs - rhs);
  });
  const bool cyc = zero_when([&](int i, int j, int k) {
    return T(g.T_pm(-1, i, j, k) + g.T_pm(-1, j, k, i) + g.T_pm(-1, k, i, j));
  });
  const bool w124 = zero_when([&](int i, int j, int k) { return T(g.T_pm(1, i, j, k) - kU2 * g.U(i, j, k)); });
  // <N(X,Y),X> = 0 polarized
  const bool w134 = zero_when([&](int i, int j, int k) {
    return T(g.nijenhuis[g.idx(i, j, k)] + g.nijenhuis[g.idx(k, j, i)]);
  });

  for (GHClass c : gh_listed(n)) {
    bool m = true;
    switch (c) {
      case kKaehler: m = nabla0; break;
      case kW1: m = w1; break;
      case kW2: m = dw0; break;
      case kW3: m = delta0 && N0; break;
      case kW4: m = w4; break;
      case kW1 | kW2: m = w12; break;
      case kW3 | kW4: m = N0; break;
      case kW1 | kW3: m = w13; break;
      case kW2 | kW4: m = w24; break;
      case kW1 | kW4: m = w14; break;
      case kW2 | kW3: m = cyc && delta0; break;
      case kW1 | kW2 | kW3: m = delta0; break;
      case kW1 | kW2 | kW4: m = w124; break;
      case kW1 | kW3 | kW4: m = w134; break;
      case kW2 | kW3 | kW4: m = cyc; break;
      default: m = true;
    }
    rep.memberships.emplace_back(c, m);
  }
  rep.genuine = genuine_of(rep.memberships);
  return rep;
}

template <class T>
ClassReport classify_checked(const Decomposition<T>& dec) {
  ClassReport a = classify(dec);
  AlgebraSpec<T> spec = AlgebraSpec<T>::from_matrix(dec.n, dec.L, dec.tolerance);
  ClassReport b = classify_oracle(spec, Mat<T>(standard_J<T>(dec.n).J));
  for (size_t i = 0; i < a.memberships.size(); ++i)
    if (a.memberships[i] != b.memberships[i]) {
      std::ostringstream os;
      os << "classify and classify_oracle disagree on " << gh_name(a.memberships[i].first) << ": matrix conditions say "
         << a.memberships[i].second << ", tensors say " << b.memberships[i].second;
      fail(ErrorKind::Consistency, os.str());
    }
  return a;
}

#define AAH_INSTANTIATE(T)                                                           \
  template AtomicPredicates atomic_predicates<T>(const Decomposition<T>&);           \
  template ClassReport classify<T>(const Decomposition<T>&);                         \
  template ClassReport classify_oracle<T>(const AlgebraSpec<T>&, const Mat<T>&);     \
  template ClassReport classify_checked<T>(const Decomposition<T>&);

AAH_INSTANTIATE(double)
AAH_INSTANTIATE(Rational)

}  // namespace aah
