#include "json_io.hpp"

#include "aah/connection.hpp"
#include "aah/errors.hpp"
#include "aah/gray_hervella.hpp"
#include "aah/harmonicity.hpp"
#include "aah/skt.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace aah::io {

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// value as a real; "pi" forms give k*pi/d
double real_from_string(const std::string& raw) {
  std::string s = trim(raw);
  auto p = s.find("pi");
  if (p == std::string::npos) return parse_rational(s).get_d();
  std::string coef = trim(s.substr(0, p));
  std::string rest = trim(s.substr(p + 2));
  if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
  double k = 1;
  if (coef == "-")
    k = -1;
  else if (coef == "+" || coef.empty())
    k = 1;
  else
    k = parse_rational(coef).get_d();
  double d = 1;
  if (!rest.empty()) {
    if (rest.front() != '/') fail(ErrorKind::InvalidInput, "cannot parse number '" + raw + "'");
    d = parse_rational(rest.substr(1)).get_d();
    if (d == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + raw + "'");
  }
  return k * std::numbers::pi / d;
}

template <class T>
T scalar_of(const json& v) {
  if constexpr (is_exact_v<T>)
    return parse_exact(v);
  else
    return parse_real(v);
}

template <class T>
Mat<T> matrix_of(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    fail(ErrorKind::InvalidInput, std::string(what) + " must be a nonempty array of rows");
  const size_t r = j.size(), c = j[0].size();
  Mat<T> M(r, c);
  for (size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) fail(ErrorKind::InvalidInput, std::string(what) + " rows differ in length");
    for (size_t k = 0; k < c; ++k) M(i, k) = scalar_of<T>(j[i][k]);
  }
  return M;
}

template <class T>
Vec<T> vector_of(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, std::string(what) + " must be an array");
  Vec<T> v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(i) = scalar_of<T>(j[i]);
  return v;
}

template <class T>
AlgebraSpec<T> spec_of(const json& j, double tol) {
  if (j.contains("L")) {
    Mat<T> L = matrix_of<T>(j["L"], "L");
    int n = j.contains("n") ? j["n"].get<int>() : static_cast<int>((L.rows() + 1) / 2);
    return AlgebraSpec<T>::from_matrix(n, L, tol);
  }
  for (const char* k : {"n", "mu", "v0", "w0", "D"})
    if (!j.contains(k)) fail(ErrorKind::InvalidInput, std::string("input needs either L or n, mu, v0, w0, D; missing ") + k);
  const int n = j["n"].get<int>();
  Mat<T> D = (2 * n - 2 > 0) ? matrix_of<T>(j["D"], "D") : Mat<T>(0, 0);
  return AlgebraSpec<T>::from_components(n, scalar_of<T>(j["mu"]), vector_of<T>(j["v0"], "v0"),
                                         vector_of<T>(j["w0"], "w0"), D, tol);
}

json num(double x) { return x; }
json num(const Rational& q) { return rational_to_string(q); }

template <class Derived>
json mat_json(const Eigen::MatrixBase<Derived>& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(num(m(i, k)));
    a.push_back(row);
  }
  return a;
}

template <class Derived>
json vec_json(const Eigen::MatrixBase<Derived>& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

json residuals_json(const std::vector<std::pair<std::string, double>>& r) {
  json o = json::object();
  for (const auto& [k, v] : r) o[k] = v;
  return o;
}

json verdict_json(const HarmonicVerdict& v) {
  return {{"method", method_name(v.method)},
          {"harmonic", v.harmonic},
          {"residuals", residuals_json(v.residuals)},
          {"threshold", v.threshold}};
}

template <class T>
json decomposition_json(const Decomposition<T>& d) {
  return {{"mu", num(d.mu)},         {"v0", vec_json(d.v0)}, {"w0", vec_json(d.w0)}, {"D", mat_json(d.D)},
          {"gamma", vec_json(d.gamma)}, {"rho", vec_json(d.rho)}, {"Ds", mat_json(d.Ds)}, {"Da", mat_json(d.Da)},
          {"trace_S", num(d.trace_S)}, {"trace_D", num(d.trace_D())}};
}

template <class T>
json harmonic_of(const Decomposition<T>& d) {
  std::vector<HarmonicVerdict> vs = all_harmonic_verdicts(d);
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(verdict_json(v));
  return {{"harmonic", vs.front().harmonic}, {"verdicts", arr}};
}

template <class T>
json classify_of(const Decomposition<T>& d) {
  ClassReport r = classify_checked(d);
  json mem = json::object();
  for (const auto& [c, b] : r.memberships) mem[gh_name(c)] = b;
  json out = {{"genuine", gh_name(r.genuine)}, {"memberships", mem}, {"collapses", r.collapses},
              {"oracle_agrees", true}};
  if (d.n >= 3) {
    AtomicPredicates a = atomic_predicates(d);
    out["predicates"] = {{"v0=0", a.v},          {"w0=0", a.w},          {"Ds=0", a.sym0},
                         {"[Da,J']=0", a.au},    {"[Ds,J']=0", a.su},    {"DsJ'+J'Ds=0", a.sp},
                         {"TrD=0", a.tr},        {"Ds=cI", a.homothety}, {"DsJ'+J'Ds=2cJ'", a.conf_sp}};
    out["predicate_residuals"] = residuals_json(a.residuals);
  }
  return out;
}

template <class T>
json skt_of(const Decomposition<T>& d) {
  SktVerdict v = is_skt(d);
  json out = {{"skt", v.skt}, {"reasons", residuals_json(v.reasons)}, {"eigen_real_parts", v.eigen_real_parts}};
  if (v.skt) {
    SktVerdict h = skt_harmonic(d);
    out["harmonic_case"] = skt_case_name(h.harmonic_case);
    try {
      BlockBasis bb = skt_block_basis(d);
      json blocks = json::array();
      for (auto [a, b] : bb.ab) blocks.push_back({{"a", a}, {"b", b}});
      out["block_basis"] = {{"P", mat_json(bb.P)},
                            {"blocks", blocks},
                            {"identity", bb.identity},
                            {"reconstruction_error", bb.reconstruction_error}};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Degenerate) throw;
      out["block_basis"] = {{"error", e.what()}};
    }
  } else {
    out["harmonic_case"] = skt_case_name(SktCase::NotApplicable);
  }
  return out;
}

json tensors_json(const TensorReport& t) {
  return {{"nijenhuis_norm", t.nijenhuis_norm}, {"d_omega_norm", t.d_omega_norm},
          {"delta_omega", vec_json(t.delta_omega)}, {"lee_form", vec_json(t.lee_form)},
          {"nabla_omega_norm", t.nabla_omega_norm}, {"H", mat_json(t.H)},
          {"H_norm", t.H_norm}, {"metric_flat", t.metric_flat_hint}};
}

template <class T>
json analyze_of(const AlgebraSpec<T>& s) {
  Decomposition<T> d = decompose(s);
  json out;
  out["unimodular"] = is_unimodular(s);
  out["decomposition"] = decomposition_json(d);
  out["tensors"] = tensors_json(tensor_report(d));
  out["harmonic"] = harmonic_of(d);
  out["integrable"] = is_integrable(d);
  out["classification"] = classify_of(d);
  out["skt"] = skt_of(d);
  out["energy"] = to_double(dirichlet_energy(d, Mat<T>(standard_J<T>(s.n).J)));
  return out;
}

template <class F>
json dispatch(const AlgebraInput& in, F&& f) {
  json out = in.qspec ? f(*in.qspec) : f(in.fspec);
  out["input"] = in.echo;
  out["mode"] = in.mode == Mode::Exact ? "exact" : "float";
  out["tolerance"] = in.mode == Mode::Exact ? json(nullptr) : json(in.tolerance);
  return out;
}

void canonical(json& j) {
  if (j.is_number_float()) {
    double x = j.get<double>();
    if (!std::isfinite(x)) {
      j = nullptr;
      return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    x = std::strtod(buf, nullptr);
    j = (x == 0) ? 0.0 : x;
  } else if (j.is_structured()) {
    for (auto& v : j) canonical(v);
  }
}

}  // namespace

double parse_real(const json& v) {
  if (v.is_number()) {
    double x = v.get<double>();
    if (!std::isfinite(x)) fail(ErrorKind::InvalidInput, "non-finite number");
    return x;
  }
  if (v.is_string()) return real_from_string(v.get<std::string>());
  fail(ErrorKind::InvalidInput, "expected a number, got " + v.dump());
}

Rational parse_exact(const json& v) {
  if (v.is_number_integer()) return Rational(std::to_string(v.get<long long>()));
  if (v.is_number()) return rational_from_double_literal(v.get<double>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find("pi") != std::string::npos)
      fail(ErrorKind::InvalidInput, "exact mode needs rational entries; '" + s + "' is irrational");
    return parse_rational(s);
  }
  fail(ErrorKind::InvalidInput, "expected a number, got " + v.dump());
}

AlgebraInput parse_algebra(const json& j, double default_tol) {
  if (!j.is_object()) fail(ErrorKind::InvalidInput, "algebra input must be a JSON object");
  AlgebraInput in;
  in.echo = j;
  in.tolerance = j.contains("tolerance") ? parse_real(j["tolerance"]) : default_tol;
  if (!(in.tolerance > 0)) fail(ErrorKind::InvalidInput, "tolerance must be positive");
  std::string mode = j.value("mode", "float");
  if (mode == "exact")
    in.mode = Mode::Exact;
  else if (mode != "float")
    fail(ErrorKind::InvalidInput, "mode must be \"float\" or \"exact\"");
  try {
    if (in.mode == Mode::Exact) {
      in.qspec = spec_of<Rational>(j, in.tolerance);
      in.fspec = convert_spec<double>(*in.qspec);
    } else {
      in.fspec = spec_of<double>(j, in.tolerance);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed algebra input: ") + e.what());
  }
  return in;
}

json analyze(const AlgebraInput& in) {
  return dispatch(in, [](const auto& s) { return analyze_of(s); });
}

json classify(const AlgebraInput& in) {
  return dispatch(in, [](const auto& s) { return classify_of(decompose(s)); });
}

json harmonic(const AlgebraInput& in) {
  return dispatch(in, [](const auto& s) { return harmonic_of(decompose(s)); });
}

json skt(const AlgebraInput& in) {
  return dispatch(in, [](const auto& s) { return skt_of(decompose(s)); });
}

std::vector<BlockSpec> parse_blocks(const json& j) {
  const json& arr = j.is_object() && j.contains("blocks") ? j["blocks"] : j;
  if (!arr.is_array() || arr.empty()) fail(ErrorKind::InvalidInput, "blocks must be a nonempty array");
  std::vector<BlockSpec> out;
  try {
    for (const auto& b : arr) {
      const std::string kind = b.at("kind").get<std::string>();
      if (kind == "unipotent")
        out.push_back(BlockSpec::unipotent(b.at("size").get<int>(), b.contains("param") ? parse_exact(b["param"]) : Rational(1)));
      else if (kind == "hyperbolic")
        out.push_back(BlockSpec::hyperbolic(b.at("m").get<long long>()));
      else if (kind == "rotation")
        out.push_back(BlockSpec::rotation(parse_real(b.at("angle"))));
      else if (kind == "identity")
        out.push_back(BlockSpec::identity(b.value("size", 1)));
      else if (kind == "explicit")
        out.push_back(BlockSpec::explicit_block(parse_int_matrix(b.at("matrix"))));
      else
        fail(ErrorKind::InvalidInput, "unknown block kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed block: ") + e.what());
  }
  return out;
}

MatZ parse_int_matrix(const json& j) {
  const json& m = j.is_object() && j.contains("E") ? j["E"] : j;
  if (!m.is_array() || m.empty() || !m[0].is_array()) fail(ErrorKind::InvalidInput, "integer matrix must be an array of rows");
  MatZ E(m.size(), m[0].size());
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m[0].size()) fail(ErrorKind::InvalidInput, "integer matrix rows differ in length");
    for (size_t k = 0; k < m[i].size(); ++k) {
      if (!m[i][k].is_number_integer()) fail(ErrorKind::InvalidInput, "integer matrix has a non-integer entry");
      E(i, k) = m[i][k].get<long long>();
    }
  }
  return E;
}

json witness(const LatticeWitness& w) {
  json E = json::array();
  for (Eigen::Index i = 0; i < w.E.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < w.E.cols(); ++k) row.push_back(w.E(i, k));
    E.push_back(row);
  }
  json out = {{"t0", w.t0},
              {"E", E},
              {"det", w.det},
              {"in_SL", w.in_sl},
              {"charpoly_E", w.charpoly_E},
              {"charpoly_exp", w.charpoly_exp},
              {"charpoly_match", w.charpoly_match},
              {"evidence", w.evidence}};
  if (!w.family.empty()) out["family"] = w.family;
  if (w.det == 1 || w.det == -1) out["abelianization"] = abelianization(lattice_abelianization(w.E));
  return out;
}

json abelianization(const AbelianGroup& g) {
  return {{"rank", g.rank}, {"torsion", g.torsion}, {"group", g.describe()}};
}

json flow_result(const FlowResult& r, int start, std::uint64_t seed) {
  json out = {{"start", start},
              {"seed", seed},
              {"converged", r.converged},
              {"steps", r.final.step},
              {"halvings", r.rejected},
              {"energy_initial", r.initial_energy},
              {"energy_final", r.final.energy},
              {"grad_norm", r.final.grad_norm},
              {"report", r.report},
              {"J", mat_json(r.final.J)}};
  if (r.converged) {
    out["oracle"] = verdict_json(r.oracle);
    out["closed_form"] = verdict_json(r.closed_form);
  }
  return out;
}

CatalogParams parse_params(const json& j) {
  CatalogParams p;
  if (j.is_null()) return p;
  if (!j.is_object()) fail(ErrorKind::InvalidInput, "catalog parameters must be an object");
  if (j.contains("n")) p.n = j["n"].get<int>();
  if (j.contains("m")) p.m = j["m"].get<long long>();
  if (j.contains("a")) p.a = parse_real(j["a"]);
  if (j.contains("b")) p.b = parse_real(j["b"]);
  if (j.contains("mu")) p.mu = parse_real(j["mu"]);
  return p;
}

json entry_report(const EntryReport& r) {
  json fields = json::array();
  for (const auto& f : r.fields)
    fields.push_back({{"field", f.field}, {"expected", f.expected}, {"actual", f.actual}, {"pass", f.pass}});
  return {{"name", r.name}, {"notes", r.notes}, {"n", r.n}, {"L", mat_json(r.L)}, {"fields", fields}, {"pass", r.pass}};
}

json catalog_list() {
  json arr = json::array();
  for (const auto& e : catalog_entries()) arr.push_back({{"name", e.name}, {"notes", e.notes}});
  return arr;
}

std::string dump(const json& j) {
  json c = j;
  canonical(c);
  return c.dump(2) + "\n";
}

}  // namespace aah::io
