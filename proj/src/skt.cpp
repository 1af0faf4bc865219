#include "aah/skt.hpp"
#include "aah/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aah {

const char* skt_case_name(SktCase c) {
  switch (c) {
    case SktCase::NotApplicable: return "not-applicable";
    case SktCase::CaseI: return "case-i";
    case SktCase::CaseII: return "case-ii";
    case SktCase::NotHarmonic: return "not-harmonic";
  }
  return "?";
}

double SktVerdict::reason(const std::string& name) const {
  for (const auto& [k, v] : reasons)
    if (k == name) return v;
  fail(ErrorKind::Lookup, "no SKT residual named " + name);
}

namespace {

struct Clause {
  const char* name;
  int degree;
};
constexpr Clause kClauses[] = {{"w0", 1}, {"[D,J']", 1}, {"[D,D^t]", 2}, {"spectrum", 2}};

// Groups of consecutive sorted values whose neighbour gaps are <= tol.
std::vector<std::pair<int, int>> clusters(const VecD& sorted, double tol) {
  std::vector<std::pair<int, int>> out;
  int start = 0;
  for (int i = 1; i <= sorted.size(); ++i)
    if (i == sorted.size() || sorted(i) - sorted(i - 1) > tol) {
      out.emplace_back(start, i);
      start = i;
    }
  return out;
}

double min_gap(const VecD& sorted) {
  double g = INFINITY;
  for (int i = 1; i < sorted.size(); ++i) g = std::min(g, sorted(i) - sorted(i - 1));
  return g;
}

bool already_blocked(const MatD& D, double tol) {
  const int m = static_cast<int>(D.rows());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i / 2 != j / 2 && std::abs(D(i, j)) > tol) return false;
  for (int k = 0; k < m; k += 2)
    if (std::abs(D(k, k) - D(k + 1, k + 1)) > tol || std::abs(D(k, k + 1) + D(k + 1, k)) > tol) return false;
  return true;
}

BlockBasis block_basis_double(const Decomposition<double>& dec) {
  const int m = static_cast<int>(dec.D.rows());
  const MatD Jp = standard_J<double>(dec.n).Jprime;
  const MatD& D = dec.D;
  BlockBasis out;
  if (already_blocked(D, dec.tol(1))) {
    out.P = MatD::Identity(m, m);
    out.identity = true;
  } else {
    const double ctol = std::sqrt(dec.tolerance) * dec.scale;
    MatD K = -Jp * dec.Da;  // symmetric because Da commutes with J'
    K = (K + K.transpose()) / 2;
    Eigen::SelfAdjointEigenSolver<MatD> es(dec.Ds);
    out.P = MatD::Zero(m, m);
    int filled = 0;
    for (auto [s0, s1] : clusters(es.eigenvalues(), ctol)) {
      MatD Q = es.eigenvectors().middleCols(s0, s1 - s0);
      MatD Kq = Q.transpose() * K * Q;
      Eigen::SelfAdjointEigenSolver<MatD> ek((Kq + Kq.transpose()) / 2);
      for (auto [k0, k1] : clusters(ek.eigenvalues(), ctol)) {
        if ((k1 - k0) % 2 != 0) {
          std::ostringstream os;
          os << "odd-dimensional joint eigenspace of (Ds, J'Da); smallest eigenvalue gap "
             << std::min(min_gap(es.eigenvalues()), min_gap(ek.eigenvalues())) << " vs clustering tolerance " << ctol;
          fail(ErrorKind::Degenerate, os.str());
        }
        MatD V = Q * ek.eigenvectors().middleCols(k0, k1 - k0);
        const int base = filled;
        for (int c = 0; c < V.cols() && filled - base < V.cols(); ++c) {
          VecD r = V.col(c);
          for (int b = base; b < filled; ++b) r -= out.P.col(b).dot(r) * out.P.col(b);
          if (r.norm() < 0.5) continue;
          r.normalize();
          out.P.col(filled++) = r;
          out.P.col(filled++) = Jp * r;
        }
        if (filled - base != V.cols()) fail(ErrorKind::Degenerate, "joint eigenspace is not J'-invariant within tolerance");
      }
    }
  }
  MatD B = MatD::Zero(m, m);
  for (int k = 0; k < m; k += 2) {
    VecD x = out.P.col(k), y = out.P.col(k + 1);
    double a = x.dot(D * x), b = y.dot(D * x);
    out.ab.emplace_back(a, b);
    B(k, k) = B(k + 1, k + 1) = a;
    B(k + 1, k) = b;
    B(k, k + 1) = -b;
  }
  out.reconstruction_error = (out.P * B * out.P.transpose() - D).norm();
  return out;
}

template <class T>
SktVerdict clauses(const Decomposition<T>& dec) {
  const Mat<T> Jp = standard_J<T>(dec.n).Jprime;
  const Mat<T>& D = dec.D;
  const Eigen::Index m = D.rows();
  Mat<T> comm = D * Jp - Jp * D;
  Mat<T> normal = D * D.transpose() - D.transpose() * D;
  Mat<T> spec = dec.Ds * (dec.Ds + Mat<T>::Identity(m, m) * (dec.mu * ratio<T>(1, 2)));
  SktVerdict v;
  v.reasons = {{kClauses[0].name, frob(dec.w0)},
               {kClauses[1].name, frob(comm)},
               {kClauses[2].name, frob(normal)},
               {kClauses[3].name, frob(spec)}};
  v.clause_ok = {vanishes(dec.w0, dec.tol(kClauses[0].degree)), vanishes(comm, dec.tol(kClauses[1].degree)),
                 vanishes(normal, dec.tol(kClauses[2].degree)), vanishes(spec, dec.tol(kClauses[3].degree))};
  v.skt = std::all_of(v.clause_ok.begin(), v.clause_ok.end(), [](bool b) { return b; });
  return v;
}

void require_skt(const SktVerdict& v, const char* who) {
  if (v.skt) return;
  for (size_t i = 0; i < v.reasons.size(); ++i)
    if (!v.clause_ok[i]) {
      std::ostringstream os;
      os << who << " requires an SKT structure; clause " << v.reasons[i].first << " fails with residual "
         << v.reasons[i].second;
      fail(ErrorKind::Precondition, os.str());
    }
}

}  // namespace

template <class T>
SktVerdict is_skt(const Decomposition<T>& dec) {
  const Eigen::Index m = dec.D.rows();
  SktVerdict v = clauses(dec);

  bool from_blocks = false;
  if (v.skt && m > 0) {
    try {
      BlockBasis bb = skt_block_basis(dec);
      for (auto [a, b] : bb.ab) v.eigen_real_parts.insert(v.eigen_real_parts.end(), {a, a});
      from_blocks = true;
    } catch (const Error&) {
    }
  }
  if (!from_blocks && m > 0) {
    Eigen::EigenSolver<MatD> es(to_double(dec.D), false);
    for (Eigen::Index i = 0; i < m; ++i) v.eigen_real_parts.push_back(es.eigenvalues()(i).real());
  }
  std::sort(v.eigen_real_parts.begin(), v.eigen_real_parts.end());
  return v;
}

template <class T>
SktVerdict skt_harmonic(const Decomposition<T>& dec) {
  SktVerdict v = is_skt(dec);
  require_skt(v, "skt_harmonic");
  const double t = dec.tol(1);
  const bool v0_zero = vanishes(dec.v0, t);
  if (v0_zero)
    v.harmonic_case = SktCase::CaseI;
  else if (vanishes(dec.Ds, t) && vanishes(Vec<T>(dec.D * dec.v0), dec.tol(2)))
    v.harmonic_case = SktCase::CaseII;
  else
    v.harmonic_case = SktCase::NotHarmonic;

  if (scalar_vanishes(T(dec.L.trace()), t)) {
    std::ostringstream os;
    if (v.harmonic_case == SktCase::CaseI && !scalar_vanishes(dec.mu, t)) {
      // real parts -mu/2 come in pairs; Tr D = -mu forces exactly one such block
      T k = -dec.D.trace() / dec.mu;
      if (!scalar_vanishes(T(k - T(1)), t)) {
        os << "unimodular SKT case (i): expected one block with real part -mu/2, Tr D/(-mu) = " << to_double(k);
        fail(ErrorKind::Consistency, os.str());
      }
    } else if (v.harmonic_case == SktCase::CaseI && !vanishes(dec.Ds, t)) {
      os << "unimodular SKT case (i) with mu = 0 must have Ds = 0, ||Ds|| = " << frob(dec.Ds);
      fail(ErrorKind::Consistency, os.str());
    } else if (v.harmonic_case == SktCase::CaseII && !scalar_vanishes(dec.mu, t)) {
      os << "unimodular SKT case (ii) must have mu = 0, mu = " << to_double(dec.mu);
      fail(ErrorKind::Consistency, os.str());
    }
  }
  return v;
}

template <class T>
BlockBasis skt_block_basis(const Decomposition<T>& dec) {
  SktVerdict v = clauses(dec);
  require_skt(v, "skt_block_basis");
  if constexpr (is_exact_v<T>) {
    AlgebraSpec<double> s = AlgebraSpec<double>::from_matrix(dec.n, to_double(dec.L), dec.tolerance);
    return block_basis_double(decompose(s));
  } else {
    return block_basis_double(dec);
  }
}

#define AAH_INSTANTIATE(T)                                         \
  template SktVerdict is_skt<T>(const Decomposition<T>&);          \
  template SktVerdict skt_harmonic<T>(const Decomposition<T>&);    \
  template BlockBasis skt_block_basis<T>(const Decomposition<T>&);

AAH_INSTANTIATE(double)
AAH_INSTANTIATE(Rational)

}  // namespace aah
