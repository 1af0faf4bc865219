#include "aah/lattice.hpp"
#include "aah/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace aah {

const char* block_kind_name(BlockKind k) {
  switch (k) {
    case BlockKind::Unipotent: return "unipotent";
    case BlockKind::Hyperbolic: return "hyperbolic";
    case BlockKind::Rotation: return "rotation";
    case BlockKind::Identity: return "identity";
    case BlockKind::Explicit: return "explicit";
  }
  return "?";
}

BlockSpec BlockSpec::unipotent(int k, Rational s) {
  BlockSpec b;
  b.kind = BlockKind::Unipotent;
  b.size = k;
  b.param = s;
  return b;
}

BlockSpec BlockSpec::hyperbolic(long long m) {
  BlockSpec b;
  b.kind = BlockKind::Hyperbolic;
  b.size = 2;
  b.m = m;
  return b;
}

BlockSpec BlockSpec::rotation(double theta) {
  BlockSpec b;
  b.kind = BlockKind::Rotation;
  b.size = 2;
  b.theta = theta;
  return b;
}

BlockSpec BlockSpec::identity(int k) {
  BlockSpec b;
  b.kind = BlockKind::Identity;
  b.size = k;
  return b;
}

BlockSpec BlockSpec::explicit_block(MatZ E) {
  BlockSpec b;
  b.kind = BlockKind::Explicit;
  b.size = static_cast<int>(E.rows());
  b.matrix = std::move(E);
  return b;
}

int BlockSpec::dim() const { return kind == BlockKind::Explicit ? static_cast<int>(matrix.rows()) : size; }

std::string BlockSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case BlockKind::Unipotent: os << "unipotent-" << size << "(" << rational_to_string(param) << ")"; break;
    case BlockKind::Hyperbolic: os << "hyperbolic(m=" << m << ")"; break;
    case BlockKind::Rotation: os << "rotation(" << theta << ")"; break;
    case BlockKind::Identity: os << "identity-" << size; break;
    case BlockKind::Explicit: os << "explicit-" << matrix.rows(); break;
  }
  return os.str();
}

namespace {

constexpr double kPi = std::numbers::pi;

struct AngleRow {
  double theta;
  const char* name;
  long long trace;  // 2 cos θ
  double sin;
  long long e[4];   // row-major integer witness
};

const AngleRow kAngles[] = {
    {2 * kPi, "2pi", 2, 0.0, {1, 0, 0, 1}},
    {kPi, "pi", -2, 0.0, {-1, 0, 0, -1}},
    {2 * kPi / 3, "2pi/3", -1, std::sqrt(3.0) / 2, {0, -1, 1, -1}},
    {kPi / 2, "pi/2", 0, 1.0, {0, -1, 1, 0}},
    {kPi / 3, "pi/3", 1, std::sqrt(3.0) / 2, {0, -1, 1, 1}},
};

const AngleRow* find_angle(double theta) {
  for (const auto& r : kAngles)
    if (std::abs(theta - r.theta) <= 1e-12 * std::max(1.0, std::abs(theta))) return &r;
  return nullptr;
}

void check_block(const BlockSpec& b) {
  if (b.kind == BlockKind::Hyperbolic && b.m < 3)
    fail(ErrorKind::InvalidInput, "hyperbolic block needs an integer trace m >= 3, got " + std::to_string(b.m));
  if ((b.kind == BlockKind::Unipotent || b.kind == BlockKind::Identity) && b.size < 1)
    fail(ErrorKind::InvalidInput, "block size must be positive");
  if (b.kind == BlockKind::Explicit && (b.matrix.rows() != b.matrix.cols() || b.matrix.rows() == 0))
    fail(ErrorKind::InvalidInput, "explicit block must be a nonempty square integer matrix");
}

// (x - 1)^k, ascending
std::vector<long long> unipotent_poly(int k) {
  std::vector<long long> c(k + 1);
  long long binom = 1;
  for (int j = 0; j <= k; ++j) {
    c[j] = ((k - j) % 2 ? -1 : 1) * binom;
    binom = binom * (k - j) / (j + 1);
  }
  return c;
}

long long to_ll(const mpz_class& z) {
  if (!z.fits_slong_p()) fail(ErrorKind::InvalidInput, "integer overflow: " + z.get_str());
  return z.get_si();
}

long long mul_chk(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::InvalidInput, "integer overflow in Smith normal form");
  return r;
}

long long sub_chk(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::InvalidInput, "integer overflow in Smith normal form");
  return r;
}

long long add_chk(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::InvalidInput, "integer overflow in Smith normal form");
  return r;
}

MatQ to_q(const MatZ& E) {
  MatQ Q(E.rows(), E.cols());
  for (Eigen::Index i = 0; i < E.rows(); ++i)
    for (Eigen::Index j = 0; j < E.cols(); ++j) Q(i, j) = Rational(static_cast<long>(E(i, j)));
  return Q;
}

// Faddeev–LeVerrier; ascending coefficients of det(xI - A).
template <class T>
std::vector<T> charpoly_fl(const Mat<T>& A) {
  const Eigen::Index k = A.rows();
  std::vector<T> c(k + 1, T(0));
  c[k] = T(1);
  Mat<T> Mk = Mat<T>::Zero(k, k);
  for (Eigen::Index j = 1; j <= k; ++j) {
    Mk = A * Mk + Mat<T>::Identity(k, k) * c[k - j + 1];
    Mat<T> AM = A * Mk;
    c[k - j] = -AM.trace() / T(static_cast<long>(j));
  }
  return c;
}

int rank_exact(MatQ M) {
  int r = 0;
  const Eigen::Index rows = M.rows(), cols = M.cols();
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (M(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    M.row(p).swap(M.row(r));
    for (Eigen::Index i = r + 1; i < rows; ++i)
      if (M(i, c) != 0) {
        Rational f = M(i, c) / M(r, c);
        for (Eigen::Index j = c; j < cols; ++j) M(i, j) -= f * M(r, j);
      }
    ++r;
  }
  return r;
}

int rank_float(const MatD& M, double tol) {
  Eigen::JacobiSVD<MatD> svd(M);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return r;
}

// Matrix of X -> AX - XB on column-stacked X.
template <class T>
Mat<T> sylvester_op(const Mat<T>& A, const Mat<T>& B) {
  const Eigen::Index k = A.rows();
  Mat<T> Op = Mat<T>::Zero(k * k, k * k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < k; ++i) {
      // row index of X(i,j) is j*k + i
      for (Eigen::Index l = 0; l < k; ++l) {
        Op(j * k + i, j * k + l) += A(i, l);   // (AX)(i,j) = Σ_l A(i,l) X(l,j)
        Op(j * k + i, l * k + i) -= B(l, j);   // (XB)(i,j) = Σ_l X(i,l) B(l,j)
      }
    }
  return Op;
}

}  // namespace

std::vector<long long> charpoly_int(const MatZ& E) {
  std::vector<Rational> c = charpoly_fl(to_q(E));
  std::vector<long long> out;
  for (auto& q : c) {
    if (q.get_den() != 1) fail(ErrorKind::Consistency, "non-integer characteristic polynomial of an integer matrix");
    out.push_back(to_ll(q.get_num()));
  }
  return out;
}

long long det_int(const MatZ& E) {
  // Bareiss fraction-free elimination
  const Eigen::Index k = E.rows();
  if (k == 0) return 1;
  std::vector<std::vector<mpz_class>> a(k, std::vector<mpz_class>(k));
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) a[i][j] = static_cast<long>(E(i, j));
  mpz_class prev = 1;
  int sign = 1;
  for (Eigen::Index p = 0; p + 1 < k; ++p) {
    if (a[p][p] == 0) {
      Eigen::Index s = p + 1;
      while (s < k && a[s][p] == 0) ++s;
      if (s == k) return 0;
      std::swap(a[p], a[s]);
      sign = -sign;
    }
    for (Eigen::Index i = p + 1; i < k; ++i)
      for (Eigen::Index j = p + 1; j < k; ++j) a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
    prev = a[p][p];
  }
  return sign * to_ll(a[k - 1][k - 1]);
}

BlockExp exp_block(const BlockSpec& b) {
  check_block(b);
  BlockExp out;
  switch (b.kind) {
    case BlockKind::Unipotent: {
      MatQ M = MatQ::Zero(b.size, b.size);
      Rational term = 1;
      for (int j = 0; j < b.size; ++j) {
        for (int i = 0; i + j < b.size; ++i) M(i, i + j) = term;
        term = term * b.param / Rational(j + 1);
      }
      out.M = to_double(M);
      out.charpoly = unipotent_poly(b.size);
      break;
    }
    case BlockKind::Identity:
      out.M = MatD::Identity(b.size, b.size);
      out.charpoly = unipotent_poly(b.size);
      break;
    case BlockKind::Hyperbolic: {
      const double md = static_cast<double>(b.m);
      const double t = std::log((md + std::sqrt(md * md - 4)) / 2);
      out.M.resize(2, 2);
      out.M << std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t);
      out.charpoly = {1, -b.m, 1};
      break;
    }
    case BlockKind::Rotation: {
      out.M.resize(2, 2);
      if (const AngleRow* r = find_angle(b.theta)) {
        const double c = r->trace / 2.0, s = r->sin;
        out.M << c, -s, s, c;
        out.charpoly = {1, -r->trace, 1};
      } else {
        out.M << std::cos(b.theta), -std::sin(b.theta), std::sin(b.theta), std::cos(b.theta);
      }
      break;
    }
    case BlockKind::Explicit:
      out.M = b.matrix.cast<double>();
      out.charpoly = charpoly_int(b.matrix);
      break;
  }
  return out;
}

BlockWitness block_integer_witness(const BlockSpec& b) {
  check_block(b);
  BlockWitness w;
  switch (b.kind) {
    case BlockKind::Unipotent:
      w.E = MatZ::Identity(b.size, b.size);
      if (b.param != 0) {
        for (int i = 0; i + 1 < b.size; ++i) w.E(i, i + 1) = 1;
        w.evidence = "single Jordan block of eigenvalue 1 and size " + std::to_string(b.size) + " on both sides";
      } else {
        w.evidence = "parameter 0: exp is the identity";
      }
      break;
    case BlockKind::Identity:
      w.E = MatZ::Identity(b.size, b.size);
      w.evidence = "identity";
      break;
    case BlockKind::Hyperbolic:
      w.E.resize(2, 2);
      w.E << 0, -1, 1, b.m;
      w.evidence = "same char poly x^2 - " + std::to_string(b.m) + "x + 1, distinct real roots => conjugate";
      break;
    case BlockKind::Rotation: {
      const AngleRow* r = find_angle(b.theta);
      if (!r) {
        std::ostringstream os;
        os << "no integer witness for rotation angle " << b.theta
           << "; only 2pi, pi, 2pi/3, pi/2, pi/3 give an integer conjugate";
        fail(ErrorKind::NoWitness, os.str());
      }
      w.E.resize(2, 2);
      w.E << r->e[0], r->e[1], r->e[2], r->e[3];
      if (r->trace == 2 || r->trace == -2)
        w.evidence = std::string("rotation by ") + r->name + " is " + (r->trace == 2 ? "I" : "-I");
      else
        w.evidence = std::string("rotation by ") + r->name + ": same char poly x^2 - (" + std::to_string(r->trace) +
                     ")x + 1, distinct complex roots => conjugate";
      break;
    }
    case BlockKind::Explicit:
      w.E = b.matrix;
      w.evidence = "exp of the block is this integer matrix";
      break;
  }
  return w;
}

LatticeWitness assemble_witness(const std::vector<BlockSpec>& blocks) {
  if (blocks.empty()) fail(ErrorKind::InvalidInput, "assemble_witness needs at least one block");
  int m = 0;
  for (const auto& b : blocks) m += b.dim();
  LatticeWitness lw;
  lw.E = MatZ::Zero(m, m);
  lw.t0 = "1";
  std::vector<long long> cp_exp{1};
  int off = 0;
  bool hyper = false;
  for (const auto& b : blocks) {
    BlockWitness w = block_integer_witness(b);
    BlockExp e = exp_block(b);
    const int k = b.dim();
    lw.E.block(off, off, k, k) = w.E;
    lw.evidence.push_back(b.describe() + ": " + w.evidence);
    // product of block char polys
    std::vector<long long> prod(cp_exp.size() + e.charpoly.size() - 1, 0);
    for (size_t i = 0; i < cp_exp.size(); ++i)
      for (size_t j = 0; j < e.charpoly.size(); ++j)
        prod[i + j] = add_chk(prod[i + j], mul_chk(cp_exp[i], e.charpoly[j]));
    cp_exp = std::move(prod);
    hyper = hyper || b.kind == BlockKind::Hyperbolic;
    off += k;
  }
  if (hyper) {
    lw.t0 = "t_m = log((m + sqrt(m^2 - 4))/2) on hyperbolic blocks";
    lw.family = "one lattice for each admissible hyperbolic trace m >= 3";
  }
  lw.det = det_int(lw.E);
  lw.in_sl = lw.det == 1;
  lw.charpoly_E = charpoly_int(lw.E);
  lw.charpoly_exp = cp_exp;
  lw.charpoly_match = lw.charpoly_E == lw.charpoly_exp;
  if (!lw.in_sl) lw.evidence.push_back("det E = " + std::to_string(lw.det) + ": not in SL(m,Z), no lattice claimed");
  return lw;
}

SmithForm smith_normal_form(const MatZ& M) {
  const Eigen::Index r = M.rows(), c = M.cols();
  SmithForm f;
  f.S = M;
  f.U = MatZ::Identity(r, r);
  f.V = MatZ::Identity(c, c);
  MatZ& S = f.S;
  auto row_axpy = [&](Eigen::Index dst, Eigen::Index src, long long q) {  // row dst -= q row src
    for (Eigen::Index j = 0; j < c; ++j) S(dst, j) = sub_chk(S(dst, j), mul_chk(q, S(src, j)));
    for (Eigen::Index j = 0; j < r; ++j) f.U(dst, j) = sub_chk(f.U(dst, j), mul_chk(q, f.U(src, j)));
  };
  auto col_axpy = [&](Eigen::Index dst, Eigen::Index src, long long q) {
    for (Eigen::Index i = 0; i < r; ++i) S(i, dst) = sub_chk(S(i, dst), mul_chk(q, S(i, src)));
    for (Eigen::Index i = 0; i < c; ++i) f.V(i, dst) = sub_chk(f.V(i, dst), mul_chk(q, f.V(i, src)));
  };
  const Eigen::Index k = std::min(r, c);
  for (Eigen::Index t = 0; t < k; ++t) {
    for (;;) {
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = t; i < r; ++i)
        for (Eigen::Index j = t; j < c; ++j)
          if (S(i, j) != 0 && (pi < 0 || std::llabs(S(i, j)) < std::llabs(S(pi, pj)))) pi = i, pj = j;
      if (pi < 0) goto done;
      if (pi != t) {
        S.row(pi).swap(S.row(t));
        f.U.row(pi).swap(f.U.row(t));
      }
      if (pj != t) {
        S.col(pj).swap(S.col(t));
        f.V.col(pj).swap(f.V.col(t));
      }
      bool clean = true;
      for (Eigen::Index i = t + 1; i < r; ++i) {
        row_axpy(i, t, S(i, t) / S(t, t));
        clean = clean && S(i, t) == 0;
      }
      for (Eigen::Index j = t + 1; j < c; ++j) {
        col_axpy(j, t, S(t, j) / S(t, t));
        clean = clean && S(t, j) == 0;
      }
      if (!clean) continue;
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < r && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < c; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_axpy(t, bad, -1);
    }
    if (S(t, t) < 0) {
      S.row(t) *= -1;
      f.U.row(t) *= -1;
    }
  }
done:
  for (Eigen::Index t = 0; t < k; ++t) f.factors.push_back(S(t, t));
  return f;
}

std::string AbelianGroup::describe() const {
  std::ostringstream os;
  os << "Z";
  if (rank != 1) os << "^" << rank;
  for (size_t i = 0; i < torsion.size();) {
    size_t j = i;
    while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
    os << " + Z_" << torsion[i];
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

AbelianGroup lattice_abelianization(const MatZ& E) {
  if (E.rows() != E.cols()) fail(ErrorKind::InvalidInput, "E must be square");
  const long long d = det_int(E);
  if (d != 1 && d != -1) fail(ErrorKind::InvalidInput, "E must have det +-1, got " + std::to_string(d));
  MatZ A = E - MatZ::Identity(E.rows(), E.cols());
  SmithForm f = smith_normal_form(A);
  AbelianGroup g;
  g.rank = 1;
  for (long long x : f.factors) {
    if (x == 0)
      ++g.rank;
    else if (x > 1)
      g.torsion.push_back(x);
  }
  return g;
}

bool isomorphism_scale_check(const MatQ& L1, const MatQ& L2, const Rational& c) {
  if (L1.rows() != L2.rows() || L1.rows() != L1.cols() || L2.rows() != L2.cols())
    fail(ErrorKind::InvalidInput, "isomorphism_scale_check needs square matrices of equal size");
  MatQ A = L1 * c;
  if (charpoly_fl(A) != charpoly_fl(L2)) return false;
  int kAA = rank_exact(sylvester_op(A, A));
  int kAB = rank_exact(sylvester_op(A, L2));
  int kBB = rank_exact(sylvester_op(L2, L2));
  return kAA == kAB && kAB == kBB;
}

bool isomorphism_scale_check(const MatD& L1, const MatD& L2, double c, double tol) {
  if (L1.rows() != L2.rows() || L1.rows() != L1.cols() || L2.rows() != L2.cols())
    fail(ErrorKind::InvalidInput, "isomorphism_scale_check needs square matrices of equal size");
  MatD A = L1 * c;
  const double scale = std::max({1.0, A.norm(), L2.norm()});
  std::vector<double> pa = charpoly_fl(A), pb = charpoly_fl(L2);
  for (size_t i = 0; i < pa.size(); ++i)
    if (std::abs(pa[i] - pb[i]) > tol * std::pow(scale, static_cast<double>(pa.size() - 1 - i))) return false;
  const double rt = tol * scale;
  int kAA = rank_float(sylvester_op(A, A), rt);
  int kAB = rank_float(sylvester_op(A, L2), rt);
  int kBB = rank_float(sylvester_op(L2, L2), rt);
  return kAA == kAB && kAB == kBB;
}

}  // namespace aah
