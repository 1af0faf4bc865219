#pragma once

#include <gmpxx.h>
#include <Eigen/Core>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

namespace Eigen {
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};
}  // namespace Eigen

namespace aah {

using Rational = mpq_class;

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using MatD = Mat<double>;
using VecD = Vec<double>;
using MatQ = Mat<Rational>;
using VecQ = Vec<Rational>;

enum class Mode { Float, Exact };

// Exactness is carried by the scalar type; the tolerance only matters for double.
struct ScalarContext {
  Mode mode = Mode::Float;
  double tolerance = 1e-9;
};

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& q) { return q.get_d(); }

template <class T>
T from_double(double x);

template <class T>
Mat<double> to_double(const Mat<T>& m) {
  Mat<double> r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = to_double(m(i, j));
  return r;
}

template <class T>
Vec<double> to_double(const Vec<T>& v) {
  Vec<double> r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = to_double(v(i));
  return r;
}

template <class T>
T ratio(long p, long q) {
  if constexpr (is_exact_v<T>) {
    Rational r(p, q);
    r.canonicalize();
    return r;
  } else {
    return static_cast<double>(p) / static_cast<double>(q);
  }
}

// "3", "-7/4", "0.125", "1e-3". Throws Error(InvalidInput) otherwise.
Rational parse_rational(std::string_view s);

// Shortest round-trip decimal of a double, then parsed exactly.
Rational rational_from_double_literal(double x);

std::string rational_to_string(const Rational& q);

// Frobenius norm as a double; exact sum of squares first for Rational.
template <class Derived>
double frob(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  if constexpr (is_exact_v<S>) {
    Rational s = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
    return std::sqrt(s.get_d());
  } else {
    return m.norm();
  }
}

template <class Derived>
bool all_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

// Zero test: exact for Rational, ||m|| <= tol for double.
template <class Derived>
bool vanishes(const Eigen::MatrixBase<Derived>& m, double tol) {
  using S = typename Derived::Scalar;
  if constexpr (is_exact_v<S>)
    return all_zero(m);
  else
    return m.norm() <= tol;
}

template <class T>
bool scalar_vanishes(const T& x, double tol) {
  if constexpr (is_exact_v<T>)
    return x == 0;
  else
    return std::abs(x) <= tol;
}

}  // namespace aah
