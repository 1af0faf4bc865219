#pragma once

#include "aah/algebra.hpp"

#include <string>
#include <utility>
#include <vector>

namespace aah {

enum class SktCase { NotApplicable, CaseI, CaseII, NotHarmonic };

const char* skt_case_name(SktCase c);

struct SktVerdict {
  bool skt = false;
  // "w0", "[D,J']", "[D,D^t]", "spectrum"; the last is ||Ds(Ds + mu/2)||, zero iff every
  // real part of spec D lies in {0, -mu/2} once D is normal.
  std::vector<std::pair<std::string, double>> reasons;
  std::vector<bool> clause_ok;
  std::vector<double> eigen_real_parts;  // ascending
  SktCase harmonic_case = SktCase::NotApplicable;

  double reason(const std::string& name) const;
};

template <class T>
SktVerdict is_skt(const Decomposition<T>& dec);

// Requires is_skt; throws Precondition naming the failed clause.
template <class T>
SktVerdict skt_harmonic(const Decomposition<T>& dec);

struct BlockBasis {
  MatD P;                                     // columns: orthonormal basis x1, J'x1, x2, J'x2, ... of a
  std::vector<std::pair<double, double>> ab;  // block i of P^t D P is [[a,-b],[b,a]]
  double reconstruction_error = 0;            // ||P blocks P^t - D||
  bool identity = false;
};

template <class T>
BlockBasis skt_block_basis(const Decomposition<T>& dec);

}  // namespace aah
