#pragma once

#include "aah/connection.hpp"

#include <string>
#include <utility>
#include <vector>

namespace aah {

enum class HarmonicMethod { General, Unimodular, Integrable, Dim4, Oracle };

const char* method_name(HarmonicMethod m);

struct HarmonicVerdict {
  bool harmonic = false;
  HarmonicMethod method = HarmonicMethod::General;
  std::vector<std::pair<std::string, double>> residuals;  // insertion order is report order
  double threshold = 0;                                   // 0 in exact mode

  double residual(const std::string& name) const;
};

// (i)  μγ + Dsγ - (Tr S)ρ - J'DaJ'ρ
template <class T>
Vec<T> condition_i(const Decomposition<T>& dec);

// (ii) DaJ'DaJ' - J'DaJ'Da + (Tr S)[Da,J']J'
template <class T>
Mat<T> condition_ii(const Decomposition<T>& dec);

template <class T>
HarmonicVerdict is_harmonic_general(const Decomposition<T>& dec);

template <class T>
HarmonicVerdict is_harmonic_unimodular(const Decomposition<T>& dec);

template <class T>
HarmonicVerdict is_harmonic_integrable(const Decomposition<T>& dec);

template <class T>
HarmonicVerdict is_harmonic_dim4(const Decomposition<T>& dec);

// ||[J, ∇*∇J]|| with the standard J; the reference verdict.
template <class T>
HarmonicVerdict is_harmonic_oracle(const Decomposition<T>& dec);

// Same, for an arbitrary compatible J on the same metric algebra.
HarmonicVerdict is_harmonic_oracle(const Decomposition<double>& dec, const MatD& J);

template <class T>
bool is_integrable(const Decomposition<T>& dec);

// General verdict checked against the oracle; throws Consistency on a real disagreement.
template <class T>
HarmonicVerdict harmonic_cross_checked(const Decomposition<T>& dec);

// Every method whose precondition holds, oracle last.
template <class T>
std::vector<HarmonicVerdict> all_harmonic_verdicts(const Decomposition<T>& dec);

}  // namespace aah
