#pragma once

#include "aah/connection.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace aah {

// A class is a set of the irreducible components W1..W4; bit i-1 stands for Wi.
using GHClass = std::uint8_t;
inline constexpr GHClass kKaehler = 0;
inline constexpr GHClass kW1 = 1, kW2 = 2, kW3 = 4, kW4 = 8;
inline constexpr GHClass kW = 15;

std::string gh_name(GHClass c);  // "Kaehler", "W1", "W2+W3", "W"
GHClass gh_parse(const std::string& name);

// All 16 classes for n >= 3, the 4 of Table 2 for n = 2, in a fixed order.
std::vector<GHClass> gh_listed(int n);

struct AtomicPredicates {
  bool v = false, w = false, sym0 = false, au = false, su = false, sp = false, tr = false, homothety = false,
       conf_sp = false;
  std::vector<std::pair<std::string, double>> residuals;
};

struct ClassReport {
  int n = 0;
  std::vector<std::pair<GHClass, bool>> memberships;
  GHClass genuine = kW;
  std::vector<std::string> collapses;

  bool member(GHClass c) const;
};

template <class T>
AtomicPredicates atomic_predicates(const Decomposition<T>& dec);

template <class T>
ClassReport classify(const Decomposition<T>& dec);

// Memberships from the tensor definitions on basis triples; J arbitrary compatible.
template <class T>
ClassReport classify_oracle(const AlgebraSpec<T>& spec, const Mat<T>& J);

// classify, then classify_oracle with the standard J; Consistency error on any mismatch.
template <class T>
ClassReport classify_checked(const Decomposition<T>& dec);

// Minimal true class: intersection of the true classes, which must itself be true.
GHClass genuine_of(const std::vector<std::pair<GHClass, bool>>& memberships);

}  // namespace aah
