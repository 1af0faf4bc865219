#pragma once

#include "aah/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aah {

struct CatalogParams {
  int n = 3;                        // half-dimension for the families in dimension >= 6
  long long m = 3;                  // hyperbolic trace, a_m = log((m + sqrt(m^2-4))/2)
  double a = 1.5707963267948966;    // rotation angles
  double b = 1.5707963267948966;
  double mu = 1;                    // SKT family
};

struct FieldCheck {
  std::string field;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct EntryReport {
  std::string name;
  std::string notes;
  int n = 0;
  MatD L;
  std::vector<FieldCheck> fields;
  bool pass = false;
};

struct EntryInfo {
  std::string name;
  std::string notes;
};

std::vector<EntryInfo> catalog_entries();

// Lookup error listing the available names when name is unknown.
EntryReport run_entry(const std::string& name, const CatalogParams& p = {});

std::vector<EntryReport> run_all(const CatalogParams& p = {});

}  // namespace aah
