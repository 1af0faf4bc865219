#pragma once

// JSON in/out shared by the C API. Private to the library.

#include "aah/algebra.hpp"
#include "aah/catalog.hpp"
#include "aah/energy_flow.hpp"
#include "aah/lattice.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace aah::io {

using json = nlohmann::json;

struct AlgebraInput {
  Mode mode = Mode::Float;
  double tolerance = 1e-9;
  AlgebraSpec<double> fspec;
  std::optional<AlgebraSpec<Rational>> qspec;  // exact mode only
  json echo;
};

// "3", "-7/4", "0.5", "1e-3"; in float mode also "pi", "-2pi/3", "3*pi/4".
double parse_real(const json& v);
Rational parse_exact(const json& v);

AlgebraInput parse_algebra(const json& j, double default_tol);

json analyze(const AlgebraInput& in);
json classify(const AlgebraInput& in);
json harmonic(const AlgebraInput& in);
json skt(const AlgebraInput& in);

std::vector<BlockSpec> parse_blocks(const json& j);
json witness(const LatticeWitness& w);
MatZ parse_int_matrix(const json& j);
json abelianization(const AbelianGroup& g);

json flow_result(const FlowResult& r, int start, std::uint64_t seed);

CatalogParams parse_params(const json& j);
json entry_report(const EntryReport& r);
json catalog_list();

// Sorted keys, doubles rounded to 12 significant digits, -0 -> 0, non-finite -> null.
std::string dump(const json& j);

}  // namespace aah::io
