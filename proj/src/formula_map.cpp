#include "aah/formula_map.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace aah {

const std::vector<std::string>& mapped_operations() {
  static const std::vector<std::string> ops = {
      "decompose",           "standard_J",          "is_unimodular",          "bracket",
      "levi_civita",         "koszul_oracle",       "nijenhuis",              "d_omega",
      "delta_omega",         "nabla_omega",         "rough_laplacian",        "is_harmonic_general",
      "is_harmonic_unimodular", "is_harmonic_integrable", "is_harmonic_dim4", "is_harmonic_oracle",
      "atomic_predicates",   "classify",            "classify_oracle",        "is_skt",
      "skt_harmonic",        "skt_block_basis",     "exp_block",              "block_integer_witness",
      "assemble_witness",    "lattice_abelianization", "isomorphism_scale_check", "dirichlet_energy",
      "energy_gradient",     "run_flow",            "run_entry",
  };
  return ops;
}

namespace {

std::string trim(std::string s) {
  const char* ws = " \t\r`";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

MapCheck verify_map(std::string_view markdown) {
  const std::string text(markdown);
  const std::string begin = "<!-- formula-map:begin -->", end = "<!-- formula-map:end -->";
  std::map<std::string, int> seen;
  auto b = text.find(begin);
  auto e = text.find(end);
  if (b != std::string::npos && e != std::string::npos && e > b) {
    std::istringstream in(text.substr(b + begin.size(), e - b - begin.size()));
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty() || line[0] != '|') continue;
      ++row;
      if (row <= 2) continue;  // header and separator
      std::string cell = trim(line.substr(1, line.find('|', 1) - 1));
      if (!cell.empty()) ++seen[cell];
    }
  }
  MapCheck c;
  const auto& ops = mapped_operations();
  for (const auto& op : ops) {
    auto it = seen.find(op);
    if (it == seen.end())
      c.missing.push_back(op);
    else if (it->second > 1)
      c.duplicates.push_back(op);
  }
  for (const auto& [k, v] : seen)
    if (std::find(ops.begin(), ops.end(), k) == ops.end()) c.phantom.push_back(k);
  c.pass = c.missing.empty() && c.duplicates.empty() && c.phantom.empty();
  return c;
}

}  // namespace aah
