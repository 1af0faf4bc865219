#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace aah {

// Operations that implement a formula or statement with a source anchor; each must
// appear exactly once in the formula map table.
const std::vector<std::string>& mapped_operations();

struct MapCheck {
  bool pass = false;
  std::vector<std::string> missing, duplicates, phantom;
};

// Reads the table between <!-- formula-map:begin --> and <!-- formula-map:end -->;
// the first cell of each row is the operation name.
MapCheck verify_map(std::string_view markdown);

}  // namespace aah
