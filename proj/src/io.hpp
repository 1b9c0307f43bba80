#pragma once

#include <optional>
#include <string>

#include "exponents.hpp"
#include "grid.hpp"

namespace vexp {

// Builds an exponent field from its JSON spec:
//   {"kind": "constant", "value": 2.0}
//   {"kind": "affine", "a": 2.0, "b": 1.0, "lo": 2.0, "hi": 3.0}
//   {"kind": "table", "values": [...]}
//   {"kind": "random", "lo": 1.5, "hi": 3.0, "bandwidth": 4, "seed": 7}
// Infinite exponents are written as the JSON string "inf".
ExponentField field_from_json(const Grid& grid, const std::string& spec_json,
                              std::optional<double> class_floor);

// GridFunction CSV: one value per line, complex entries as "re,im".
GridFunction load_grid_function(const Grid& grid, const std::string& path);
void save_grid_function(const GridFunction& f, const std::string& path);

// FuncSequence CSV: either a single file with one column per term, or a
// directory of per-term files named term_0001.csv, term_0002.csv, ...
FuncSequence load_func_sequence(const Grid& grid, const std::string& path);
void save_func_sequence(const FuncSequence& f, const std::string& path);

struct RunConfig {
  double grid_half_length = 2.0;
  int grid_points = 1024;
  std::string p_spec = R"({"kind":"constant","value":2.0})";
  std::string q_spec = R"({"kind":"constant","value":2.0})";
  std::string s_spec;  // empty means s = 0
  double tol_inner = 1e-10;
  double tol_outer = 1e-8;
  std::uint64_t seed = 42;
  int samples = 50;
  std::vector<std::string> suites{"all"};
  std::string mutate = "none";
};

RunConfig config_from_json(const std::string& json_text);
RunConfig load_config(const std::string& path);

}  // namespace vexp
