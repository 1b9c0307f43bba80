#include "io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vexp {

namespace {

using nlohmann::json;

double number_or_inf(const json& v, const char* what) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return kInfExponent;
    throw Error(ErrorCode::Config,
                std::string(what) + ": only \"inf\" is accepted as a string");
  }
  if (!v.is_number())
    throw Error(ErrorCode::Config, std::string(what) + ": expected a number");
  return v.get<double>();
}

json parse(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorCode::Config, std::string(what) + ": invalid JSON");
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

ExponentField field_from_json(const Grid& grid, const std::string& spec_json,
                              std::optional<double> class_floor) {
  const json j = parse(spec_json, "exponent spec");
  const std::string kind = j.value("kind", "");
  if (kind == "constant") {
    return ExponentField::constant(grid, number_or_inf(j.at("value"), "value"),
                                   class_floor);
  }
  if (kind == "affine") {
    return ExponentField::affine(grid, j.at("a").get<double>(),
                                 j.at("b").get<double>(),
                                 j.at("lo").get<double>(),
                                 j.at("hi").get<double>(), class_floor);
  }
  if (kind == "table") {
    const auto& arr = j.at("values");
    if (!arr.is_array())
      throw Error(ErrorCode::Config, "table spec: values must be an array");
    std::vector<double> v;
    v.reserve(arr.size());
    for (const auto& e : arr) v.push_back(number_or_inf(e, "table entry"));
    return ExponentField(grid, std::move(v), class_floor);
  }
  if (kind == "random") {
    return random_log_holder(grid, j.at("lo").get<double>(),
                             j.at("hi").get<double>(),
                             j.at("bandwidth").get<int>(),
                             j.at("seed").get<std::uint64_t>());
  }
  throw Error(ErrorCode::Config, "unknown exponent spec kind: '" + kind + "'");
}

GridFunction load_grid_function(const Grid& grid, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::vector<double> re, im;
  bool complex_seen = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double a = 0.0, b = 0.0;
    if (std::sscanf(line.c_str(), "%lf,%lf", &a, &b) == 2) {
      complex_seen = true;
    } else if (std::sscanf(line.c_str(), "%lf", &a) != 1) {
      throw Error(ErrorCode::Io, path + ": bad CSV line '" + line + "'");
    }
    re.push_back(a);
    im.push_back(b);
  }
  if (!complex_seen) im.clear();
  return GridFunction(grid, std::move(re), std::move(im));
}

void save_grid_function(const GridFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  char buf[80];
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.is_real())
      std::snprintf(buf, sizeof buf, "%.17g\n", f.re()[i]);
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.re()[i], f.im()[i]);
    out << buf;
  }
}

FuncSequence load_func_sequence(const Grid& grid, const std::string& path) {
  namespace fs = std::filesystem;
  FuncSequence seq(grid);
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path))
      if (e.path().extension() == ".csv") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
      throw Error(ErrorCode::Io, path + ": no term_*.csv files");
    for (const auto& f : files)
      seq.push_back(load_grid_function(grid, f.string()));
    return seq;
  }

  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::vector<std::vector<double>> columns;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (columns.size() <= col) columns.emplace_back();
      try {
        columns[col].push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(ErrorCode::Io, path + ": bad CSV cell '" + cell + "'");
      }
      ++col;
    }
    ++row;
  }
  for (auto& c : columns) {
    if (c.size() != static_cast<std::size_t>(grid.n_points()))
      throw Error(ErrorCode::GridMismatch,
                  path + ": column length does not match grid");
    seq.push_back(GridFunction(grid, std::move(c)));
  }
  return seq;
}

void save_func_sequence(const FuncSequence& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  char buf[48];
  for (int i = 0; i < f.grid().n_points(); ++i) {
    for (std::size_t nu = 0; nu < f.size(); ++nu) {
      std::snprintf(buf, sizeof buf, "%.17g", f.term(nu).re()[i]);
      out << (nu ? "," : "") << buf;
    }
    out << "\n";
  }
}

RunConfig config_from_json(const std::string& text) {
  const json j = parse(text, "config");
  RunConfig c;
  if (j.contains("grid")) {
    c.grid_half_length = j["grid"].value("L", c.grid_half_length);
    c.grid_points = j["grid"].value("n_points", c.grid_points);
  }
  if (j.contains("exponents")) {
    const auto& e = j["exponents"];
    if (e.contains("p")) c.p_spec = e["p"].dump();
    if (e.contains("q")) c.q_spec = e["q"].dump();
    if (e.contains("s")) c.s_spec = e["s"].dump();
  }
  if (j.contains("tolerances")) {
    c.tol_inner = j["tolerances"].value("inner", c.tol_inner);
    c.tol_outer = j["tolerances"].value("outer", c.tol_outer);
  }
  c.seed = j.value("seed", c.seed);
  c.samples = j.value("samples", c.samples);
  if (j.contains("suite")) c.suites = j["suite"].get<std::vector<std::string>>();
  if (j.contains("suites"))
    c.suites = j["suites"].get<std::vector<std::string>>();
  c.mutate = j.value("mutate", c.mutate);
  if (!(c.tol_inner > 0.0) || !(c.tol_outer > 0.0))
    throw Error(ErrorCode::Config, "tolerances must be positive");
  return c;
}

RunConfig load_config(const std::string& path) {
  return config_from_json(slurp(path));
}

}  // namespace vexp
