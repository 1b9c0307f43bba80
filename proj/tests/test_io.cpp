#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "io.hpp"
#include "oracles.hpp"

using namespace vexp;

namespace {
const Grid g(2.0, 64);

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("vexp_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};
}  // namespace

TEST_CASE("exponent specs from JSON") {
  auto c = field_from_json(g, R"({"kind":"constant","value":2.5})", 1.0);
  CHECK(c.p_minus() == 2.5);

  auto cinf = field_from_json(g, R"({"kind":"constant","value":"inf"})", 1.0);
  CHECK(cinf.p_plus() == kInfExponent);

  auto a = field_from_json(
      g, R"({"kind":"affine","a":2.0,"b":1.0,"lo":2.0,"hi":3.0})", 1.0);
  CHECK(a.p_minus() == 2.0);
  CHECK(a.p_plus() == 3.0);

  std::string table = R"({"kind":"table","values":[)";
  for (int i = 0; i < g.n_points(); ++i)
    table += (i ? std::string(",") : std::string()) +
             (i == 5 ? std::string("\"inf\"") : std::string("2.0"));
  table += "]}";
  auto t = field_from_json(g, table, 1.0);
  CHECK(t.infinite_count() == 1);

  auto r = field_from_json(
      g, R"({"kind":"random","lo":1.5,"hi":3.0,"bandwidth":4,"seed":7})", 1.0);
  CHECK(r.p_minus() >= 1.5);
  CHECK(r.p_plus() <= 3.0);

  CHECK_THROWS_AS(field_from_json(g, "{not json", 1.0), Error);
  CHECK_THROWS_AS(field_from_json(g, R"({"kind":"polar"})", 1.0), Error);
  CHECK_THROWS_AS(
      field_from_json(g, R"({"kind":"constant","value":"huge"})", 1.0), Error);
  CHECK_THROWS_AS(
      field_from_json(g, R"({"kind":"constant","value":0.5})", 1.0), Error);
}

TEST_CASE("grid function CSV round trip, real and complex") {
  TempDir tmp;
  GridFunction f = oracle::indicator(g, 0.0, 1.0, 1.5);
  save_grid_function(f, tmp.file("real.csv"));
  GridFunction f2 = load_grid_function(g, tmp.file("real.csv"));
  CHECK(f2.is_real());
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(f.re()[i] == f2.re()[i]);

  std::vector<double> re(g.n_points(), 0.5), im(g.n_points(), -0.25);
  GridFunction c(g, re, im);
  save_grid_function(c, tmp.file("cplx.csv"));
  GridFunction c2 = load_grid_function(g, tmp.file("cplx.csv"));
  CHECK(!c2.is_real());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(c2.re()[i] == 0.5);
    CHECK(c2.im()[i] == -0.25);
  }

  CHECK_THROWS_AS(load_grid_function(g, tmp.file("missing.csv")), Error);
  {
    std::ofstream bad(tmp.file("bad.csv"));
    bad << "1.0\nnot_a_number\n";
  }
  CHECK_THROWS_AS(load_grid_function(g, tmp.file("bad.csv")), Error);
  {
    std::ofstream short_file(tmp.file("short.csv"));
    short_file << "1.0\n2.0\n";
  }
  CHECK_THROWS_AS(load_grid_function(g, tmp.file("short.csv")), Error);
}

TEST_CASE("sequence CSV: one column per term, and per-term files") {
  TempDir tmp;
  FuncSequence seq(g);
  seq.push_back(oracle::indicator(g, 0.0, 1.0));
  seq.push_back(oracle::indicator(g, -1.0, 0.0, 2.0));

  save_func_sequence(seq, tmp.file("seq.csv"));
  FuncSequence seq2 = load_func_sequence(g, tmp.file("seq.csv"));
  REQUIRE(seq2.size() == 2);
  for (std::size_t nu = 0; nu < 2; ++nu)
    for (std::size_t i = 0; i < seq.term(nu).size(); ++i)
      CHECK(seq.term(nu).re()[i] == seq2.term(nu).re()[i]);

  // directory layout
  auto dir = tmp.path / "terms";
  std::filesystem::create_directories(dir);
  save_grid_function(seq.term(0), (dir / "term_0001.csv").string());
  save_grid_function(seq.term(1), (dir / "term_0002.csv").string());
  FuncSequence seq3 = load_func_sequence(g, dir.string());
  REQUIRE(seq3.size() == 2);
  CHECK(seq3.term(1).max_abs() == 2.0);

  CHECK_THROWS_AS(load_func_sequence(g, tmp.file("nope.csv")), Error);
}

TEST_CASE("run config parsing") {
  RunConfig c = config_from_json(R"({
    "grid": {"L": 1.0, "n_points": 128},
    "exponents": {"p": {"kind":"constant","value":2.4},
                  "q": {"kind":"constant","value":1.7}},
    "tolerances": {"inner": 1e-9, "outer": 1e-7},
    "seed": 137, "samples": 12, "suites": ["mixed","besov"]
  })");
  CHECK(c.grid_half_length == 1.0);
  CHECK(c.grid_points == 128);
  CHECK(c.tol_inner == 1e-9);
  CHECK(c.seed == 137);
  CHECK(c.samples == 12);
  REQUIRE(c.suites.size() == 2);
  CHECK(c.suites[0] == "mixed");
  CHECK(c.p_spec.find("2.4") != std::string::npos);

  // defaults survive an empty object
  RunConfig d = config_from_json("{}");
  CHECK(d.grid_points == 1024);
  CHECK(d.suites == std::vector<std::string>{"all"});

  CHECK_THROWS_AS(config_from_json("["), Error);
  CHECK_THROWS_AS(
      config_from_json(R"({"tolerances":{"inner":-1.0}})"), Error);
}
