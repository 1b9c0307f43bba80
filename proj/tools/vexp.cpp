// vexp command line tool. Talks to the computation core exclusively through
// the C API in vexp/vexp.h; config parsing and report formatting live here.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vexp/vexp.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int exit_code_for(vexp_status s) {
  switch (s) {
    case VEXP_OK:
      return kExitOk;
    case VEXP_ERR_BRACKET_FAILURE:
    case VEXP_ERR_NON_FINITE:
    case VEXP_ERR_TOO_LARGE_FOR_BRUTE:
    case VEXP_ERR_INTERNAL:
      return kExitNumerical;
    default:
      return kExitConfig;
  }
}

[[noreturn]] void fail(vexp_status s, const std::string& where) {
  std::cerr << "vexp: " << where << ": " << vexp_status_name(s);
  const char* detail = vexp_last_error();
  if (detail && *detail) std::cerr << " (" << detail << ")";
  std::cerr << "\n";
  std::exit(exit_code_for(s));
}

void check(vexp_status s, const std::string& where) {
  if (s != VEXP_OK) fail(s, where);
}

// config file contents with CLI defaults already applied
struct Config {
  double L = 2.0;
  int n_points = 1024;
  std::string p_spec = R"({"kind":"constant","value":2.0})";
  std::string q_spec = R"({"kind":"constant","value":2.0})";
  std::string s_spec = R"({"kind":"constant","value":0.0})";
  double tol_inner = 1e-10;
  double tol_outer = 1e-8;
  uint64_t seed = 42;
  int samples = 50;
  std::vector<std::string> suites{"all"};
  json raw;
};

Config read_config(const std::string& path) {
  Config c;
  if (path.empty()) return c;
  std::ifstream in(path);
  if (!in) {
    std::cerr << "vexp: cannot open config " << path << "\n";
    std::exit(kExitConfig);
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    std::cerr << "vexp: invalid JSON in " << path << "\n";
    std::exit(kExitConfig);
  }
  c.raw = j;
  if (j.contains("grid")) {
    c.L = j["grid"].value("L", c.L);
    c.n_points = j["grid"].value("n_points", c.n_points);
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
  if (j.contains("suite"))
    c.suites = j["suite"].get<std::vector<std::string>>();
  if (j.contains("suites"))
    c.suites = j["suites"].get<std::vector<std::string>>();
  return c;
}

// RAII wrappers around the opaque handles
template <typename T, void (*Destroy)(T*)>
using Handle = std::unique_ptr<T, decltype([](T* p) { Destroy(p); })>;

using GridPtr = Handle<vexp_grid, vexp_grid_destroy>;
using FieldPtr = Handle<vexp_field, vexp_field_destroy>;
using FuncPtr = Handle<vexp_func, vexp_func_destroy>;
using SeqPtr = Handle<vexp_seq, vexp_seq_destroy>;
using FiltersPtr = Handle<vexp_filters, vexp_filters_destroy>;

GridPtr make_grid(const Config& c) {
  vexp_grid* g = nullptr;
  check(vexp_grid_create(c.L, c.n_points, &g), "grid");
  return GridPtr(g);
}

FieldPtr make_field(const vexp_grid* g, const std::string& spec,
                    vexp_field_class cls, const char* name) {
  vexp_field* f = nullptr;
  check(vexp_field_create_json(g, spec.c_str(), cls, &f), name);
  return FieldPtr(f);
}

json condition_tag(const vexp_field* p, const vexp_field* q) {
  int tag = 0;
  char witness[160];
  if (vexp_check_normability(p, q, &tag, witness, sizeof witness) != VEXP_OK)
    return nullptr;
  static const char* names[] = {"NONE", "COND1", "COND2", "COND3"};
  return names[tag];
}

void emit(const json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "vexp: cannot write " << out_path << "\n";
      std::exit(kExitConfig);
    }
    out << text;
  }
}

int cmd_norm(const std::string& space, const Config& cfg,
             const std::string& input, const std::string& out_path) {
  GridPtr grid = make_grid(cfg);
  vexp_norm_result res{};
  json report;
  report["space"] = space;

  if (space == "lp") {
    FieldPtr p = make_field(grid.get(), cfg.p_spec, VEXP_CLASS_P0, "p");
    vexp_func* f = nullptr;
    check(vexp_func_load_csv(grid.get(), input.c_str(), &f), "input");
    FuncPtr fp(f);
    check(vexp_luxemburg_norm(p.get(), fp.get(), cfg.tol_inner, &res), "norm");
    report["condition_tag"] = nullptr;
  } else if (space == "mixed") {
    FieldPtr p = make_field(grid.get(), cfg.p_spec, VEXP_CLASS_P0, "p");
    FieldPtr q = make_field(grid.get(), cfg.q_spec, VEXP_CLASS_P0, "q");
    vexp_seq* s = nullptr;
    check(vexp_seq_load_csv(grid.get(), input.c_str(), &s), "input");
    SeqPtr sp(s);
    check(vexp_mixed_norm(p.get(), q.get(), sp.get(), cfg.tol_inner,
                          cfg.tol_outer, &res),
          "norm");
    report["condition_tag"] = condition_tag(p.get(), q.get());
  } else {  // besov
    FieldPtr p = make_field(grid.get(), cfg.p_spec, VEXP_CLASS_P, "p");
    FieldPtr q = make_field(grid.get(), cfg.q_spec, VEXP_CLASS_P, "q");
    FieldPtr s = make_field(grid.get(), cfg.s_spec, VEXP_CLASS_REAL, "s");
    vexp_filters* flt = nullptr;
    check(vexp_filters_create(grid.get(), VEXP_FILTER_EXPONENTIAL, &flt),
          "filters");
    FiltersPtr fp(flt);
    vexp_func* f = nullptr;
    check(vexp_func_load_csv(grid.get(), input.c_str(), &f), "input");
    FuncPtr fn(f);
    check(vexp_besov_norm(fn.get(), s.get(), p.get(), q.get(), fp.get(),
                          cfg.tol_inner, cfg.tol_outer, &res),
          "norm");
    report["condition_tag"] = condition_tag(p.get(), q.get());
  }

  report["value"] = res.value;
  report["tolerance"] = res.tolerance;
  report["iterations"] = res.iterations;
  report["modular_at_value"] = res.modular_at_value;
  emit(report, out_path);
  return kExitOk;
}

int cmd_modular(const std::string& which, const Config& cfg,
                const std::string& input, const std::string& out_path) {
  GridPtr grid = make_grid(cfg);
  FieldPtr p = make_field(grid.get(), cfg.p_spec, VEXP_CLASS_P0, "p");
  FieldPtr q = make_field(grid.get(), cfg.q_spec, VEXP_CLASS_P0, "q");
  vexp_seq* s = nullptr;
  check(vexp_seq_load_csv(grid.get(), input.c_str(), &s), "input");
  SeqPtr sp(s);

  json report;
  report["modular"] = which;
  if (which == "p1") {
    double total = 0.0;
    std::vector<double> per_term(vexp_seq_terms(sp.get()), 0.0);
    check(vexp_mixed_modular_p1(p.get(), q.get(), sp.get(), cfg.tol_inner,
                                &total, per_term.data()),
          "modular");
    report["value"] = std::isinf(total) ? json("inf") : json(total);
    json terms = json::array();
    for (double v : per_term)
      terms.push_back(std::isinf(v) ? json("inf") : json(v));
    report["per_term"] = terms;
  } else {
    double total = 0.0;
    check(vexp_mixed_modular_p1a(p.get(), q.get(), sp.get(), cfg.tol_inner,
                                 &total),
          "modular");
    report["value"] = std::isinf(total) ? json("inf") : json(total);
  }
  emit(report, out_path);
  return kExitOk;
}

int cmd_dual(const Config& cfg, const std::string& input,
             const std::string& method, const std::string& out_path) {
  GridPtr grid = make_grid(cfg);
  FieldPtr p = make_field(grid.get(), cfg.p_spec, VEXP_CLASS_P, "p");
  FieldPtr q = make_field(grid.get(), cfg.q_spec, VEXP_CLASS_P, "q");
  vexp_seq* s = nullptr;
  check(vexp_seq_load_csv(grid.get(), input.c_str(), &s), "input");
  SeqPtr sp(s);

  vexp_dual_result res{};
  check(vexp_kothe_dual_norm(p.get(), q.get(), sp.get(),
                             method == "brute" ? VEXP_METHOD_BRUTE
                                               : VEXP_METHOD_ASCENT,
                             1e-4, &res, nullptr),
        "dual");
  json report;
  report["value"] = res.value;
  report["method"] = res.method == VEXP_METHOD_BRUTE ? "brute" : "ascent";
  report["starts"] = res.starts;
  report["iterations"] = res.iterations;
  report["certificate_gap"] =
      std::isnan(res.certificate_gap) ? json(nullptr) : json(res.certificate_gap);
  emit(report, out_path);
  return kExitOk;
}

int cmd_verify(const Config& cfg, const std::string& mutate,
               const std::string& out_path) {
  json vcfg;
  vcfg["grid"] = {{"L", cfg.L}, {"n_points", cfg.n_points}};
  vcfg["tolerances"] = {{"inner", cfg.tol_inner}, {"outer", cfg.tol_outer}};
  vcfg["seed"] = cfg.seed;
  vcfg["samples"] = cfg.samples;
  vcfg["suites"] = cfg.suites;
  vcfg["mutate"] = mutate.empty() ? "none" : mutate;

  char* csv = nullptr;
  int failures = 0;
  check(vexp_verify_run(vcfg.dump().c_str(), &csv, &failures), "verify");
  std::cout << csv;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      vexp_string_free(csv);
      std::cerr << "vexp: cannot write " << out_path << "\n";
      return kExitConfig;
    }
    out << csv;
  }
  vexp_string_free(csv);
  if (failures > 0) {
    std::cerr << "vexp: " << failures << " property sample(s) failed\n";
    return kExitPropertyFailure;
  }
  return kExitOk;
}

int cmd_filters_export(const Config& cfg, const std::string& out_path) {
  GridPtr grid = make_grid(cfg);
  vexp_filters* flt = nullptr;
  check(vexp_filters_create(grid.get(), VEXP_FILTER_EXPONENTIAL, &flt),
        "filters");
  FiltersPtr fp(flt);
  check(vexp_filters_export_csv(fp.get(), out_path.c_str()), "export");
  std::cout << "{\n  \"nu_max\": " << vexp_filters_nu_max(fp.get())
            << ",\n  \"out\": \"" << out_path << "\"\n}\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable-exponent space kernel"};
  app.require_subcommand(1);

  std::string config_path, input_path, out_path, method = "ascent";
  std::string mutate;
  std::optional<uint64_t> seed_flag;
  std::optional<int> samples_flag;
  std::vector<std::string> suite_flags;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    sub->add_option("--config", config_path, "JSON config file");
    if (needs_input)
      sub->add_option("--input", input_path, "input CSV")->required();
    sub->add_option("--out", out_path, "also write the report here");
  };

  auto* norm = app.add_subcommand("norm", "compute a norm");
  std::string norm_space;
  norm->add_option("space", norm_space, "lp | mixed | besov")
      ->required()
      ->check(CLI::IsMember({"lp", "mixed", "besov"}));
  add_common(norm, true);

  auto* modular = app.add_subcommand("modular", "compute a sequence modular");
  std::string modular_kind;
  modular->add_option("kind", modular_kind, "p1 | p1a")
      ->required()
      ->check(CLI::IsMember({"p1", "p1a"}));
  add_common(modular, true);

  auto* dual = app.add_subcommand("dual", "Köthe dual norm");
  add_common(dual, true);
  dual->add_option("--method", method, "brute | ascent")
      ->check(CLI::IsMember({"brute", "ascent"}));

  auto* verify = app.add_subcommand("verify", "run the property suites");
  add_common(verify, false);
  verify->add_option("--seed", seed_flag, "root seed");
  verify->add_option("--samples", samples_flag, "samples per property");
  verify->add_option("--suite", suite_flags,
                     "suite name (repeatable): exponents|lebesgue|mixed|"
                     "duality|besov|all");
  verify->add_option("--mutate", mutate,
                     "inject a known defect (smoke test): "
                     "filter-normalization | lambda-inf-convention");

  auto* filters = app.add_subcommand("filters", "filter bank utilities");
  filters->require_subcommand(1);
  auto* filters_export = filters->add_subcommand("export", "write filters CSV");
  filters_export->add_option("--config", config_path, "JSON config file");
  filters_export->add_option("--out", out_path, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg = read_config(config_path);
    if (seed_flag) cfg.seed = *seed_flag;
    if (samples_flag) cfg.samples = *samples_flag;
    if (!suite_flags.empty()) cfg.suites = suite_flags;

    if (norm->parsed()) return cmd_norm(norm_space, cfg, input_path, out_path);
    if (modular->parsed())
      return cmd_modular(modular_kind, cfg, input_path, out_path);
    if (dual->parsed()) return cmd_dual(cfg, input_path, method, out_path);
    if (verify->parsed()) return cmd_verify(cfg, mutate, out_path);
    if (filters->parsed()) return cmd_filters_export(cfg, out_path);
  } catch (const std::exception& e) {
    std::cerr << "vexp: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
