#include "vexp/vexp.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "besov.hpp"
#include "duality.hpp"
#include "errors.hpp"
#include "exponents.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "lebesgue.hpp"
#include "mixed.hpp"
#include "verify.hpp"

// Handle definitions: each opaque struct wraps one core value.
struct vexp_grid {
  vexp::Grid v;
};
struct vexp_field {
  vexp::ExponentField v;
};
struct vexp_func {
  vexp::GridFunction v;
};
struct vexp_seq {
  vexp::FuncSequence v;
};
struct vexp_filters {
  vexp::FilterPair v;
};

namespace {

thread_local std::string g_last_error;

vexp_status status_of(vexp::ErrorCode code) {
  using vexp::ErrorCode;
  switch (code) {
    case ErrorCode::Config: return VEXP_ERR_CONFIG;
    case ErrorCode::Io: return VEXP_ERR_IO;
    case ErrorCode::GridMismatch: return VEXP_ERR_GRID_MISMATCH;
    case ErrorCode::SpecOutOfRange: return VEXP_ERR_SPEC_OUT_OF_RANGE;
    case ErrorCode::NotInClassP: return VEXP_ERR_NOT_IN_CLASS_P;
    case ErrorCode::BadBounds: return VEXP_ERR_BAD_BOUNDS;
    case ErrorCode::NonFinite: return VEXP_ERR_NON_FINITE;
    case ErrorCode::BracketFailure: return VEXP_ERR_BRACKET_FAILURE;
    case ErrorCode::QPlusInfinite: return VEXP_ERR_Q_PLUS_INFINITE;
    case ErrorCode::TooLargeForBrute: return VEXP_ERR_TOO_LARGE_FOR_BRUTE;
    case ErrorCode::NotNormable: return VEXP_ERR_NOT_NORMABLE;
    case ErrorCode::GridTooSmall: return VEXP_ERR_GRID_TOO_SMALL;
    case ErrorCode::Internal: return VEXP_ERR_INTERNAL;
  }
  return VEXP_ERR_INTERNAL;
}

template <typename Fn>
vexp_status guarded(Fn&& fn) {
  try {
    fn();
    return VEXP_OK;
  } catch (const vexp::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VEXP_ERR_INTERNAL;
  }
}

vexp_status null_arg() {
  g_last_error = "null argument";
  return VEXP_ERR_NULLPTR;
}

std::optional<double> floor_of(vexp_field_class cls) {
  switch (cls) {
    case VEXP_CLASS_P0: return 1e-12;
    case VEXP_CLASS_P: return 1.0;
    case VEXP_CLASS_REAL: return std::nullopt;
  }
  return std::nullopt;
}

vexp::SolveOptions solve_opts(double tol_inner, double tol_outer) {
  vexp::SolveOptions o;
  if (tol_inner > 0.0) o.tol_inner = tol_inner;
  if (tol_outer > 0.0) o.tol_outer = tol_outer;
  return o;
}

void fill(vexp_norm_result* out, const vexp::NormResult& r) {
  out->value = r.value;
  out->modular_at_value = r.modular_at_value;
  out->bracket_lo = r.bracket_lo;
  out->bracket_hi = r.bracket_hi;
  out->iterations = r.iterations;
  out->tolerance = r.tolerance;
}

}  // namespace

extern "C" {

const char* vexp_version(void) { return "0.1.0"; }

const char* vexp_status_name(vexp_status s) {
  switch (s) {
    case VEXP_OK: return "ok";
    case VEXP_ERR_NULLPTR: return "null pointer";
    case VEXP_ERR_CONFIG: return "config error";
    case VEXP_ERR_IO: return "io error";
    case VEXP_ERR_GRID_MISMATCH: return "grid mismatch";
    case VEXP_ERR_SPEC_OUT_OF_RANGE: return "spec out of range";
    case VEXP_ERR_NOT_IN_CLASS_P: return "not in class P";
    case VEXP_ERR_BAD_BOUNDS: return "bad bounds";
    case VEXP_ERR_NON_FINITE: return "non-finite data";
    case VEXP_ERR_BRACKET_FAILURE: return "bracket failure";
    case VEXP_ERR_Q_PLUS_INFINITE: return "q_plus infinite";
    case VEXP_ERR_TOO_LARGE_FOR_BRUTE: return "too large for brute search";
    case VEXP_ERR_NOT_NORMABLE: return "not normable";
    case VEXP_ERR_GRID_TOO_SMALL: return "grid too small";
    case VEXP_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* vexp_last_error(void) { return g_last_error.c_str(); }

void vexp_string_free(char* s) { std::free(s); }

/* ------------------------------------------------------------------ grid */

vexp_status vexp_grid_create(double half_length, int n_points,
                             vexp_grid** out) {
  if (!out) return null_arg();
  return guarded([&] { *out = new vexp_grid{vexp::Grid(half_length, n_points)}; });
}

void vexp_grid_destroy(vexp_grid* g) { delete g; }

int vexp_grid_points(const vexp_grid* g) { return g ? g->v.n_points() : 0; }

double vexp_grid_dx(const vexp_grid* g) { return g ? g->v.dx() : 0.0; }

double vexp_grid_half_length(const vexp_grid* g) {
  return g ? g->v.half_length() : 0.0;
}

/* -------------------------------------------------------- exponent fields */

vexp_status vexp_field_create_json(const vexp_grid* g, const char* spec_json,
                                   vexp_field_class cls, vexp_field** out) {
  if (!g || !spec_json || !out) return null_arg();
  return guarded([&] {
    *out = new vexp_field{vexp::field_from_json(g->v, spec_json, floor_of(cls))};
  });
}

vexp_status vexp_field_create_table(const vexp_grid* g, const double* values,
                                    size_t len, vexp_field_class cls,
                                    vexp_field** out) {
  if (!g || !values || !out) return null_arg();
  return guarded([&] {
    *out = new vexp_field{vexp::ExponentField(
        g->v, std::vector<double>(values, values + len), floor_of(cls))};
  });
}

void vexp_field_destroy(vexp_field* f) { delete f; }

vexp_status vexp_field_values(const vexp_field* f, double* out, size_t len) {
  if (!f || !out) return null_arg();
  return guarded([&] {
    if (len < f->v.size())
      throw vexp::Error(vexp::ErrorCode::Config, "output buffer too small");
    std::memcpy(out, f->v.values().data(), f->v.size() * sizeof(double));
  });
}

double vexp_field_min(const vexp_field* f) { return f ? f->v.p_minus() : 0.0; }

double vexp_field_max(const vexp_field* f) { return f ? f->v.p_plus() : 0.0; }

vexp_status vexp_field_conjugate(const vexp_field* f, vexp_field** out) {
  if (!f || !out) return null_arg();
  return guarded([&] { *out = new vexp_field{vexp::conjugate(f->v)}; });
}

vexp_status vexp_check_normability(const vexp_field* p, const vexp_field* q,
                                   int* tag_out, char* witness_buf,
                                   size_t witness_cap) {
  if (!p || !q || !tag_out) return null_arg();
  return guarded([&] {
    const auto cond = vexp::check_normability(p->v, q->v);
    *tag_out = static_cast<int>(cond.tag);
    if (witness_buf && witness_cap > 0) {
      std::snprintf(witness_buf, witness_cap, "%s", cond.witness.c_str());
    }
  });
}

vexp_status vexp_check_log_holder(const vexp_field* p, double c,
                                  double p_infinity, int* pass_out,
                                  double* worst_margin_out) {
  if (!p || !pass_out) return null_arg();
  return guarded([&] {
    const auto rep = vexp::check_log_holder(p->v, c, p_infinity);
    *pass_out = rep.pass ? 1 : 0;
    if (worst_margin_out)
      *worst_margin_out =
          std::min(rep.worst_decay_margin, rep.worst_local_margin);
  });
}

vexp_status vexp_field_random_log_holder(const vexp_grid* g, double lo,
                                         double hi, int bandwidth,
                                         uint64_t seed, vexp_field** out) {
  if (!g || !out) return null_arg();
  return guarded([&] {
    *out = new vexp_field{vexp::random_log_holder(g->v, lo, hi, bandwidth,
                                                  seed)};
  });
}

vexp_status vexp_field_log_holder_constant(const vexp_field* f, double* c_out,
                                           double* p_infinity_out) {
  if (!f || !c_out) return null_arg();
  return guarded([&] {
    const auto lh = vexp::log_holder_constant(f->v);
    *c_out = lh.c;
    if (p_infinity_out) *p_infinity_out = lh.p_infinity;
  });
}

/* --------------------------------------------------------- grid functions */

vexp_status vexp_func_create(const vexp_grid* g, const double* re,
                             const double* im, size_t len, vexp_func** out) {
  if (!g || !re || !out) return null_arg();
  return guarded([&] {
    std::vector<double> vre(re, re + len);
    std::vector<double> vim;
    if (im) vim.assign(im, im + len);
    *out = new vexp_func{
        vexp::GridFunction(g->v, std::move(vre), std::move(vim))};
  });
}

void vexp_func_destroy(vexp_func* f) { delete f; }

size_t vexp_func_size(const vexp_func* f) { return f ? f->v.size() : 0; }

int vexp_func_is_real(const vexp_func* f) {
  return f && f->v.is_real() ? 1 : 0;
}

vexp_status vexp_func_values(const vexp_func* f, double* re_out,
                             double* im_out, size_t len) {
  if (!f) return null_arg();
  return guarded([&] {
    if (len < f->v.size())
      throw vexp::Error(vexp::ErrorCode::Config, "output buffer too small");
    for (size_t i = 0; i < f->v.size(); ++i) {
      if (re_out) re_out[i] = f->v.re()[i];
      if (im_out) im_out[i] = f->v.is_real() ? 0.0 : f->v.im()[i];
    }
  });
}

vexp_status vexp_integrate(const vexp_func* f, double* out) {
  if (!f || !out) return null_arg();
  return guarded([&] { *out = vexp::integrate(f->v); });
}

vexp_status vexp_pairing_l1(const vexp_func* f, const vexp_func* g,
                            double* out) {
  if (!f || !g || !out) return null_arg();
  return guarded([&] { *out = vexp::pairing_l1(f->v, g->v); });
}

vexp_status vexp_func_random(const vexp_grid* g, int kind, double amplitude,
                             uint64_t seed, vexp_func** out) {
  if (!g || !out) return null_arg();
  if (kind < 0 || kind > 2) {
    g_last_error = "kind must be 0 (smooth), 1 (bump) or 2 (spike)";
    return VEXP_ERR_CONFIG;
  }
  return guarded([&] {
    *out = new vexp_func{vexp::random_function(
        g->v, static_cast<vexp::RandomKind>(kind), amplitude, seed)};
  });
}

vexp_status vexp_func_load_csv(const vexp_grid* g, const char* path,
                               vexp_func** out) {
  if (!g || !path || !out) return null_arg();
  return guarded(
      [&] { *out = new vexp_func{vexp::load_grid_function(g->v, path)}; });
}

vexp_status vexp_func_save_csv(const vexp_func* f, const char* path) {
  if (!f || !path) return null_arg();
  return guarded([&] { vexp::save_grid_function(f->v, path); });
}

/* -------------------------------------------------------------- sequences */

vexp_status vexp_seq_create(const vexp_grid* g, vexp_seq** out) {
  if (!g || !out) return null_arg();
  return guarded([&] { *out = new vexp_seq{vexp::FuncSequence(g->v)}; });
}

void vexp_seq_destroy(vexp_seq* s) { delete s; }

vexp_status vexp_seq_push(vexp_seq* s, const vexp_func* term) {
  if (!s || !term) return null_arg();
  return guarded([&] { s->v.push_back(term->v); });
}

size_t vexp_seq_terms(const vexp_seq* s) { return s ? s->v.size() : 0; }

vexp_status vexp_seq_term(const vexp_seq* s, size_t index, vexp_func** out) {
  if (!s || !out) return null_arg();
  return guarded([&] {
    if (index >= s->v.size())
      throw vexp::Error(vexp::ErrorCode::Config, "term index out of range");
    *out = new vexp_func{s->v.term(index)};
  });
}

vexp_status vexp_seq_project(const vexp_seq* s, int N, vexp_seq** out) {
  if (!s || !out) return null_arg();
  return guarded([&] { *out = new vexp_seq{vexp::project(N, s->v)}; });
}

vexp_status vexp_seq_load_csv(const vexp_grid* g, const char* path,
                              vexp_seq** out) {
  if (!g || !path || !out) return null_arg();
  return guarded(
      [&] { *out = new vexp_seq{vexp::load_func_sequence(g->v, path)}; });
}

vexp_status vexp_seq_save_csv(const vexp_seq* s, const char* path) {
  if (!s || !path) return null_arg();
  return guarded([&] { vexp::save_func_sequence(s->v, path); });
}

vexp_status vexp_seq_pairing(const vexp_seq* f, const vexp_seq* g,
                             double* out) {
  if (!f || !g || !out) return null_arg();
  return guarded([&] { *out = vexp::pairing(f->v, g->v); });
}

/* ------------------------------------------------------ norms and modulars */

vexp_status vexp_modular_lp(const vexp_field* p, const vexp_func* f,
                            double* out) {
  if (!p || !f || !out) return null_arg();
  return guarded([&] { *out = vexp::modular_lp(p->v, f->v); });
}

vexp_status vexp_luxemburg_norm(const vexp_field* p, const vexp_func* f,
                                double tol, vexp_norm_result* out) {
  if (!p || !f || !out) return null_arg();
  return guarded([&] {
    fill(out, vexp::luxemburg_norm(p->v, f->v, tol > 0.0 ? tol : 1e-10));
  });
}

vexp_status vexp_mixed_modular_p1(const vexp_field* p, const vexp_field* q,
                                  const vexp_seq* f, double tol_inner,
                                  double* total_out, double* per_term) {
  if (!p || !q || !f || !total_out) return null_arg();
  return guarded([&] {
    const auto bd =
        vexp::mixed_modular_p1(p->v, q->v, f->v, solve_opts(tol_inner, 0.0));
    *total_out = bd.total;
    if (per_term)
      std::memcpy(per_term, bd.per_term.data(),
                  bd.per_term.size() * sizeof(double));
  });
}

vexp_status vexp_mixed_modular_p1a(const vexp_field* p, const vexp_field* q,
                                   const vexp_seq* f, double tol_inner,
                                   double* out) {
  if (!p || !q || !f || !out) return null_arg();
  return guarded([&] {
    *out = vexp::mixed_modular_p1a(p->v, q->v, f->v, solve_opts(tol_inner, 0.0));
  });
}

vexp_status vexp_mixed_norm(const vexp_field* p, const vexp_field* q,
                            const vexp_seq* f, double tol_inner,
                            double tol_outer, vexp_norm_result* out) {
  if (!p || !q || !f || !out) return null_arg();
  return guarded([&] {
    fill(out,
         vexp::mixed_norm(p->v, q->v, f->v, solve_opts(tol_inner, tol_outer)));
  });
}

vexp_status vexp_lqminus_norm(const vexp_field* p, double q_minus,
                              const vexp_seq* f, double tol, double* out) {
  if (!p || !f || !out) return null_arg();
  return guarded([&] {
    *out = vexp::lqminus_norm(p->v, q_minus, f->v, tol > 0.0 ? tol : 1e-10);
  });
}

/* ----------------------------------------------------------------- duality */

vexp_status vexp_kothe_dual_norm(const vexp_field* p, const vexp_field* q,
                                 const vexp_seq* g, vexp_method method,
                                 double tol, vexp_dual_result* out,
                                 vexp_seq** maximizer_out) {
  if (!p || !q || !g || !out) return null_arg();
  return guarded([&] {
    const auto res = vexp::kothe_dual_norm(
        p->v, q->v, g->v,
        method == VEXP_METHOD_BRUTE ? vexp::DualMethod::Brute
                                    : vexp::DualMethod::Ascent,
        vexp::SolveOptions{}, tol > 0.0 ? tol : 1e-4);
    out->value = res.value;
    out->method = res.method == vexp::DualMethod::Brute ? VEXP_METHOD_BRUTE
                                                        : VEXP_METHOD_ASCENT;
    out->starts = res.starts;
    out->iterations = res.iterations;
    out->certificate_gap = res.certificate_gap;
    if (maximizer_out)
      *maximizer_out = new vexp_seq{
          res.maximizer ? *res.maximizer : vexp::FuncSequence(g->v.grid())};
  });
}

vexp_status vexp_dual_tail_norm(const vexp_field* p, const vexp_field* q,
                                const vexp_seq* g, int N, vexp_method method,
                                double tol, double* out) {
  if (!p || !q || !g || !out) return null_arg();
  return guarded([&] {
    *out = vexp::dual_tail_norm(p->v, q->v, g->v, N,
                                method == VEXP_METHOD_BRUTE
                                    ? vexp::DualMethod::Brute
                                    : vexp::DualMethod::Ascent,
                                vexp::SolveOptions{}, tol > 0.0 ? tol : 1e-4);
  });
}

vexp_status vexp_norming_check(const vexp_field* p, const vexp_field* q,
                               const vexp_seq* f, vexp_method method,
                               double tol, vexp_norming_report* out) {
  if (!p || !q || !f || !out) return null_arg();
  return guarded([&] {
    const auto rep = vexp::norming_check(
        p->v, q->v, f->v,
        method == VEXP_METHOD_BRUTE ? vexp::DualMethod::Brute
                                    : vexp::DualMethod::Ascent,
        vexp::SolveOptions{}, tol > 0.0 ? tol : 1e-4);
    out->exact_zero = rep.exact_zero ? 1 : 0;
    out->sup_value = rep.sup_value;
    out->f_norm = rep.f_norm;
    out->ratio = rep.ratio;
  });
}

/* ------------------------------------------------------------------- besov */

vexp_status vexp_filters_create(const vexp_grid* g, vexp_filter_shape shape,
                                vexp_filters** out) {
  if (!g || !out) return null_arg();
  return guarded([&] {
    *out = new vexp_filters{vexp::build_filter_pair(
        g->v, shape == VEXP_FILTER_QUINTIC ? vexp::FilterShape::Quintic
                                           : vexp::FilterShape::Exponential)};
  });
}

void vexp_filters_destroy(vexp_filters* f) { delete f; }

int vexp_filters_nu_max(const vexp_filters* f) {
  return f ? f->v.nu_max() : 0;
}

vexp_status vexp_filters_export_csv(const vexp_filters* f, const char* path) {
  if (!f || !path) return null_arg();
  return guarded([&] {
    std::FILE* fp = std::fopen(path, "w");
    if (!fp) throw vexp::Error(vexp::ErrorCode::Io, std::string("cannot write ") + path);
    const int n = f->v.grid().n_points();
    std::fprintf(fp, "mode,low_pass");
    for (int nu = 1; nu <= f->v.nu_max(); ++nu) std::fprintf(fp, ",band_%d", nu);
    std::fprintf(fp, "\n");
    for (int k = 0; k < n; ++k) {
      std::fprintf(fp, "%d,%.17g", vexp::signed_mode(k, n), f->v.low_pass()[k]);
      for (int nu = 1; nu <= f->v.nu_max(); ++nu)
        std::fprintf(fp, ",%.17g", f->v.band(nu)[k]);
      std::fprintf(fp, "\n");
    }
    std::fclose(fp);
  });
}

vexp_status vexp_analyze(const vexp_func* f, const vexp_field* s,
                         const vexp_filters* filters, vexp_seq** out) {
  if (!f || !s || !filters || !out) return null_arg();
  return guarded([&] {
    *out = new vexp_seq{vexp::analyze(f->v, s->v, filters->v).bands};
  });
}

vexp_status vexp_synthesize(const vexp_seq* bands, const vexp_field* s,
                            const vexp_filters* filters, vexp_func** out) {
  if (!bands || !s || !filters || !out) return null_arg();
  return guarded([&] {
    *out = new vexp_func{
        vexp::synthesize({bands->v, s->v}, filters->v)};
  });
}

vexp_status vexp_besov_norm(const vexp_func* f, const vexp_field* s,
                            const vexp_field* p, const vexp_field* q,
                            const vexp_filters* filters, double tol_inner,
                            double tol_outer, vexp_norm_result* out) {
  if (!f || !s || !p || !q || !filters || !out) return null_arg();
  return guarded([&] {
    fill(out, vexp::besov_norm(f->v, s->v, p->v, q->v, filters->v,
                               solve_opts(tol_inner, tol_outer)));
  });
}

/* ---------------------------------------------------------------- verify */

vexp_status vexp_verify_run(const char* config_json, char** report_csv_out,
                            int* failures_out) {
  if (!config_json || !report_csv_out || !failures_out) return null_arg();
  return guarded([&] {
    const vexp::RunConfig cfg = vexp::config_from_json(config_json);
    vexp::VerifyOptions opts;
    opts.grid_half_length = cfg.grid_half_length;
    opts.grid_points = cfg.grid_points;
    opts.tol_inner = cfg.tol_inner;
    opts.tol_outer = cfg.tol_outer;
    opts.seed = cfg.seed;
    opts.samples = cfg.samples;
    opts.suites = cfg.suites;
    if (cfg.mutate == "filter-normalization") {
      opts.mutations.skip_filter_normalization = true;
    } else if (cfg.mutate == "lambda-inf-convention") {
      opts.mutations.break_lambda_inf_convention = true;
    } else if (cfg.mutate != "none" && !cfg.mutate.empty()) {
      throw vexp::Error(vexp::ErrorCode::Config,
                        "unknown mutation: '" + cfg.mutate + "'");
    }
    const auto results = vexp::run_verify(opts);
    const std::string csv = vexp::verify_report_csv(results);
    char* buf = static_cast<char*>(std::malloc(csv.size() + 1));
    if (!buf)
      throw vexp::Error(vexp::ErrorCode::Internal, "out of memory");
    std::memcpy(buf, csv.c_str(), csv.size() + 1);
    *report_csv_out = buf;
    *failures_out = vexp::total_failures(results);
  });
}

} /* extern "C" */
