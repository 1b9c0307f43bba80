#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace vexp::fft {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;

// FFTW_ESTIMATE keeps planning deterministic and does not touch the input
// buffers at plan time.
PlanPair& plans_for(std::size_t n, fftw_complex* buf_in,
                    fftw_complex* buf_out) {
  static std::map<std::size_t, PlanPair> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(static_cast<int>(n), buf_in, buf_out,
                             FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(static_cast<int>(n), buf_in, buf_out,
                             FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    it = cache.emplace(n, p).first;
  }
  return it->second;
}

std::vector<std::complex<double>> run(std::span<const std::complex<double>> in,
                                      bool forward_dir) {
  std::vector<std::complex<double>> buf(in.begin(), in.end());
  std::vector<std::complex<double>> out(in.size());
  auto* bi = reinterpret_cast<fftw_complex*>(buf.data());
  auto* bo = reinterpret_cast<fftw_complex*>(out.data());
  std::lock_guard<std::mutex> lock(plan_mutex);
  PlanPair& p = plans_for(in.size(), bi, bo);
  fftw_execute_dft(forward_dir ? p.fwd : p.bwd, bi, bo);
  return out;
}

}  // namespace

std::vector<std::complex<double>> forward(
    std::span<const std::complex<double>> in) {
  return run(in, true);
}

std::vector<std::complex<double>> inverse(
    std::span<const std::complex<double>> in) {
  auto out = run(in, false);
  const double inv_n = 1.0 / static_cast<double>(in.size());
  for (auto& z : out) z *= inv_n;
  return out;
}

}  // namespace vexp::fft
