#include "pddforge/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_backends.hpp"

namespace pddforge::kernels {

namespace {

Backend default_backend() {
#ifdef _OPENMP
  return Backend::openmp;
#else
  return Backend::serial;
#endif
}

Backend g_backend = default_backend();

}  // namespace

Backend active_backend() { return g_backend; }

void set_backend(Backend b) {
#ifndef _OPENMP
  b = Backend::serial;
#endif
  g_backend = b;
}

void init_backend_from_env() {
  const char* v = std::getenv("PDD_FORGE_BACKEND");
  if (!v) return;
  if (std::strcmp(v, "serial") == 0) set_backend(Backend::serial);
  else if (std::strcmp(v, "openmp") == 0) set_backend(Backend::openmp);
}

bool openmp_compiled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

Conv1dDims conv1d_dims(int64_t cin, int64_t cout, int64_t t_in, int64_t k, int64_t dilation,
                       int64_t stride, bool causal) {
  if (k < 1 || dilation < 1 || stride < 1) throw std::invalid_argument("conv1d: bad k/dilation/stride");
  if (!causal && k % 2 == 0) throw std::invalid_argument("conv1d: same padding needs an odd filter");
  Conv1dDims d;
  d.cin = cin;
  d.cout = cout;
  d.t_in = t_in;
  d.k = k;
  d.dilation = dilation;
  d.stride = stride;
  const int64_t span = (k - 1) * dilation;
  if (causal) {
    d.pad_left = span;
    d.pad_right = 0;
  } else {
    d.pad_left = span / 2;
    d.pad_right = span - span / 2;
  }
  d.t_out = (t_in + d.pad_left + d.pad_right - span - 1) / stride + 1;
  return d;
}

#define PDDFORGE_DISPATCH(fn, ...)                      \
  do {                                                  \
    if (g_backend == Backend::openmp)                   \
      omp_backend::fn(__VA_ARGS__);                     \
    else                                                \
      serial_backend::fn(__VA_ARGS__);                  \
  } while (0)

void conv1d_forward(const double* x, const double* w, const double* bias, double* y,
                    const Conv1dDims& d) {
  PDDFORGE_DISPATCH(conv1d_forward, x, w, bias, y, d);
}
void conv1d_backward_input(const double* gy, const double* w, double* gx, const Conv1dDims& d) {
  PDDFORGE_DISPATCH(conv1d_backward_input, gy, w, gx, d);
}
void conv1d_backward_weight(const double* gy, const double* x, double* gw, const Conv1dDims& d) {
  PDDFORGE_DISPATCH(conv1d_backward_weight, gy, x, gw, d);
}
void conv1d_backward_bias(const double* gy, double* gb, const Conv1dDims& d) {
  PDDFORGE_DISPATCH(conv1d_backward_bias, gy, gb, d);
}
void conv2d_forward(const double* x, const double* wgt, const double* bias, double* y,
                    const Conv2dDims& d) {
  PDDFORGE_DISPATCH(conv2d_forward, x, wgt, bias, y, d);
}
void conv2d_backward_input(const double* gy, const double* wgt, double* gx, const Conv2dDims& d) {
  PDDFORGE_DISPATCH(conv2d_backward_input, gy, wgt, gx, d);
}
void conv2d_backward_weight(const double* gy, const double* x, double* gw, const Conv2dDims& d) {
  PDDFORGE_DISPATCH(conv2d_backward_weight, gy, x, gw, d);
}
void conv2d_backward_bias(const double* gy, double* gb, const Conv2dDims& d) {
  PDDFORGE_DISPATCH(conv2d_backward_bias, gy, gb, d);
}
void matmul_nn(const double* a, const double* b, double* y, int64_t m, int64_t k, int64_t n) {
  PDDFORGE_DISPATCH(matmul_nn, a, b, y, m, k, n);
}
void matmul_nt(const double* a, const double* b, double* y, int64_t m, int64_t k, int64_t n) {
  PDDFORGE_DISPATCH(matmul_nt, a, b, y, m, k, n);
}
void matmul_tn(const double* a, const double* b, double* y, int64_t m, int64_t k, int64_t n) {
  PDDFORGE_DISPATCH(matmul_tn, a, b, y, m, k, n);
}
void stft_magnitude_forward(const double* x, const double* window, double* mag,
                            std::complex<double>* spectra, const StftDims& d) {
  PDDFORGE_DISPATCH(stft_magnitude_forward, x, window, mag, spectra, d);
}
void stft_magnitude_backward(const double* gmag, const std::complex<double>* spectra,
                             const double* mag, const double* window, double* gx,
                             const StftDims& d) {
  PDDFORGE_DISPATCH(stft_magnitude_backward, gmag, spectra, mag, window, gx, d);
}

#undef PDDFORGE_DISPATCH

}  // namespace pddforge::kernels
