#pragma once

#include <complex>

#include "pddforge/kernels.hpp"

// Backend entry points. Both namespaces expose the same signatures; the
// public functions in kernels.cpp dispatch on the active backend.

#define PDDFORGE_KERNEL_DECLS                                                                  \
  void conv1d_forward(const double* x, const double* w, const double* bias, double* y,         \
                      const Conv1dDims& d);                                                    \
  void conv1d_backward_input(const double* gy, const double* w, double* gx,                    \
                             const Conv1dDims& d);                                             \
  void conv1d_backward_weight(const double* gy, const double* x, double* gw,                   \
                              const Conv1dDims& d);                                            \
  void conv1d_backward_bias(const double* gy, double* gb, const Conv1dDims& d);                \
  void conv2d_forward(const double* x, const double* wgt, const double* bias, double* y,       \
                      const Conv2dDims& d);                                                    \
  void conv2d_backward_input(const double* gy, const double* wgt, double* gx,                  \
                             const Conv2dDims& d);                                             \
  void conv2d_backward_weight(const double* gy, const double* x, double* gw,                   \
                              const Conv2dDims& d);                                            \
  void conv2d_backward_bias(const double* gy, double* gb, const Conv2dDims& d);                \
  void matmul_nn(const double* a, const double* b, double* y, int64_t m, int64_t k, int64_t n); \
  void matmul_nt(const double* a, const double* b, double* y, int64_t m, int64_t k, int64_t n); \
  void matmul_tn(const double* a, const double* b, double* y, int64_t m, int64_t k, int64_t n); \
  void stft_magnitude_forward(const double* x, const double* window, double* mag,              \
                              std::complex<double>* spectra, const StftDims& d);               \
  void stft_magnitude_backward(const double* gmag, const std::complex<double>* spectra,        \
                               const double* mag, const double* window, double* gx,            \
                               const StftDims& d);

namespace pddforge::kernels::serial_backend {
PDDFORGE_KERNEL_DECLS
}

namespace pddforge::kernels::omp_backend {
PDDFORGE_KERNEL_DECLS
}
