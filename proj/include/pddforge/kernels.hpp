#pragma once

#include <complex>
#include <cstdint>

namespace pddforge::kernels {

// Two interchangeable kernel backends. The OpenMP kernels parallelize only
// over independent output elements; every element is accumulated serially in
// a fixed order, so both backends produce bitwise-identical results for any
// thread count. `serial` is the reference used by the parity tests and the
// kernel benchmark.
enum class Backend { serial, openmp };

Backend active_backend();
void set_backend(Backend b);
// Honors PDD_FORGE_BACKEND=serial|openmp; defaults to openmp when compiled in.
void init_backend_from_env();
bool openmp_compiled();

// ---------------------------------------------------------------------------
// 1-D convolution over [channels, time] row-major buffers.

struct Conv1dDims {
  int64_t cin = 0, cout = 0, t_in = 0, k = 0;
  int64_t dilation = 1, stride = 1;
  int64_t pad_left = 0, pad_right = 0;
  int64_t t_out = 0;
};

// pad: causal puts the full (k-1)*dilation pad on the left; same splits it.
Conv1dDims conv1d_dims(int64_t cin, int64_t cout, int64_t t_in, int64_t k,
                       int64_t dilation, int64_t stride, bool causal);

void conv1d_forward(const double* x, const double* w, const double* bias, double* y,
                    const Conv1dDims& d);
void conv1d_backward_input(const double* gy, const double* w, double* gx, const Conv1dDims& d);
void conv1d_backward_weight(const double* gy, const double* x, double* gw, const Conv1dDims& d);
void conv1d_backward_bias(const double* gy, double* gb, const Conv1dDims& d);

// ---------------------------------------------------------------------------
// 2-D convolution, stride 1, same padding, odd kernels, over [c, h, w].

struct Conv2dDims {
  int64_t cin = 0, cout = 0, h = 0, w = 0, kh = 0, kw = 0;
};

void conv2d_forward(const double* x, const double* wgt, const double* bias, double* y,
                    const Conv2dDims& d);
void conv2d_backward_input(const double* gy, const double* wgt, double* gx, const Conv2dDims& d);
void conv2d_backward_weight(const double* gy, const double* x, double* gw, const Conv2dDims& d);
void conv2d_backward_bias(const double* gy, double* gb, const Conv2dDims& d);

// ---------------------------------------------------------------------------
// Dense matmul, row-major. nn: y[m,n] = a[m,k] b[k,n]; nt: y[m,n] = a[m,k] b[n,k]^T;
// tn: y[m,n] = a[k,m]^T b[k,n].

void matmul_nn(const double* a, const double* b, double* y, int64_t m, int64_t k, int64_t n);
void matmul_nt(const double* a, const double* b, double* y, int64_t m, int64_t k, int64_t n);
void matmul_tn(const double* a, const double* b, double* y, int64_t m, int64_t k, int64_t n);

// ---------------------------------------------------------------------------
// STFT magnitude: Hann-windowed frames, zero-padded to fft_len, power-of-two FFT.

struct StftDims {
  int64_t t = 0, frame_len = 0, shift = 0, fft_len = 0;
  int64_t n_frames() const { return (t - frame_len) / shift + 1; }
  int64_t n_bins() const { return fft_len / 2 + 1; }
};

// mag: [n_frames, n_bins]; spectra (optional): per frame the complex bins
// 0..fft_len/2, needed later by the backward pass.
void stft_magnitude_forward(const double* x, const double* window, double* mag,
                            std::complex<double>* spectra, const StftDims& d);
// Accumulates into gx (caller zeroes). Zero-magnitude bins contribute nothing.
void stft_magnitude_backward(const double* gmag, const std::complex<double>* spectra,
                             const double* mag, const double* window, double* gx,
                             const StftDims& d);

// ---------------------------------------------------------------------------
// Generic elementwise dispatch. f(i) must touch only index i's outputs.

inline constexpr int64_t kParallelCutoff = 2048;

template <class F>
void for_each_index(int64_t n, F&& f) {
#ifdef _OPENMP
  if (active_backend() == Backend::openmp && n >= kParallelCutoff) {
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n; ++i) f(i);
    return;
  }
#endif
  for (int64_t i = 0; i < n; ++i) f(i);
}

}  // namespace pddforge::kernels
