#pragma once

// Per-element kernel bodies shared by the serial and OpenMP translation
// units. Each function computes exactly one output element with a fixed
// accumulation order, which is what makes the two backends bit-identical.

#include <complex>

#include "pddforge/fft.hpp"
#include "pddforge/kernels.hpp"

namespace pddforge::kernels::detail {

inline double conv1d_y_at(const double* x, const double* w, const double* bias,
                          const Conv1dDims& d, int64_t co, int64_t to) {
  double acc = bias ? bias[co] : 0.0;
  const int64_t base = to * d.stride - d.pad_left;
  for (int64_t ci = 0; ci < d.cin; ++ci) {
    const double* xr = x + ci * d.t_in;
    const double* wr = w + (co * d.cin + ci) * d.k;
    for (int64_t kk = 0; kk < d.k; ++kk) {
      const int64_t ti = base + kk * d.dilation;
      if (ti >= 0 && ti < d.t_in) acc += wr[kk] * xr[ti];
    }
  }
  return acc;
}

inline double conv1d_gx_at(const double* gy, const double* w, const Conv1dDims& d,
                           int64_t ci, int64_t ti) {
  double acc = 0.0;
  for (int64_t co = 0; co < d.cout; ++co) {
    const double* gr = gy + co * d.t_out;
    const double* wr = w + (co * d.cin + ci) * d.k;
    for (int64_t kk = 0; kk < d.k; ++kk) {
      const int64_t num = ti + d.pad_left - kk * d.dilation;
      if (num < 0 || num % d.stride != 0) continue;
      const int64_t to = num / d.stride;
      if (to < d.t_out) acc += gr[to] * wr[kk];
    }
  }
  return acc;
}

inline double conv1d_gw_at(const double* gy, const double* x, const Conv1dDims& d,
                           int64_t co, int64_t ci, int64_t kk) {
  double acc = 0.0;
  const double* gr = gy + co * d.t_out;
  const double* xr = x + ci * d.t_in;
  for (int64_t to = 0; to < d.t_out; ++to) {
    const int64_t ti = to * d.stride - d.pad_left + kk * d.dilation;
    if (ti >= 0 && ti < d.t_in) acc += gr[to] * xr[ti];
  }
  return acc;
}

inline double conv1d_gb_at(const double* gy, const Conv1dDims& d, int64_t co) {
  double acc = 0.0;
  const double* gr = gy + co * d.t_out;
  for (int64_t to = 0; to < d.t_out; ++to) acc += gr[to];
  return acc;
}

inline double conv2d_y_at(const double* x, const double* wgt, const double* bias,
                          const Conv2dDims& d, int64_t co, int64_t hh, int64_t ww) {
  const int64_t ph = (d.kh - 1) / 2, pw = (d.kw - 1) / 2;
  double acc = bias ? bias[co] : 0.0;
  for (int64_t ci = 0; ci < d.cin; ++ci) {
    const double* xp = x + ci * d.h * d.w;
    const double* wp = wgt + ((co * d.cin + ci) * d.kh) * d.kw;
    for (int64_t i = 0; i < d.kh; ++i) {
      const int64_t hi = hh - ph + i;
      if (hi < 0 || hi >= d.h) continue;
      for (int64_t j = 0; j < d.kw; ++j) {
        const int64_t wi = ww - pw + j;
        if (wi >= 0 && wi < d.w) acc += wp[i * d.kw + j] * xp[hi * d.w + wi];
      }
    }
  }
  return acc;
}

inline double conv2d_gx_at(const double* gy, const double* wgt, const Conv2dDims& d,
                           int64_t ci, int64_t hh, int64_t ww) {
  const int64_t ph = (d.kh - 1) / 2, pw = (d.kw - 1) / 2;
  double acc = 0.0;
  for (int64_t co = 0; co < d.cout; ++co) {
    const double* gp = gy + co * d.h * d.w;
    const double* wp = wgt + ((co * d.cin + ci) * d.kh) * d.kw;
    for (int64_t i = 0; i < d.kh; ++i) {
      const int64_t ho = hh + ph - i;
      if (ho < 0 || ho >= d.h) continue;
      for (int64_t j = 0; j < d.kw; ++j) {
        const int64_t wo = ww + pw - j;
        if (wo >= 0 && wo < d.w) acc += gp[ho * d.w + wo] * wp[i * d.kw + j];
      }
    }
  }
  return acc;
}

inline double conv2d_gw_at(const double* gy, const double* x, const Conv2dDims& d,
                           int64_t co, int64_t ci, int64_t i, int64_t j) {
  const int64_t ph = (d.kh - 1) / 2, pw = (d.kw - 1) / 2;
  double acc = 0.0;
  const double* gp = gy + co * d.h * d.w;
  const double* xp = x + ci * d.h * d.w;
  for (int64_t hh = 0; hh < d.h; ++hh) {
    const int64_t hi = hh - ph + i;
    if (hi < 0 || hi >= d.h) continue;
    for (int64_t ww = 0; ww < d.w; ++ww) {
      const int64_t wi = ww - pw + j;
      if (wi >= 0 && wi < d.w) acc += gp[hh * d.w + ww] * xp[hi * d.w + wi];
    }
  }
  return acc;
}

inline double conv2d_gb_at(const double* gy, const Conv2dDims& d, int64_t co) {
  double acc = 0.0;
  const double* gp = gy + co * d.h * d.w;
  for (int64_t i = 0; i < d.h * d.w; ++i) acc += gp[i];
  return acc;
}

inline double matmul_nn_at(const double* a, const double* b, int64_t k, int64_t n,
                           int64_t i, int64_t j) {
  double acc = 0.0;
  for (int64_t kk = 0; kk < k; ++kk) acc += a[i * k + kk] * b[kk * n + j];
  return acc;
}

inline double matmul_nt_at(const double* a, const double* b, int64_t k, int64_t i, int64_t j) {
  double acc = 0.0;
  for (int64_t kk = 0; kk < k; ++kk) acc += a[i * k + kk] * b[j * k + kk];
  return acc;
}

inline double matmul_tn_at(const double* a, const double* b, int64_t m, int64_t k, int64_t n,
                           int64_t i, int64_t j) {
  double acc = 0.0;
  for (int64_t kk = 0; kk < k; ++kk) acc += a[kk * m + i] * b[kk * n + j];
  return acc;
}

// One STFT analysis frame: window, zero-pad, FFT, magnitudes.
inline void stft_frame_forward(const double* x, const double* window, const StftDims& d,
                               int64_t frame, double* mag_row, std::complex<double>* spec_row,
                               std::complex<double>* scratch) {
  const int64_t off = frame * d.shift;
  for (int64_t i = 0; i < d.frame_len; ++i) scratch[i] = {x[off + i] * window[i], 0.0};
  for (int64_t i = d.frame_len; i < d.fft_len; ++i) scratch[i] = {0.0, 0.0};
  fft_inplace(scratch, d.fft_len, false);
  const int64_t nb = d.n_bins();
  for (int64_t kk = 0; kk < nb; ++kk) {
    mag_row[kk] = std::abs(scratch[kk]);
    if (spec_row) spec_row[kk] = scratch[kk];
  }
}

// Adjoint of one frame: scale the saved spectrum by g/|X|, inverse-transform,
// window. Output is the frame-local gradient (frame_len values).
inline void stft_frame_backward(const double* gmag_row, const std::complex<double>* spec_row,
                                const double* mag_row, const double* window, const StftDims& d,
                                double* gframe, std::complex<double>* scratch) {
  const int64_t nb = d.n_bins();
  for (int64_t kk = 0; kk < nb; ++kk) {
    const double m = mag_row[kk];
    scratch[kk] = m > 0.0 ? spec_row[kk] * (gmag_row[kk] / m) : std::complex<double>(0.0, 0.0);
  }
  for (int64_t kk = nb; kk < d.fft_len; ++kk) scratch[kk] = {0.0, 0.0};
  fft_inplace(scratch, d.fft_len, true);
  for (int64_t i = 0; i < d.frame_len; ++i) gframe[i] = scratch[i].real() * window[i];
}

}  // namespace pddforge::kernels::detail
