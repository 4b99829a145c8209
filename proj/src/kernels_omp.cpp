// OpenMP kernels. Work is split only across independent output elements and
// each element runs the same serial per-element body as the reference
// backend, so results match it bitwise for any thread count.

#include <vector>

#include "kernels_backends.hpp"
#include "kernels_impl.hpp"

namespace pddforge::kernels::omp_backend {

using namespace pddforge::kernels::detail;

void conv1d_forward(const double* x, const double* w, const double* bias, double* y,
                    const Conv1dDims& d) {
#pragma omp parallel for collapse(2) schedule(static)
  for (int64_t co = 0; co < d.cout; ++co)
    for (int64_t to = 0; to < d.t_out; ++to) y[co * d.t_out + to] = conv1d_y_at(x, w, bias, d, co, to);
}

void conv1d_backward_input(const double* gy, const double* w, double* gx, const Conv1dDims& d) {
#pragma omp parallel for collapse(2) schedule(static)
  for (int64_t ci = 0; ci < d.cin; ++ci)
    for (int64_t ti = 0; ti < d.t_in; ++ti) gx[ci * d.t_in + ti] += conv1d_gx_at(gy, w, d, ci, ti);
}

void conv1d_backward_weight(const double* gy, const double* x, double* gw, const Conv1dDims& d) {
#pragma omp parallel for collapse(2) schedule(static)
  for (int64_t co = 0; co < d.cout; ++co)
    for (int64_t ci = 0; ci < d.cin; ++ci)
      for (int64_t kk = 0; kk < d.k; ++kk)
        gw[(co * d.cin + ci) * d.k + kk] += conv1d_gw_at(gy, x, d, co, ci, kk);
}

void conv1d_backward_bias(const double* gy, double* gb, const Conv1dDims& d) {
#pragma omp parallel for schedule(static)
  for (int64_t co = 0; co < d.cout; ++co) gb[co] += conv1d_gb_at(gy, d, co);
}

void conv2d_forward(const double* x, const double* wgt, const double* bias, double* y,
                    const Conv2dDims& d) {
#pragma omp parallel for collapse(2) schedule(static)
  for (int64_t co = 0; co < d.cout; ++co)
    for (int64_t hh = 0; hh < d.h; ++hh)
      for (int64_t ww = 0; ww < d.w; ++ww)
        y[(co * d.h + hh) * d.w + ww] = conv2d_y_at(x, wgt, bias, d, co, hh, ww);
}

void conv2d_backward_input(const double* gy, const double* wgt, double* gx, const Conv2dDims& d) {
#pragma omp parallel for collapse(2) schedule(static)
  for (int64_t ci = 0; ci < d.cin; ++ci)
    for (int64_t hh = 0; hh < d.h; ++hh)
      for (int64_t ww = 0; ww < d.w; ++ww)
        gx[(ci * d.h + hh) * d.w + ww] += conv2d_gx_at(gy, wgt, d, ci, hh, ww);
}

void conv2d_backward_weight(const double* gy, const double* x, double* gw, const Conv2dDims& d) {
#pragma omp parallel for collapse(2) schedule(static)
  for (int64_t co = 0; co < d.cout; ++co)
    for (int64_t ci = 0; ci < d.cin; ++ci)
      for (int64_t i = 0; i < d.kh; ++i)
        for (int64_t j = 0; j < d.kw; ++j)
          gw[((co * d.cin + ci) * d.kh + i) * d.kw + j] += conv2d_gw_at(gy, x, d, co, ci, i, j);
}

void conv2d_backward_bias(const double* gy, double* gb, const Conv2dDims& d) {
#pragma omp parallel for schedule(static)
  for (int64_t co = 0; co < d.cout; ++co) gb[co] += conv2d_gb_at(gy, d, co);
}

void matmul_nn(const double* a, const double* b, double* y, int64_t m, int64_t k, int64_t n) {
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) y[i * n + j] = matmul_nn_at(a, b, k, n, i, j);
}

void matmul_nt(const double* a, const double* b, double* y, int64_t m, int64_t k, int64_t n) {
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) y[i * n + j] = matmul_nt_at(a, b, k, i, j);
}

void matmul_tn(const double* a, const double* b, double* y, int64_t m, int64_t k, int64_t n) {
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) y[i * n + j] = matmul_tn_at(a, b, m, k, n, i, j);
}

void stft_magnitude_forward(const double* x, const double* window, double* mag,
                            std::complex<double>* spectra, const StftDims& d) {
  const int64_t nf = d.n_frames(), nb = d.n_bins();
#pragma omp parallel
  {
    std::vector<std::complex<double>> scratch(d.fft_len);
#pragma omp for schedule(static)
    for (int64_t f = 0; f < nf; ++f)
      stft_frame_forward(x, window, d, f, mag + f * nb, spectra ? spectra + f * nb : nullptr,
                         scratch.data());
  }
}

void stft_magnitude_backward(const double* gmag, const std::complex<double>* spectra,
                             const double* mag, const double* window, double* gx,
                             const StftDims& d) {
  const int64_t nf = d.n_frames(), nb = d.n_bins();
  // Frames overlap in the output, so the inverse transforms run in parallel
  // and the overlap-add stays serial in frame order.
  std::vector<double> gframes(nf * d.frame_len);
#pragma omp parallel
  {
    std::vector<std::complex<double>> scratch(d.fft_len);
#pragma omp for schedule(static)
    for (int64_t f = 0; f < nf; ++f)
      stft_frame_backward(gmag + f * nb, spectra + f * nb, mag + f * nb, window, d,
                          gframes.data() + f * d.frame_len, scratch.data());
  }
  for (int64_t f = 0; f < nf; ++f) {
    const int64_t off = f * d.shift;
    const double* gf = gframes.data() + f * d.frame_len;
    for (int64_t i = 0; i < d.frame_len; ++i) gx[off + i] += gf[i];
  }
}

}  // namespace pddforge::kernels::omp_backend
