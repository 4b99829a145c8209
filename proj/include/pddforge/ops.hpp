#pragma once

#include <vector>

#include "pddforge/tensor.hpp"

namespace pddforge {

// Elementwise; shapes must match exactly (use broadcast_to first if needed).
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor div(const Tensor& a, const Tensor& b);
Tensor add(const Tensor& a, double c);
Tensor mul(const Tensor& a, double c);
Tensor neg(const Tensor& a);

Tensor tanh(const Tensor& a);
Tensor sigmoid(const Tensor& a);
Tensor softplus(const Tensor& a);
Tensor exp(const Tensor& a);
Tensor log(const Tensor& a);
Tensor sqrt(const Tensor& a);
Tensor square(const Tensor& a);
Tensor abs(const Tensor& a);
Tensor leaky_relu(const Tensor& a, double alpha);
inline Tensor relu(const Tensor& a) { return leaky_relu(a, 0.0); }
Tensor clamp_min(const Tensor& a, double lo);

// Full reductions to a [1] scalar tensor.
Tensor sum(const Tensor& a);
Tensor mean(const Tensor& a);

Tensor pad(const Tensor& a, int axis, int64_t before, int64_t after, double value = 0.0);
Tensor slice(const Tensor& a, int axis, int64_t start, int64_t len);
Tensor concat(const std::vector<Tensor>& parts, int axis);
// Numpy-style broadcast against trailing axes (each source dim equal or 1).
Tensor broadcast_to(const Tensor& a, std::vector<int64_t> shape);
Tensor reshape(const Tensor& a, std::vector<int64_t> shape);
Tensor transpose2d(const Tensor& a);
// [M,N] -> [M*times,N], each row repeated `times` consecutively.
Tensor repeat_rows(const Tensor& a, int64_t times);
// Constant copy; cuts the graph.
Tensor detach(const Tensor& a);

Tensor matmul(const Tensor& a, const Tensor& b);

struct Conv1dOpts {
  bool causal = true;
  int64_t dilation = 1;
  int64_t stride = 1;
};
// x: [Cin,T], w: [Cout,Cin,K], bias: [Cout] or default-constructed for none.
Tensor conv1d(const Tensor& x, const Tensor& w, const Tensor& bias, const Conv1dOpts& opts = {});
// x: [Cin,H,W], w: [Cout,Cin,KH,KW]; stride 1, same padding, odd kernels.
Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& bias);

// Hann-windowed magnitude spectrogram of a [T] signal -> [n_frames, fft/2+1],
// differentiable through the transform. fft_len 0 selects the smallest power
// of two >= frame_len.
Tensor stft_magnitude(const Tensor& x, int64_t frame_len, int64_t shift, int64_t fft_len = 0);

// [T] -> [T], one-step delay with zero initial value.
Tensor shift_right(const Tensor& x);
// Row r of [R,C] as a [C] tensor.
Tensor row(const Tensor& m, int64_t r);

inline Tensor operator+(const Tensor& a, const Tensor& b) { return add(a, b); }
inline Tensor operator-(const Tensor& a, const Tensor& b) { return sub(a, b); }
inline Tensor operator*(const Tensor& a, const Tensor& b) { return mul(a, b); }
inline Tensor operator/(const Tensor& a, const Tensor& b) { return div(a, b); }
inline Tensor operator+(const Tensor& a, double c) { return add(a, c); }
inline Tensor operator+(double c, const Tensor& a) { return add(a, c); }
inline Tensor operator-(const Tensor& a, double c) { return add(a, -c); }
inline Tensor operator-(double c, const Tensor& a) { return add(neg(a), c); }
inline Tensor operator*(const Tensor& a, double c) { return mul(a, c); }
inline Tensor operator*(double c, const Tensor& a) { return mul(a, c); }
inline Tensor operator/(const Tensor& a, double c) { return mul(a, 1.0 / c); }
inline Tensor operator-(const Tensor& a) { return neg(a); }

}  // namespace pddforge
