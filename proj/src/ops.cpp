#include "pddforge/ops.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "pddforge/fft.hpp"
#include "pddforge/kernels.hpp"

namespace pddforge {

using detail::Node;

namespace {

Tensor make_node(const char* op, std::vector<int64_t> shape, std::vector<double> value,
                 std::vector<Tensor> parents, std::function<void(Node&)> bw) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->shape = std::move(shape);
  n->value = std::move(value);
  bool rg = false;
  if (!NoGradGuard::active())
    for (const auto& p : parents) rg = rg || p.requires_grad();
  if (rg) {
    n->requires_grad = true;
    n->leaf = false;
    n->parents.reserve(parents.size());
    for (auto& p : parents) n->parents.push_back(p.node_);
    n->backward_fn = std::move(bw);
  }
  return Tensor::wrap(std::move(n));
}

void check_same_shape(const char* op, const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape())
    throw std::invalid_argument(std::string(op) + ": shape mismatch " + shape_str(a.shape()) +
                                " vs " + shape_str(b.shape()));
}

template <class F, class D>
Tensor unary_ew(const char* name, const Tensor& a, F f, D dfdx) {
  const auto& x = a.values();
  std::vector<double> out(x.size());
  kernels::for_each_index(a.numel(), [&](int64_t i) { out[i] = f(x[i]); });
  return make_node(name, a.shape(), std::move(out), {a}, [dfdx](Node& n) {
    Node& p = *n.parents[0];
    if (!p.requires_grad) return;
    kernels::for_each_index(n.numel(), [&](int64_t i) {
      p.grad[i] += n.grad[i] * dfdx(p.value[i], n.value[i]);
    });
  });
}

template <class F, class DA, class DB>
Tensor binary_ew(const char* name, const Tensor& a, const Tensor& b, F f, DA da, DB db) {
  check_same_shape(name, a, b);
  const auto& xa = a.values();
  const auto& xb = b.values();
  std::vector<double> out(xa.size());
  kernels::for_each_index(a.numel(), [&](int64_t i) { out[i] = f(xa[i], xb[i]); });
  return make_node(name, a.shape(), std::move(out), {a, b}, [da, db](Node& n) {
    Node& pa = *n.parents[0];
    Node& pb = *n.parents[1];
    if (pa.requires_grad)
      kernels::for_each_index(n.numel(), [&](int64_t i) {
        pa.grad[i] += n.grad[i] * da(pa.value[i], pb.value[i], n.value[i]);
      });
    if (pb.requires_grad)
      kernels::for_each_index(n.numel(), [&](int64_t i) {
        pb.grad[i] += n.grad[i] * db(pa.value[i], pb.value[i], n.value[i]);
      });
  });
}

void axis_split(const std::vector<int64_t>& dims, int axis, int64_t& outer, int64_t& alen,
                int64_t& inner) {
  outer = 1;
  inner = 1;
  for (int i = 0; i < axis; ++i) outer *= dims[i];
  alen = dims[axis];
  for (size_t i = axis + 1; i < dims.size(); ++i) inner *= dims[i];
}

double stable_sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) {
  return binary_ew(
      "add", a, b, [](double x, double y) { return x + y; },
      [](double, double, double) { return 1.0; }, [](double, double, double) { return 1.0; });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  return binary_ew(
      "sub", a, b, [](double x, double y) { return x - y; },
      [](double, double, double) { return 1.0; }, [](double, double, double) { return -1.0; });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  return binary_ew(
      "mul", a, b, [](double x, double y) { return x * y; },
      [](double, double y, double) { return y; }, [](double x, double, double) { return x; });
}

Tensor div(const Tensor& a, const Tensor& b) {
  return binary_ew(
      "div", a, b, [](double x, double y) { return x / y; },
      [](double, double y, double) { return 1.0 / y; },
      [](double, double y, double out) { return -out / y; });
}

Tensor add(const Tensor& a, double c) {
  return unary_ew(
      "add_scalar", a, [c](double x) { return x + c; }, [](double, double) { return 1.0; });
}

Tensor mul(const Tensor& a, double c) {
  return unary_ew(
      "mul_scalar", a, [c](double x) { return x * c; }, [c](double, double) { return c; });
}

Tensor neg(const Tensor& a) {
  return unary_ew(
      "neg", a, [](double x) { return -x; }, [](double, double) { return -1.0; });
}

Tensor tanh(const Tensor& a) {
  return unary_ew(
      "tanh", a, [](double x) { return std::tanh(x); },
      [](double, double y) { return 1.0 - y * y; });
}

Tensor sigmoid(const Tensor& a) {
  return unary_ew(
      "sigmoid", a, [](double x) { return stable_sigmoid(x); },
      [](double, double y) { return y * (1.0 - y); });
}

Tensor softplus(const Tensor& a) {
  return unary_ew(
      "softplus", a,
      [](double x) {
        if (x > 30.0) return x;
        if (x < -30.0) return std::exp(x);
        return std::log1p(std::exp(x));
      },
      [](double x, double) { return stable_sigmoid(x); });
}

Tensor exp(const Tensor& a) {
  return unary_ew(
      "exp", a, [](double x) { return std::exp(x); }, [](double, double y) { return y; });
}

Tensor log(const Tensor& a) {
  return unary_ew(
      "log", a, [](double x) { return std::log(x); }, [](double x, double) { return 1.0 / x; });
}

Tensor sqrt(const Tensor& a) {
  return unary_ew(
      "sqrt", a, [](double x) { return std::sqrt(x); },
      [](double, double y) { return 0.5 / y; });
}

Tensor square(const Tensor& a) {
  return unary_ew(
      "square", a, [](double x) { return x * x; }, [](double x, double) { return 2.0 * x; });
}

Tensor abs(const Tensor& a) {
  return unary_ew(
      "abs", a, [](double x) { return std::abs(x); },
      [](double x, double) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
}

Tensor leaky_relu(const Tensor& a, double alpha) {
  return unary_ew(
      "leaky_relu", a, [alpha](double x) { return x >= 0.0 ? x : alpha * x; },
      [alpha](double x, double) { return x >= 0.0 ? 1.0 : alpha; });
}

Tensor clamp_min(const Tensor& a, double lo) {
  return unary_ew(
      "clamp_min", a, [lo](double x) { return x < lo ? lo : x; },
      [lo](double x, double) { return x > lo ? 1.0 : 0.0; });
}

Tensor sum(const Tensor& a) {
  double acc = 0.0;
  for (double v : a.values()) acc += v;
  return make_node("sum", {1}, {acc}, {a}, [](Node& n) {
    Node& p = *n.parents[0];
    if (!p.requires_grad) return;
    const double g = n.grad[0];
    kernels::for_each_index(p.numel(), [&](int64_t i) { p.grad[i] += g; });
  });
}

Tensor mean(const Tensor& a) {
  if (a.numel() == 0) throw std::invalid_argument("mean: empty tensor");
  double acc = 0.0;
  for (double v : a.values()) acc += v;
  const double inv = 1.0 / static_cast<double>(a.numel());
  return make_node("mean", {1}, {acc * inv}, {a}, [inv](Node& n) {
    Node& p = *n.parents[0];
    if (!p.requires_grad) return;
    const double g = n.grad[0] * inv;
    kernels::for_each_index(p.numel(), [&](int64_t i) { p.grad[i] += g; });
  });
}

Tensor pad(const Tensor& a, int axis, int64_t before, int64_t after, double value) {
  const auto& dims = a.shape();
  if (axis < 0 || axis >= static_cast<int>(dims.size()) || before < 0 || after < 0)
    throw std::invalid_argument("pad: bad axis/amounts for shape " + shape_str(dims));
  int64_t outer, alen, inner;
  axis_split(dims, axis, outer, alen, inner);
  std::vector<int64_t> oshape = dims;
  oshape[axis] = alen + before + after;
  std::vector<double> out(numel_of(oshape), value);
  const auto& x = a.values();
  for (int64_t o = 0; o < outer; ++o)
    for (int64_t i = 0; i < alen; ++i)
      for (int64_t in = 0; in < inner; ++in)
        out[(o * oshape[axis] + before + i) * inner + in] = x[(o * alen + i) * inner + in];
  const int64_t oalen = oshape[axis];
  return make_node("pad", std::move(oshape), std::move(out), {a},
                   [outer, alen, inner, before, oalen](Node& n) {
                     Node& p = *n.parents[0];
                     if (!p.requires_grad) return;
                     for (int64_t o = 0; o < outer; ++o)
                       for (int64_t i = 0; i < alen; ++i)
                         for (int64_t in = 0; in < inner; ++in)
                           p.grad[(o * alen + i) * inner + in] +=
                               n.grad[(o * oalen + before + i) * inner + in];
                   });
}

Tensor slice(const Tensor& a, int axis, int64_t start, int64_t len) {
  const auto& dims = a.shape();
  if (axis < 0 || axis >= static_cast<int>(dims.size()))
    throw std::invalid_argument("slice: bad axis for shape " + shape_str(dims));
  int64_t outer, alen, inner;
  axis_split(dims, axis, outer, alen, inner);
  if (start < 0 || len < 1 || start + len > alen)
    throw std::invalid_argument("slice: range [" + std::to_string(start) + "," +
                                std::to_string(start + len) + ") out of bounds for shape " +
                                shape_str(dims));
  std::vector<int64_t> oshape = dims;
  oshape[axis] = len;
  std::vector<double> out(numel_of(oshape));
  const auto& x = a.values();
  for (int64_t o = 0; o < outer; ++o)
    for (int64_t i = 0; i < len; ++i)
      for (int64_t in = 0; in < inner; ++in)
        out[(o * len + i) * inner + in] = x[(o * alen + start + i) * inner + in];
  return make_node("slice", std::move(oshape), std::move(out), {a},
                   [outer, alen, inner, start, len](Node& n) {
                     Node& p = *n.parents[0];
                     if (!p.requires_grad) return;
                     for (int64_t o = 0; o < outer; ++o)
                       for (int64_t i = 0; i < len; ++i)
                         for (int64_t in = 0; in < inner; ++in)
                           p.grad[(o * alen + start + i) * inner + in] +=
                               n.grad[(o * len + i) * inner + in];
                   });
}

Tensor concat(const std::vector<Tensor>& parts, int axis) {
  if (parts.empty()) throw std::invalid_argument("concat: no inputs");
  const auto& d0 = parts[0].shape();
  if (axis < 0 || axis >= static_cast<int>(d0.size()))
    throw std::invalid_argument("concat: bad axis for shape " + shape_str(d0));
  std::vector<int64_t> oshape = d0;
  int64_t total = 0;
  for (const auto& p : parts) {
    const auto& dp = p.shape();
    if (dp.size() != d0.size())
      throw std::invalid_argument("concat: rank mismatch " + shape_str(d0) + " vs " + shape_str(dp));
    for (size_t i = 0; i < dp.size(); ++i)
      if (static_cast<int>(i) != axis && dp[i] != d0[i])
        throw std::invalid_argument("concat: shape mismatch " + shape_str(d0) + " vs " +
                                    shape_str(dp));
    total += dp[axis];
  }
  oshape[axis] = total;
  int64_t outer, alen0, inner;
  axis_split(d0, axis, outer, alen0, inner);
  (void)alen0;
  std::vector<double> out(numel_of(oshape));
  std::vector<int64_t> lens(parts.size());
  int64_t off = 0;
  for (size_t pi = 0; pi < parts.size(); ++pi) {
    const int64_t alen = parts[pi].shape()[axis];
    lens[pi] = alen;
    const auto& x = parts[pi].values();
    for (int64_t o = 0; o < outer; ++o)
      for (int64_t i = 0; i < alen; ++i)
        for (int64_t in = 0; in < inner; ++in)
          out[(o * total + off + i) * inner + in] = x[(o * alen + i) * inner + in];
    off += alen;
  }
  return make_node("concat", std::move(oshape), std::move(out), parts,
                   [outer, inner, total, lens](Node& n) {
                     int64_t off2 = 0;
                     for (size_t pi = 0; pi < n.parents.size(); ++pi) {
                       Node& p = *n.parents[pi];
                       const int64_t alen = lens[pi];
                       if (p.requires_grad)
                         for (int64_t o = 0; o < outer; ++o)
                           for (int64_t i = 0; i < alen; ++i)
                             for (int64_t in = 0; in < inner; ++in)
                               p.grad[(o * alen + i) * inner + in] +=
                                   n.grad[(o * total + off2 + i) * inner + in];
                       off2 += alen;
                     }
                   });
}

Tensor broadcast_to(const Tensor& a, std::vector<int64_t> shape) {
  const auto& src = a.shape();
  if (src.size() > shape.size())
    throw std::invalid_argument("broadcast: rank of " + shape_str(src) + " exceeds target " +
                                shape_str(shape));
  // Align trailing dims; leading source dims are implicitly 1.
  const size_t off = shape.size() - src.size();
  for (size_t i = 0; i < src.size(); ++i)
    if (src[i] != 1 && src[i] != shape[off + i])
      throw std::invalid_argument("broadcast: shape mismatch " + shape_str(src) + " vs " +
                                  shape_str(shape));
  const int64_t on = numel_of(shape);
  const size_t rank = shape.size();
  std::vector<int64_t> ostride(rank, 1), sstride(rank, 0);
  for (size_t i = rank - 1; i + 1 > 0; --i) {
    if (i + 1 < rank) ostride[i] = ostride[i + 1] * shape[i + 1];
    if (i >= off && src[i - off] != 1) {
      int64_t s = 1;
      for (size_t j = i - off + 1; j < src.size(); ++j) s *= src[j];
      sstride[i] = s;
    }
  }
  const auto& x = a.values();
  std::vector<double> out(on);
  auto src_index = [ostride, sstride, rank](int64_t oi) {
    int64_t si = 0;
    for (size_t i = 0; i < rank; ++i) {
      const int64_t c = oi / ostride[i];
      oi -= c * ostride[i];
      si += c * sstride[i];
    }
    return si;
  };
  for (int64_t i = 0; i < on; ++i) out[i] = x[src_index(i)];
  return make_node("broadcast", std::move(shape), std::move(out), {a}, [src_index, on](Node& n) {
    Node& p = *n.parents[0];
    if (!p.requires_grad) return;
    for (int64_t i = 0; i < on; ++i) p.grad[src_index(i)] += n.grad[i];
  });
}

Tensor reshape(const Tensor& a, std::vector<int64_t> shape) {
  if (numel_of(shape) != a.numel())
    throw std::invalid_argument("reshape: cannot view " + shape_str(a.shape()) + " as " +
                                shape_str(shape));
  return make_node("reshape", std::move(shape), a.values(), {a}, [](Node& n) {
    Node& p = *n.parents[0];
    if (!p.requires_grad) return;
    kernels::for_each_index(n.numel(), [&](int64_t i) { p.grad[i] += n.grad[i]; });
  });
}

Tensor transpose2d(const Tensor& a) {
  const auto& dims = a.shape();
  if (dims.size() != 2) throw std::invalid_argument("transpose2d: need rank 2, got " + shape_str(dims));
  const int64_t m = dims[0], nn = dims[1];
  const auto& x = a.values();
  std::vector<double> out(m * nn);
  kernels::for_each_index(m * nn, [&](int64_t idx) {
    const int64_t j = idx / m, i = idx % m;
    out[j * m + i] = x[i * nn + j];
  });
  return make_node("transpose2d", {nn, m}, std::move(out), {a}, [m, nn](Node& n) {
    Node& p = *n.parents[0];
    if (!p.requires_grad) return;
    kernels::for_each_index(m * nn, [&](int64_t idx) {
      const int64_t i = idx / nn, j = idx % nn;
      p.grad[i * nn + j] += n.grad[j * m + i];
    });
  });
}

Tensor repeat_rows(const Tensor& a, int64_t times) {
  const auto& dims = a.shape();
  if (dims.size() != 2 || times < 1)
    throw std::invalid_argument("repeat_rows: need rank 2 and times >= 1, got " + shape_str(dims));
  const int64_t m = dims[0], nn = dims[1];
  const auto& x = a.values();
  std::vector<double> out(m * times * nn);
  kernels::for_each_index(m * times, [&](int64_t r) {
    const int64_t i = r / times;
    for (int64_t j = 0; j < nn; ++j) out[r * nn + j] = x[i * nn + j];
  });
  return make_node("repeat_rows", {m * times, nn}, std::move(out), {a}, [m, nn, times](Node& n) {
    Node& p = *n.parents[0];
    if (!p.requires_grad) return;
    kernels::for_each_index(m * nn, [&](int64_t idx) {
      const int64_t i = idx / nn, j = idx % nn;
      double acc = 0.0;
      for (int64_t r = 0; r < times; ++r) acc += n.grad[(i * times + r) * nn + j];
      p.grad[idx] += acc;
    });
  });
}

Tensor detach(const Tensor& a) { return Tensor::from(a.shape(), a.values()); }

Tensor matmul(const Tensor& a, const Tensor& b) {
  const auto& da = a.shape();
  const auto& db = b.shape();
  if (da.size() != 2 || db.size() != 2 || da[1] != db[0])
    throw std::invalid_argument("matmul: shape mismatch " + shape_str(da) + " vs " + shape_str(db));
  const int64_t m = da[0], k = da[1], nn = db[1];
  std::vector<double> out(m * nn);
  kernels::matmul_nn(a.values().data(), b.values().data(), out.data(), m, k, nn);
  return make_node("matmul", {m, nn}, std::move(out), {a, b}, [m, k, nn](Node& n) {
    Node& pa = *n.parents[0];
    Node& pb = *n.parents[1];
    if (pa.requires_grad) {
      std::vector<double> ga(m * k);
      kernels::matmul_nt(n.grad.data(), pb.value.data(), ga.data(), m, nn, k);
      kernels::for_each_index(m * k, [&](int64_t i) { pa.grad[i] += ga[i]; });
    }
    if (pb.requires_grad) {
      std::vector<double> gb(k * nn);
      kernels::matmul_tn(pa.value.data(), n.grad.data(), gb.data(), k, m, nn);
      kernels::for_each_index(k * nn, [&](int64_t i) { pb.grad[i] += gb[i]; });
    }
  });
}

Tensor conv1d(const Tensor& x, const Tensor& w, const Tensor& bias, const Conv1dOpts& opts) {
  const auto& dx = x.shape();
  const auto& dw = w.shape();
  if (dx.size() != 2 || dw.size() != 3 || dw[1] != dx[0])
    throw std::invalid_argument("conv1d: shape mismatch " + shape_str(dx) + " vs " + shape_str(dw));
  const bool has_bias = bias.defined();
  if (has_bias && (bias.shape().size() != 1 || bias.shape()[0] != dw[0]))
    throw std::invalid_argument("conv1d: shape mismatch " + shape_str(dw) + " vs " +
                                shape_str(bias.shape()));
  const auto d = kernels::conv1d_dims(dx[0], dw[0], dx[1], dw[2], opts.dilation, opts.stride,
                                      opts.causal);
  if (d.t_out < 1)
    throw std::invalid_argument("conv1d: input length " + std::to_string(d.t_in) +
                                " too short for filter");
  std::vector<double> out(d.cout * d.t_out);
  kernels::conv1d_forward(x.values().data(), w.values().data(),
                          has_bias ? bias.values().data() : nullptr, out.data(), d);
  std::vector<Tensor> parents = {x, w};
  if (has_bias) parents.push_back(bias);
  return make_node("conv1d", {d.cout, d.t_out}, std::move(out), std::move(parents),
                   [d, has_bias](Node& n) {
                     Node& px = *n.parents[0];
                     Node& pw = *n.parents[1];
                     if (px.requires_grad)
                       kernels::conv1d_backward_input(n.grad.data(), pw.value.data(),
                                                      px.grad.data(), d);
                     if (pw.requires_grad)
                       kernels::conv1d_backward_weight(n.grad.data(), px.value.data(),
                                                       pw.grad.data(), d);
                     if (has_bias && n.parents[2]->requires_grad)
                       kernels::conv1d_backward_bias(n.grad.data(), n.parents[2]->grad.data(), d);
                   });
}

Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& bias) {
  const auto& dx = x.shape();
  const auto& dw = w.shape();
  if (dx.size() != 3 || dw.size() != 4 || dw[1] != dx[0])
    throw std::invalid_argument("conv2d: shape mismatch " + shape_str(dx) + " vs " + shape_str(dw));
  if (dw[2] % 2 == 0 || dw[3] % 2 == 0)
    throw std::invalid_argument("conv2d: same padding needs odd kernels, got " + shape_str(dw));
  const bool has_bias = bias.defined();
  if (has_bias && (bias.shape().size() != 1 || bias.shape()[0] != dw[0]))
    throw std::invalid_argument("conv2d: shape mismatch " + shape_str(dw) + " vs " +
                                shape_str(bias.shape()));
  kernels::Conv2dDims d{dx[0], dw[0], dx[1], dx[2], dw[2], dw[3]};
  std::vector<double> out(d.cout * d.h * d.w);
  kernels::conv2d_forward(x.values().data(), w.values().data(),
                          has_bias ? bias.values().data() : nullptr, out.data(), d);
  std::vector<Tensor> parents = {x, w};
  if (has_bias) parents.push_back(bias);
  return make_node("conv2d", {d.cout, d.h, d.w}, std::move(out), std::move(parents),
                   [d, has_bias](Node& n) {
                     Node& px = *n.parents[0];
                     Node& pw = *n.parents[1];
                     if (px.requires_grad)
                       kernels::conv2d_backward_input(n.grad.data(), pw.value.data(),
                                                      px.grad.data(), d);
                     if (pw.requires_grad)
                       kernels::conv2d_backward_weight(n.grad.data(), px.value.data(),
                                                       pw.grad.data(), d);
                     if (has_bias && n.parents[2]->requires_grad)
                       kernels::conv2d_backward_bias(n.grad.data(), n.parents[2]->grad.data(), d);
                   });
}

Tensor stft_magnitude(const Tensor& x, int64_t frame_len, int64_t shift, int64_t fft_len) {
  const auto& dx = x.shape();
  if (dx.size() != 1) throw std::invalid_argument("stft: need rank 1, got " + shape_str(dx));
  if (frame_len < 2 || shift < 1) throw std::invalid_argument("stft: bad frame/shift");
  if (dx[0] < frame_len)
    throw std::invalid_argument("stft: clip of " + std::to_string(dx[0]) +
                                " samples is shorter than one frame (" +
                                std::to_string(frame_len) + ")");
  if (fft_len == 0) fft_len = next_pow2(frame_len);
  if (fft_len < frame_len || (fft_len & (fft_len - 1)) != 0)
    throw std::invalid_argument("stft: fft_len must be a power of two >= frame_len");
  kernels::StftDims d{dx[0], frame_len, shift, fft_len};
  const int64_t nf = d.n_frames(), nb = d.n_bins();
  auto window = std::make_shared<std::vector<double>>(frame_len);
  for (int64_t i = 0; i < frame_len; ++i)
    (*window)[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) /
                                        static_cast<double>(frame_len));
  const bool needs_grad = !NoGradGuard::active() && x.requires_grad();
  auto spectra = needs_grad ? std::make_shared<std::vector<std::complex<double>>>(nf * nb) : nullptr;
  std::vector<double> mag(nf * nb);
  kernels::stft_magnitude_forward(x.values().data(), window->data(), mag.data(),
                                  spectra ? spectra->data() : nullptr, d);
  return make_node("stft_magnitude", {nf, nb}, std::move(mag), {x}, [d, window, spectra](Node& n) {
    Node& p = *n.parents[0];
    if (!p.requires_grad || !spectra) return;
    kernels::stft_magnitude_backward(n.grad.data(), spectra->data(), n.value.data(),
                                     window->data(), p.grad.data(), d);
  });
}

Tensor shift_right(const Tensor& x) {
  if (x.shape().size() != 1)
    throw std::invalid_argument("shift_right: need rank 1, got " + shape_str(x.shape()));
  const int64_t t = x.shape()[0];
  return slice(pad(x, 0, 1, 0, 0.0), 0, 0, t);
}

Tensor row(const Tensor& m, int64_t r) {
  if (m.shape().size() != 2)
    throw std::invalid_argument("row: need rank 2, got " + shape_str(m.shape()));
  return reshape(slice(m, 0, r, 1), {m.shape()[1]});
}

}  // namespace pddforge
