#include "dta/ops.hpp"

#include <algorithm>
#include <cstring>

#include "dta/error.hpp"
#include "dta/kernels.hpp"

namespace dta::nn {

namespace {

Tensor make_result(std::vector<double> data, std::vector<std::size_t> shape,
                   std::vector<std::shared_ptr<TensorData>> parents,
                   std::function<void(TensorData&)> backward_fn) {
  auto d = std::make_shared<TensorData>();
  d->data = std::move(data);
  d->shape = std::move(shape);
  d->requires_grad = false;
  if (NoGradGuard::recording_enabled()) {
    for (const auto& p : parents)
      if (p->requires_grad) d->requires_grad = true;
  }
  if (d->requires_grad) {
    d->parents = std::move(parents);
    d->backward_fn = std::move(backward_fn);
  }
  return Tensor(std::move(d));
}

}  // namespace

Tensor embedding_forward(const enc::EncodedSequence& indices,
                         const LayerParams& table) {
  if (table.kind != LayerKind::Embedding)
    throw ConfigError("embedding_forward: layer '" + table.name +
                      "' is not an embedding table");
  const auto& w = table.weights;
  const std::size_t rows = w.shape()[0];
  const std::size_t dim = w.shape()[1];
  const std::size_t len = indices.indices.size();

  std::vector<double> out(len * dim);
  for (std::size_t i = 0; i < len; ++i) {
    const std::int32_t idx = indices.indices[i];
    if (idx < 0 || static_cast<std::size_t>(idx) >= rows)
      throw DataError("embedding index " + std::to_string(idx) +
                      " at position " + std::to_string(i) +
                      " is outside table '" + table.name + "' with " +
                      std::to_string(rows) + " rows");
    std::memcpy(out.data() + i * dim, w.data().data() + idx * dim,
                dim * sizeof(double));
  }

  std::vector<std::int32_t> idx_copy = indices.indices;
  auto wnode = w.handle();
  return make_result(
      std::move(out), {len, dim}, {wnode},
      [idx_copy = std::move(idx_copy), dim](TensorData& self) {
        auto gw = self.parents[0]->grad_sink();
        for (std::size_t i = 0; i < idx_copy.size(); ++i) {
          const auto row = static_cast<std::size_t>(idx_copy[i]);
          kernels::axpy(1.0,
                        std::span<const double>(self.grad.data() + i * dim, dim),
                        gw.subspan(row * dim, dim));
        }
      });
}

Tensor conv1d_forward(const Tensor& input, const LayerParams& params) {
  if (params.kind != LayerKind::Conv1D)
    throw ConfigError("conv1d_forward: layer '" + params.name +
                      "' is not a Conv1D layer");
  if (input.shape().size() != 2)
    throw ConfigError("conv1d_forward expects a rank-2 [L, C_in] input");
  const std::size_t len = input.shape()[0];
  const std::size_t cin = input.shape()[1];
  const auto& wshape = params.weights.shape();
  const std::size_t cout = wshape[0];
  const std::size_t k = wshape[2];
  if (wshape[1] != cin)
    throw ConfigError("conv1d_forward: layer '" + params.name + "' expects " +
                      std::to_string(wshape[1]) + " input channels, got " +
                      std::to_string(cin));
  if (len < k)
    throw ConfigError("conv1d_forward: layer '" + params.name +
                      "' filter length " + std::to_string(k) +
                      " exceeds input length " + std::to_string(len));
  const std::size_t lout = len - k + 1;
  const std::size_t window = k * cin;

  // Weights repacked per filter as [j][c] so each output position reads the
  // input rows t..t+k-1 as one contiguous window.
  std::vector<double> wpack(cout * window);
  {
    const auto wd = params.weights.data();
    for (std::size_t f = 0; f < cout; ++f)
      for (std::size_t c = 0; c < cin; ++c)
        for (std::size_t j = 0; j < k; ++j)
          wpack[f * window + j * cin + c] = wd[(f * cin + c) * k + j];
  }

  std::vector<double> out(lout * cout);
  const double* in = input.data().data();
  for (std::size_t t = 0; t < lout; ++t)
    kernels::matvec(wpack.data(), cout, window, in + t * cin,
                    out.data() + t * cout);
  if (params.has_bias()) {
    const auto b = params.bias.data();
    for (std::size_t t = 0; t < lout; ++t)
      for (std::size_t f = 0; f < cout; ++f) out[t * cout + f] += b[f];
  }

  std::vector<std::shared_ptr<TensorData>> parents = {input.handle(),
                                                      params.weights.handle()};
  if (params.has_bias()) parents.push_back(params.bias.handle());
  const bool has_bias = params.has_bias();

  return make_result(
      std::move(out), {lout, cout}, std::move(parents),
      [wpack = std::move(wpack), lout, cout, cin, k, window,
       has_bias](TensorData& self) {
        TensorData& in_node = *self.parents[0];
        TensorData& w_node = *self.parents[1];
        const double* g = self.grad.data();

        if (in_node.requires_grad) {
          auto gin = in_node.grad_sink();
          for (std::size_t t = 0; t < lout; ++t)
            kernels::matvec_t_accum(wpack.data(), cout, window, g + t * cout,
                                    gin.data() + t * cin);
        }
        if (w_node.requires_grad) {
          std::vector<double> gpack(cout * window, 0.0);
          const double* in = in_node.data.data();
          for (std::size_t t = 0; t < lout; ++t) {
            const double* gt = g + t * cout;
            const double* win = in + t * cin;
            for (std::size_t f = 0; f < cout; ++f)
              if (gt[f] != 0.0)
                kernels::impl(kernels::active())
                    .axpy(gt[f], win, gpack.data() + f * window, window);
          }
          auto gw = w_node.grad_sink();
          for (std::size_t f = 0; f < cout; ++f)
            for (std::size_t c = 0; c < cin; ++c)
              for (std::size_t j = 0; j < k; ++j)
                gw[(f * cin + c) * k + j] += gpack[f * window + j * cin + c];
        }
        if (has_bias && self.parents[2]->requires_grad) {
          auto gb = self.parents[2]->grad_sink();
          for (std::size_t t = 0; t < lout; ++t)
            for (std::size_t f = 0; f < cout; ++f) gb[f] += g[t * cout + f];
        }
      });
}

Tensor relu(const Tensor& input) {
  std::vector<double> out(input.numel());
  kernels::relu(input.data(), out);
  return make_result(std::move(out), input.shape(), {input.handle()},
                     [](TensorData& self) {
                       TensorData& in_node = *self.parents[0];
                       if (!in_node.requires_grad) return;
                       kernels::relu_backward_accum(in_node.data, self.grad,
                                                    in_node.grad_sink());
                     });
}

Tensor global_max_pool(const Tensor& input) {
  if (input.shape().size() != 2)
    throw ConfigError("global_max_pool expects a rank-2 [L, C] input");
  const std::size_t len = input.shape()[0];
  const std::size_t ch = input.shape()[1];
  if (len < 1) throw ConfigError("global_max_pool: empty time axis");

  std::vector<double> out(ch);
  std::vector<std::size_t> argmax(ch, 0);
  const auto in = input.data();
  for (std::size_t c = 0; c < ch; ++c) out[c] = in[c];
  for (std::size_t t = 1; t < len; ++t)
    for (std::size_t c = 0; c < ch; ++c)
      if (in[t * ch + c] > out[c]) {  // strict: ties keep the earliest t
        out[c] = in[t * ch + c];
        argmax[c] = t;
      }

  return make_result(std::move(out), {ch}, {input.handle()},
                     [argmax = std::move(argmax), ch](TensorData& self) {
                       TensorData& in_node = *self.parents[0];
                       if (!in_node.requires_grad) return;
                       auto gin = in_node.grad_sink();
                       for (std::size_t c = 0; c < ch; ++c)
                         gin[argmax[c] * ch + c] += self.grad[c];
                     });
}

Tensor dense_forward(const Tensor& input, const LayerParams& params) {
  if (params.kind != LayerKind::Dense)
    throw ConfigError("dense_forward: layer '" + params.name +
                      "' is not a Dense layer");
  if (input.shape().size() != 1)
    throw ConfigError("dense_forward expects a rank-1 input");
  const auto& wshape = params.weights.shape();
  const std::size_t out_units = wshape[0];
  const std::size_t in_units = wshape[1];
  if (input.numel() != in_units)
    throw ConfigError("dense_forward: layer '" + params.name + "' expects [" +
                      std::to_string(in_units) + "] input, got [" +
                      std::to_string(input.numel()) + "]");

  std::vector<double> out(out_units);
  kernels::matvec(params.weights.data().data(), out_units, in_units,
                  input.data().data(), out.data());
  if (params.has_bias()) {
    const auto b = params.bias.data();
    for (std::size_t o = 0; o < out_units; ++o) out[o] += b[o];
  }

  std::vector<std::shared_ptr<TensorData>> parents = {input.handle(),
                                                      params.weights.handle()};
  if (params.has_bias()) parents.push_back(params.bias.handle());
  const bool has_bias = params.has_bias();

  return make_result(
      std::move(out), {out_units}, std::move(parents),
      [out_units, in_units, has_bias](TensorData& self) {
        TensorData& in_node = *self.parents[0];
        TensorData& w_node = *self.parents[1];
        const double* g = self.grad.data();
        const double* w = w_node.data.data();

        if (in_node.requires_grad)
          kernels::matvec_t_accum(w, out_units, in_units, g,
                                  in_node.grad_sink().data());
        if (w_node.requires_grad) {
          auto gw = w_node.grad_sink();
          for (std::size_t o = 0; o < out_units; ++o)
            if (g[o] != 0.0)
              kernels::axpy(g[o], in_node.data,
                            gw.subspan(o * in_units, in_units));
        }
        if (has_bias && self.parents[2]->requires_grad) {
          auto gb = self.parents[2]->grad_sink();
          for (std::size_t o = 0; o < out_units; ++o) gb[o] += g[o];
        }
      });
}

Tensor dropout(const Tensor& input, double rate, Mode mode, RngStream& rng) {
  if (rate < 0.0 || rate >= 1.0)
    throw ConfigError("dropout rate must be in [0, 1), got " +
                      std::to_string(rate));
  if (mode == Mode::Eval || rate == 0.0) return input;

  const double keep_scale = 1.0 / (1.0 - rate);
  std::vector<double> mask(input.numel());
  for (double& m : mask) m = rng.uniform() < rate ? 0.0 : keep_scale;

  std::vector<double> out(input.numel());
  kernels::mul(input.data(), mask, out);
  return make_result(std::move(out), input.shape(), {input.handle()},
                     [mask = std::move(mask)](TensorData& self) {
                       TensorData& in_node = *self.parents[0];
                       if (!in_node.requires_grad) return;
                       kernels::mul_accum(self.grad, mask, in_node.grad_sink());
                     });
}

Tensor concat(const Tensor& a, const Tensor& b) {
  if (a.shape().size() != 1 || b.shape().size() != 1)
    throw ConfigError("concat expects two rank-1 tensors");
  const std::size_t m = a.numel();
  const std::size_t n = b.numel();
  std::vector<double> out(m + n);
  std::copy(a.data().begin(), a.data().end(), out.begin());
  std::copy(b.data().begin(), b.data().end(), out.begin() + m);
  return make_result(std::move(out), {m + n}, {a.handle(), b.handle()},
                     [m, n](TensorData& self) {
                       TensorData& an = *self.parents[0];
                       TensorData& bn = *self.parents[1];
                       if (an.requires_grad)
                         kernels::axpy(1.0, std::span(self.grad).first(m),
                                       an.grad_sink());
                       if (bn.requires_grad)
                         kernels::axpy(1.0, std::span(self.grad).subspan(m, n),
                                       bn.grad_sink());
                     });
}

Tensor pack_scalars(const std::vector<Tensor>& scalars) {
  if (scalars.empty()) throw ConfigError("pack_scalars: empty input");
  std::vector<double> out;
  out.reserve(scalars.size());
  std::vector<std::shared_ptr<TensorData>> parents;
  parents.reserve(scalars.size());
  for (const auto& s : scalars) {
    if (s.numel() != 1) throw ConfigError("pack_scalars expects scalar tensors");
    out.push_back(s.at(0));
    parents.push_back(s.handle());
  }
  return make_result(std::move(out), {scalars.size()}, std::move(parents),
                     [](TensorData& self) {
                       for (std::size_t i = 0; i < self.parents.size(); ++i) {
                         TensorData& p = *self.parents[i];
                         if (p.requires_grad) p.grad_sink()[0] += self.grad[i];
                       }
                     });
}

Tensor sum(const Tensor& input) {
  double s = 0.0;
  for (double v : input.data()) s += v;
  return make_result({s}, {1}, {input.handle()}, [](TensorData& self) {
    TensorData& in_node = *self.parents[0];
    if (!in_node.requires_grad) return;
    auto gin = in_node.grad_sink();
    const double g = self.grad[0];
    for (double& v : gin) v += g;
  });
}

Tensor mse_loss(const Tensor& predictions, const Tensor& targets) {
  if (predictions.shape().size() != 1 || targets.shape().size() != 1 ||
      predictions.numel() != targets.numel())
    throw ConfigError("mse_loss: predictions [" +
                      std::to_string(predictions.numel()) + "] and targets [" +
                      std::to_string(targets.numel()) + "] must match");
  const std::size_t n = predictions.numel();
  if (n < 1) throw ConfigError("mse_loss: empty batch");
  const double loss = kernels::sq_diff_sum(predictions.data(), targets.data()) /
                      static_cast<double>(n);
  return make_result(
      {loss}, {1}, {predictions.handle(), targets.handle()},
      [n](TensorData& self) {
        TensorData& p = *self.parents[0];
        TensorData& y = *self.parents[1];
        const double scale = 2.0 / static_cast<double>(n) * self.grad[0];
        if (p.requires_grad) {
          auto gp = p.grad_sink();
          for (std::size_t i = 0; i < n; ++i)
            gp[i] += scale * (p.data[i] - y.data[i]);
        }
        if (y.requires_grad) {
          auto gy = y.grad_sink();
          for (std::size_t i = 0; i < n; ++i)
            gy[i] -= scale * (p.data[i] - y.data[i]);
        }
      });
}

}  // namespace dta::nn
