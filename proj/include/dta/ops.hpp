#pragma once

#include <optional>
#include <string>

#include "dta/encoding.hpp"
#include "dta/rng.hpp"
#include "dta/tensor.hpp"

namespace dta::nn {

enum class LayerKind { Embedding, Conv1D, Dense };
enum class Mode { Train, Eval };

struct LayerParams {
  std::string name;
  LayerKind kind;
  Tensor weights;
  Tensor bias;  // undefined handle when the layer has no bias

  bool has_bias() const { return bias.defined(); }
};

/// Looks up one embedding row per index. Output is [sequence_length,
/// embed_dim]; index 0 selects the learned padding row. Gradients flow only
/// into looked-up rows.
Tensor embedding_forward(const enc::EncodedSequence& indices,
                         const LayerParams& table);

/// Valid 1D convolution, stride 1: input [L, C_in], weights
/// [C_out, C_in, k], output [L - k + 1, C_out].
Tensor conv1d_forward(const Tensor& input, const LayerParams& params);

Tensor relu(const Tensor& input);

/// Per-channel max over the time axis: [L, C] -> [C]. Gradient goes to the
/// first maximal timestep of each channel.
Tensor global_max_pool(const Tensor& input);

/// out = W x + b with W [out_units, in_units].
Tensor dense_forward(const Tensor& input, const LayerParams& params);

/// Inverted dropout. Eval mode is the identity; Train mode zeroes each
/// element with probability `rate` and scales survivors by 1/(1-rate).
Tensor dropout(const Tensor& input, double rate, Mode mode, RngStream& rng);

/// Rank-1 concatenation.
Tensor concat(const Tensor& a, const Tensor& b);

/// Stacks n scalar tensors into one rank-1 tensor of length n.
Tensor pack_scalars(const std::vector<Tensor>& scalars);

/// Elementwise sum to a scalar.
Tensor sum(const Tensor& input);

/// (1/n) sum (p_i - y_i)^2. Gradient w.r.t. predictions is (2/n)(P - Y).
Tensor mse_loss(const Tensor& predictions, const Tensor& targets);

}  // namespace dta::nn
