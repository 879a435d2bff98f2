#include "dta/adam.hpp"

#include <cmath>

#include "dta/error.hpp"
#include "dta/kernels.hpp"

namespace dta::nn {

AdamState::AdamState(const std::vector<NamedParam>& params, double learning_rate,
                     double beta1, double beta2, double epsilon)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon) {
  m_.reserve(params.size());
  v_.reserve(params.size());
  for (const auto& p : params) {
    m_.emplace_back(p.tensor.numel(), 0.0);
    v_.emplace_back(p.tensor.numel(), 0.0);
  }
}

void adam_step(const std::vector<NamedParam>& params, AdamState& state) {
  if (params.size() != state.m_.size())
    throw ConfigError("adam_step: optimizer state built for " +
                      std::to_string(state.m_.size()) + " parameters, got " +
                      std::to_string(params.size()));
  for (const auto& p : params)
    if (p.tensor.grad().size() != p.tensor.numel())
      throw ConfigError("adam_step: parameter '" + p.name +
                        "' has no gradient");

  state.step_count_ += 1;
  const double t = static_cast<double>(state.step_count_);
  const double c1 = 1.0 / (1.0 - std::pow(state.beta1_, t));
  const double c2 = 1.0 / (1.0 - std::pow(state.beta2_, t));

  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor tensor = params[i].tensor;
    kernels::adam_update(tensor.mutable_data(), tensor.grad(), state.m_[i],
                         state.v_[i], state.lr_, c1, c2, state.beta1_,
                         state.beta2_, state.eps_);
  }
}

void zero_grads(const std::vector<NamedParam>& params) {
  for (const auto& p : params) {
    Tensor t = p.tensor;
    t.zero_grad();
  }
}

}  // namespace dta::nn
