#pragma once

#include <cstdint>
#include <vector>

#include "dta/ops.hpp"

namespace dta::nn {

struct NamedParam {
  std::string name;
  Tensor tensor;
};

/// Adam with bias correction. Moment buffers are laid out per parameter in
/// the order the optimizer was constructed with; that order must be stable
/// across steps.
class AdamState {
 public:
  AdamState() = default;
  AdamState(const std::vector<NamedParam>& params, double learning_rate,
            double beta1 = 0.9, double beta2 = 0.999, double epsilon = 1e-8);

  std::int64_t step_count() const { return step_count_; }
  double learning_rate() const { return lr_; }
  double beta1() const { return beta1_; }
  double beta2() const { return beta2_; }
  double epsilon() const { return eps_; }
  const std::vector<double>& first_moment(std::size_t i) const { return m_[i]; }
  const std::vector<double>& second_moment(std::size_t i) const { return v_[i]; }

  friend void adam_step(const std::vector<NamedParam>& params, AdamState& state);

 private:
  std::int64_t step_count_ = 0;
  double lr_ = 1e-3;
  double beta1_ = 0.9;
  double beta2_ = 0.999;
  double eps_ = 1e-8;
  std::vector<std::vector<double>> m_;
  std::vector<std::vector<double>> v_;
};

/// One Adam update over all parameters. Gradients must be populated for
/// every parameter and are left untouched; the caller resets them.
void adam_step(const std::vector<NamedParam>& params, AdamState& state);

void zero_grads(const std::vector<NamedParam>& params);

}  // namespace dta::nn
