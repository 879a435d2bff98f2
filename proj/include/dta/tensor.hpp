#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace dta::nn {

class Tensor;

/// Shared storage plus the reverse-mode record. Every operation that
/// produces a tensor from differentiable inputs stores its parents and a
/// closure that pushes this node's gradient into theirs; the graph is just
/// the web of shared_ptrs and is freed when the tensors holding it go away.
struct TensorData {
  std::vector<std::size_t> shape;
  std::vector<double> data;
  std::vector<double> grad;  // allocated on first accumulation
  bool requires_grad = false;

  std::vector<std::shared_ptr<TensorData>> parents;
  std::function<void(TensorData&)> backward_fn;

  std::size_t numel() const { return data.size(); }
  bool is_leaf() const { return parents.empty(); }

  /// Span to accumulate gradients into. For leaf tensors this honors an
  /// active GradScope redirect, which is how concurrent per-sample
  /// backward passes avoid racing on shared parameters.
  std::span<double> grad_sink();

  void ensure_grad() {
    if (grad.size() != data.size()) grad.assign(data.size(), 0.0);
  }
};

/// Value-semantics handle onto shared TensorData.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::shared_ptr<TensorData> d) : d_(std::move(d)) {}

  static Tensor zeros(std::vector<std::size_t> shape, bool requires_grad = false);
  static Tensor from(std::vector<double> values, std::vector<std::size_t> shape,
                     bool requires_grad = false);
  static Tensor scalar(double v, bool requires_grad = false);
  static Tensor vector(std::vector<double> values, bool requires_grad = false);

  bool defined() const { return d_ != nullptr; }
  const std::vector<std::size_t>& shape() const { return d_->shape; }
  std::size_t numel() const { return d_->numel(); }
  std::span<const double> data() const { return d_->data; }
  std::span<double> mutable_data() { return d_->data; }
  std::span<const double> grad() const { return d_->grad; }
  bool requires_grad() const { return d_->requires_grad; }
  double value() const;  // scalar tensors only
  double at(std::size_t i) const { return d_->data[i]; }
  double at(std::size_t i, std::size_t j) const {
    return d_->data[i * d_->shape[1] + j];
  }

  void zero_grad() {
    if (!d_->grad.empty()) std::fill(d_->grad.begin(), d_->grad.end(), 0.0);
  }
  bool all_finite() const;

  TensorData* node() const { return d_.get(); }
  const std::shared_ptr<TensorData>& handle() const { return d_; }

 private:
  std::shared_ptr<TensorData> d_;
};

/// Runs reverse-mode accumulation from a scalar tensor: seeds d(loss)/d(loss)
/// = 1 and walks the recorded graph in reverse topological order. Gradients
/// accumulate; call zero_grad on parameters between steps.
void backward(const Tensor& loss);

/// Same walk but with an explicit seed gradient for a non-scalar (or scalar)
/// output; used by the streaming training loop where the loss gradient per
/// sample is known in closed form.
void backward_with_seed(const Tensor& output, std::span<const double> seed);

/// While alive on a thread, operations do not record the backward graph
/// (pure inference). Nestable.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

  static bool recording_enabled();
};

/// Redirects leaf-gradient accumulation into private per-scope buffers.
/// A worker thread activates one scope, runs any number of backward passes,
/// and the owner later flushes buffers into the real .grad arrays in a
/// fixed order.
class GradScope {
 public:
  void adopt(const Tensor& leaf);
  std::span<double> slot(const TensorData* leaf);  // empty span if not adopted
  void flush();                                    // leaf.grad += buffer, then clears buffer

  class Activation {
   public:
    explicit Activation(GradScope& s);
    ~Activation();
    Activation(const Activation&) = delete;
    Activation& operator=(const Activation&) = delete;

   private:
    GradScope* prev_;
  };

  static GradScope* current();

 private:
  std::vector<std::pair<std::shared_ptr<TensorData>, std::vector<double>>> slots_;
  std::unordered_map<const TensorData*, std::size_t> index_;
};

}  // namespace dta::nn
