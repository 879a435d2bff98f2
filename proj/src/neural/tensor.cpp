#include "dta/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dta/error.hpp"
#include "dta/kernels.hpp"

namespace dta::nn {

namespace {

std::size_t shape_numel(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t s : shape) {
    if (s == 0) throw ConfigError("tensor shape has a zero dimension");
    n *= s;
  }
  return n;
}

thread_local GradScope* t_scope = nullptr;
thread_local int t_no_grad_depth = 0;

}  // namespace

NoGradGuard::NoGradGuard() { ++t_no_grad_depth; }
NoGradGuard::~NoGradGuard() { --t_no_grad_depth; }
bool NoGradGuard::recording_enabled() { return t_no_grad_depth == 0; }

std::span<double> TensorData::grad_sink() {
  if (requires_grad && is_leaf()) {
    if (GradScope* s = GradScope::current()) {
      auto redirected = s->slot(this);
      if (!redirected.empty()) return redirected;
    }
  }
  ensure_grad();
  return grad;
}

Tensor Tensor::zeros(std::vector<std::size_t> shape, bool requires_grad) {
  auto d = std::make_shared<TensorData>();
  d->data.assign(shape_numel(shape), 0.0);
  d->shape = std::move(shape);
  d->requires_grad = requires_grad;
  return Tensor(std::move(d));
}

Tensor Tensor::from(std::vector<double> values, std::vector<std::size_t> shape,
                    bool requires_grad) {
  if (shape_numel(shape) != values.size())
    throw ConfigError("tensor data length " + std::to_string(values.size()) +
                      " does not match shape product " +
                      std::to_string(shape_numel(shape)));
  auto d = std::make_shared<TensorData>();
  d->data = std::move(values);
  d->shape = std::move(shape);
  d->requires_grad = requires_grad;
  return Tensor(std::move(d));
}

Tensor Tensor::scalar(double v, bool requires_grad) {
  return from({v}, {1}, requires_grad);
}

Tensor Tensor::vector(std::vector<double> values, bool requires_grad) {
  const std::size_t n = values.size();
  return from(std::move(values), {n}, requires_grad);
}

double Tensor::value() const {
  if (numel() != 1) throw ConfigError("value() called on non-scalar tensor");
  return d_->data[0];
}

bool Tensor::all_finite() const {
  return std::all_of(d_->data.begin(), d_->data.end(),
                     [](double v) { return std::isfinite(v); });
}

namespace {

void run_backward(TensorData* root, std::span<const double> seed) {
  if (!root->requires_grad) return;

  // Reverse topological order via iterative post-order DFS. Parents are
  // visited in recorded order, so the walk is deterministic.
  std::vector<TensorData*> order;
  std::vector<std::pair<TensorData*, std::size_t>> stack;
  std::unordered_map<TensorData*, bool> visited;
  stack.emplace_back(root, 0);
  visited[root] = true;
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      TensorData* p = node->parents[next++].get();
      if (p->requires_grad && !visited[p]) {
        visited[p] = true;
        stack.emplace_back(p, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  {
    auto sink = root->grad_sink();
    for (std::size_t i = 0; i < seed.size(); ++i) sink[i] += seed[i];
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    TensorData* node = *it;
    if (node->backward_fn) node->backward_fn(*node);
  }
}

}  // namespace

void backward(const Tensor& loss) {
  if (loss.numel() != 1)
    throw ConfigError("backward() requires a scalar loss tensor, got " +
                      std::to_string(loss.numel()) + " elements");
  const double one = 1.0;
  run_backward(loss.node(), std::span<const double>(&one, 1));
}

void backward_with_seed(const Tensor& output, std::span<const double> seed) {
  if (seed.size() != output.numel())
    throw ConfigError("seed gradient length does not match output");
  run_backward(output.node(), seed);
}

void GradScope::adopt(const Tensor& leaf) {
  if (index_.count(leaf.node())) return;
  index_[leaf.node()] = slots_.size();
  slots_.emplace_back(leaf.handle(), std::vector<double>(leaf.numel(), 0.0));
}

std::span<double> GradScope::slot(const TensorData* leaf) {
  auto it = index_.find(leaf);
  if (it == index_.end()) return {};
  return slots_[it->second].second;
}

void GradScope::flush() {
  for (auto& [node, buf] : slots_) {
    node->ensure_grad();
    kernels::axpy(1.0, buf, node->grad);
    std::fill(buf.begin(), buf.end(), 0.0);
  }
}

GradScope* GradScope::current() { return t_scope; }

GradScope::Activation::Activation(GradScope& s) : prev_(t_scope) { t_scope = &s; }
GradScope::Activation::~Activation() { t_scope = prev_; }

}  // namespace dta::nn
