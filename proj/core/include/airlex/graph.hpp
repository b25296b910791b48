#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "airlex/tensor.hpp"

namespace airlex {

/// One node on the reverse-mode tape: a value plus the rule for pushing
/// its gradient back into its parents.
struct Node {
    Tensor value;
    std::vector<double> grad;  // same length as value.data, zero-initialised
    std::vector<std::shared_ptr<Node>> parents;
    std::function<void(Node&)> backprop;  // distributes this->grad to parents
    Tensor* param = nullptr;              // leaf bound to an external weight tensor

    explicit Node(Tensor v) : value(std::move(v)), grad(value.size(), 0.0) {}
};

using Var = std::shared_ptr<Node>;

/// Reverse-mode tape. Nodes are recorded in creation order; backward()
/// walks them in reverse. A graph is built per loss evaluation and
/// discarded afterwards.
///
/// Gradient accumulation rule: backward() ACCUMULATES into the bound
/// parameter tensors' grad buffers. Callers reset with Mlp::zero_grad()
/// (or Tensor::zero_grad()) before building the next loss.
class Graph {
  public:
    Var constant(Tensor v);
    Var constant(double v) { return constant(Tensor::scalar(v)); }

    /// Leaf bound to an external tensor; backward accumulates into t.grad.
    Var param(Tensor& t);

    /// W [m,n] times x [n] -> [m].
    Var matvec(Var W, Var x);

    /// Elementwise sum, shapes must match.
    Var add(Var a, Var b);
    Var sub(Var a, Var b);

    /// Elementwise product, shapes must match.
    Var mul(Var a, Var b);

    Var scale(Var a, double c);
    Var tanh_(Var a);
    Var exp_(Var a);
    Var softplus(Var a);

    /// log softmax over a 1-D vector.
    Var log_softmax(Var logits);

    /// Single element of a 1-D vector as a scalar node.
    Var pick(Var v, std::size_t index);

    /// Sum of all elements as a scalar node.
    Var sum(Var v);

    /// Seeds the scalar loss with gradient 1 and sweeps the tape once.
    /// ContractError if loss is not scalar or backward already ran.
    void backward(Var loss);

    std::size_t node_count() const { return nodes_.size(); }

  private:
    Var record(Var n);
    std::vector<Var> nodes_;
    bool swept_ = false;
};

}  // namespace airlex
