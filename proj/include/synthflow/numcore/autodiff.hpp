#pragma once

#include "synthflow/numcore/tensor.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace synthflow::numcore {

template <typename Scalar>
struct Node {
  Tensor<Scalar> value;
  Tensor<Scalar> grad;  // empty until something flows into it
  std::vector<std::shared_ptr<Node>> inputs;
  // Reads this node's grad and accumulates into the inputs' grads.
  std::function<void(Node&)> backward;
  bool requires_grad = false;
  std::string op;    // op-kind for graph records, "leaf" for parameters/constants
  std::string name;  // parameter name, empty for intermediates

  void accumulate(const Tensor<Scalar>& g);
  void accumulate(const typename Tensor<Scalar>::Vector& g);
};

// Handle to a graph node. Copies share the node.
template <typename Scalar>
class Var {
 public:
  using NodeType = Node<Scalar>;
  using Backward = std::function<void(NodeType&)>;

  Var() = default;
  explicit Var(std::shared_ptr<NodeType> node) : node_(std::move(node)) {}

  static Var constant(Tensor<Scalar> value);
  static Var parameter(Tensor<Scalar> value, std::string name);

  // Records an op result. Inputs and the backward rule are kept only when
  // at least one input requires grad.
  static Var make(Tensor<Scalar> value, std::string op, std::vector<Var> inputs, Backward backward);

  bool defined() const { return node_ != nullptr; }
  const Tensor<Scalar>& value() const { return node_->value; }
  Tensor<Scalar>& mutable_value() { return node_->value; }
  const Tensor<Scalar>& grad() const { return node_->grad; }
  bool has_grad() const { return !node_->grad.empty(); }
  void zero_grad() { node_->grad = Tensor<Scalar>(); }
  bool requires_grad() const { return node_->requires_grad; }
  const std::string& name() const { return node_->name; }
  const std::string& op() const { return node_->op; }
  const Shape& shape() const { return node_->value.shape(); }
  Index size() const { return node_->value.size(); }
  Scalar item() const { return node_->value.item(); }
  NodeType* node() const { return node_.get(); }
  const std::shared_ptr<NodeType>& shared() const { return node_; }

  // Same value, no history.
  Var detach() const { return constant(node_->value); }

 private:
  std::shared_ptr<NodeType> node_;
};

// Topologically ordered view of the nodes reachable from a root that
// participate in differentiation.
template <typename Scalar>
class GradGraph {
 public:
  static GradGraph build(const Var<Scalar>& root);

  std::size_t size() const { return order_.size(); }
  const std::vector<Node<Scalar>*>& nodes() const { return order_; }

  // Seeds d(root)/d(root) = 1 and runs every backward rule once, in reverse
  // topological order.
  void run_backward();

 private:
  std::vector<Node<Scalar>*> order_;  // inputs before consumers
  Node<Scalar>* root_ = nullptr;
};

// Computes gradients of a scalar loss into every reachable leaf that
// requires grad. Throws ShapeError for a non-scalar loss.
template <typename Scalar>
GradGraph<Scalar> backward(const Var<Scalar>& loss);

}  // namespace synthflow::numcore
