#pragma once

#include <functional>
#include <string>
#include <vector>

#include "coref/params.hpp"

namespace coref {

// Reverse-mode tape over dense double vectors. A fresh tape is built per
// forward pass; parameters enter as cached leaf nodes whose gradients are
// flushed into a GradientMap by backward().
class Tape {
  public:
    using NodeId = int;

    explicit Tape(const ParameterSet& params) : params_(&params) {}

    NodeId input(std::vector<double> value);
    NodeId constant(double value) { return input({value}); }

    // Leaf for a named parameter array; one node per name per tape.
    NodeId param(const std::string& name);

    // y = W x + b with W row-major (rows x cols), b length rows.
    NodeId linear(NodeId w, NodeId b, NodeId x, int rows, int cols);
    NodeId relu(NodeId x);
    NodeId tanh_op(NodeId x);
    NodeId add(NodeId a, NodeId b);
    NodeId concat(const std::vector<NodeId>& parts);
    NodeId hadamard(NodeId a, NodeId b);
    NodeId mean(const std::vector<NodeId>& parts);
    // One row of a (rows x cols) matrix node.
    NodeId row(NodeId matrix, int r, int cols);
    // Vector from the first component of each scalar node.
    NodeId stack_scalars(const std::vector<NodeId>& scalars);
    NodeId softmax(NodeId logits);
    // sum_t weights[t] * xs[t]
    NodeId weighted_sum(NodeId weights, const std::vector<NodeId>& xs);

    // Scalar losses.
    NodeId bce_with_logits(NodeId logit, double target);
    NodeId sum_scalars(const std::vector<NodeId>& scalars);
    // -log sum_{gold} P over softmax of [0 (epsilon), logits...];
    // epsilon_gold marks whether the dummy antecedent is in the gold set.
    NodeId marginal_nll(const std::vector<NodeId>& antecedent_logits,
                        const std::vector<char>& is_gold, bool epsilon_gold);

    const std::vector<double>& value(NodeId id) const { return nodes_[id].value; }
    double scalar(NodeId id) const { return nodes_[id].value[0]; }

    // Seeds d(loss)=1, runs the tape in reverse, and accumulates parameter
    // gradients (+=) into grads.
    void backward(NodeId loss, GradientMap& grads);

  private:
    struct Node {
        std::vector<double> value;
        std::vector<double> grad;
        std::function<void(Tape&, Node&)> backprop;  // null for leaves
        std::string param_name;                      // non-empty for param leaves
    };

    NodeId push(std::vector<double> value, std::function<void(Tape&, Node&)> backprop);
    std::vector<double>& grad(NodeId id) { return nodes_[id].grad; }

    const ParameterSet* params_;
    std::vector<Node> nodes_;
    std::map<std::string, NodeId> param_nodes_;
};

}  // namespace coref
