#ifndef GLPN_AUTODIFF_HPP
#define GLPN_AUTODIFF_HPP

#include <memory>
#include <vector>

#include "glpn/dense_matrix.hpp"

namespace glpn {

/// Reverse-mode tape over dense-matrix expressions.
///
/// Nodes are appended in evaluation order, so the list is already a
/// topological order; backward() walks it once in reverse. A tape is confined
/// to one thread; independent tapes may run in parallel.
class Tape {
public:
    using NodeId = int;

    NodeId constant(DenseMatrix value);
    NodeId parameter(DenseMatrix value);

    NodeId matmul(NodeId a, NodeId b);
    NodeId add(NodeId a, NodeId b);
    NodeId subtract(NodeId a, NodeId b);
    NodeId scale(NodeId a, double factor);
    /// Multiply a matrix node by a 1x1 node (gradients flow to both).
    NodeId scale_by(NodeId a, NodeId scalar_node);
    NodeId hadamard(NodeId a, NodeId b);
    NodeId transpose(NodeId a);
    NodeId row_softmax(NodeId a);
    NodeId tanh(NodeId a);
    NodeId relu(NodeId a);
    NodeId sigmoid(NodeId a);
    /// Mean of squared differences over entries where mask == 1; returns a
    /// 1x1 node. Throws ContractError when the mask is all zero.
    NodeId masked_mean_sq(NodeId pred, const DenseMatrix& target, const DenseMatrix& mask);

    const DenseMatrix& value(NodeId id) const { return nodes_[id].value; }
    const DenseMatrix& grad(NodeId id) const { return nodes_[id].grad; }

    /// Populate gradients of everything reachable from `loss` (1x1 node).
    /// Repeated calls re-zero and reproduce identical gradients.
    void backward(NodeId loss);

    std::size_t size() const { return nodes_.size(); }

private:
    enum class Op {
        kConstant,
        kParameter,
        kMatmul,
        kAdd,
        kSubtract,
        kScaleConst,
        kScaleNode,
        kHadamard,
        kTranspose,
        kRowSoftmax,
        kTanh,
        kRelu,
        kSigmoid,
        kMaskedMeanSq,
    };
    struct Node {
        Op op;
        NodeId a = -1;
        NodeId b = -1;
        double factor = 0.0;
        DenseMatrix value;
        DenseMatrix grad;
        std::shared_ptr<const DenseMatrix> target;  // masked_mean_sq only
        std::shared_ptr<const DenseMatrix> mask;
        bool needs_grad = false;
    };

    NodeId push(Node node);
    bool wants(NodeId id) const { return id >= 0 && nodes_[id].needs_grad; }
    void accumulate(NodeId id, const DenseMatrix& delta);

    std::vector<Node> nodes_;
};

/// Adam with bias correction. Moments are kept per parameter in registration
/// order; shapes are checked on every step.
class Adam {
public:
    struct Options {
        double lr = 1e-3;
        double beta1 = 0.9;
        double beta2 = 0.999;
        double eps = 1e-8;
    };

    explicit Adam(Options opts = {}) : opts_(opts) {}

    /// Apply one update. params[i] is modified in place using grads[i].
    void step(std::vector<DenseMatrix*> params, std::vector<const DenseMatrix*> grads);

    long steps_taken() const { return t_; }
    const Options& options() const { return opts_; }

private:
    Options opts_;
    long t_ = 0;
    std::vector<DenseMatrix> m_;
    std::vector<DenseMatrix> v_;
};

}  // namespace glpn

#endif  // GLPN_AUTODIFF_HPP
