#include "glpn/autodiff.hpp"

#include <cmath>
#include <string>

#include "glpn/errors.hpp"
#include "glpn/linalg.hpp"

namespace glpn {

Tape::NodeId Tape::push(Node node) {
    nodes_.push_back(std::move(node));
    return static_cast<NodeId>(nodes_.size() - 1);
}

Tape::NodeId Tape::constant(DenseMatrix value) {
    Node n;
    n.op = Op::kConstant;
    n.value = std::move(value);
    return push(std::move(n));
}

Tape::NodeId Tape::parameter(DenseMatrix value) {
    Node n;
    n.op = Op::kParameter;
    n.value = std::move(value);
    n.needs_grad = true;
    return push(std::move(n));
}

Tape::NodeId Tape::matmul(NodeId a, NodeId b) {
    Node n;
    n.op = Op::kMatmul;
    n.a = a;
    n.b = b;
    n.value = glpn::matmul(nodes_[a].value, nodes_[b].value);
    n.needs_grad = wants(a) || wants(b);
    return push(std::move(n));
}

Tape::NodeId Tape::add(NodeId a, NodeId b) {
    Node n;
    n.op = Op::kAdd;
    n.a = a;
    n.b = b;
    n.value = glpn::add(nodes_[a].value, nodes_[b].value);
    n.needs_grad = wants(a) || wants(b);
    return push(std::move(n));
}

Tape::NodeId Tape::subtract(NodeId a, NodeId b) {
    Node n;
    n.op = Op::kSubtract;
    n.a = a;
    n.b = b;
    n.value = glpn::subtract(nodes_[a].value, nodes_[b].value);
    n.needs_grad = wants(a) || wants(b);
    return push(std::move(n));
}

Tape::NodeId Tape::scale(NodeId a, double factor) {
    Node n;
    n.op = Op::kScaleConst;
    n.a = a;
    n.factor = factor;
    n.value = glpn::scale(nodes_[a].value, factor);
    n.needs_grad = wants(a);
    return push(std::move(n));
}

Tape::NodeId Tape::scale_by(NodeId a, NodeId scalar_node) {
    if (nodes_[scalar_node].value.rows() != 1 || nodes_[scalar_node].value.cols() != 1) {
        throw DimensionError("scale_by: scalar node must be 1x1");
    }
    Node n;
    n.op = Op::kScaleNode;
    n.a = a;
    n.b = scalar_node;
    n.value = glpn::scale(nodes_[a].value, nodes_[scalar_node].value(0, 0));
    n.needs_grad = wants(a) || wants(scalar_node);
    return push(std::move(n));
}

Tape::NodeId Tape::hadamard(NodeId a, NodeId b) {
    Node n;
    n.op = Op::kHadamard;
    n.a = a;
    n.b = b;
    n.value = glpn::hadamard(nodes_[a].value, nodes_[b].value);
    n.needs_grad = wants(a) || wants(b);
    return push(std::move(n));
}

Tape::NodeId Tape::transpose(NodeId a) {
    Node n;
    n.op = Op::kTranspose;
    n.a = a;
    n.value = glpn::transpose(nodes_[a].value);
    n.needs_grad = wants(a);
    return push(std::move(n));
}

Tape::NodeId Tape::row_softmax(NodeId a) {
    const DenseMatrix& x = nodes_[a].value;
    DenseMatrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double mx = x(i, 0);
        for (std::size_t j = 1; j < x.cols(); ++j) mx = std::max(mx, x(i, j));
        double sum = 0.0;
        for (std::size_t j = 0; j < x.cols(); ++j) {
            out(i, j) = std::exp(x(i, j) - mx);
            sum += out(i, j);
        }
        for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) /= sum;
    }
    Node n;
    n.op = Op::kRowSoftmax;
    n.a = a;
    n.value = std::move(out);
    n.needs_grad = wants(a);
    return push(std::move(n));
}

Tape::NodeId Tape::tanh(NodeId a) {
    Node n;
    n.op = Op::kTanh;
    n.a = a;
    n.value = nodes_[a].value;
    for (std::size_t i = 0; i < n.value.size(); ++i) n.value.data()[i] = std::tanh(n.value.data()[i]);
    n.needs_grad = wants(a);
    return push(std::move(n));
}

Tape::NodeId Tape::relu(NodeId a) {
    Node n;
    n.op = Op::kRelu;
    n.a = a;
    n.value = nodes_[a].value;
    for (std::size_t i = 0; i < n.value.size(); ++i) n.value.data()[i] = std::max(0.0, n.value.data()[i]);
    n.needs_grad = wants(a);
    return push(std::move(n));
}

Tape::NodeId Tape::sigmoid(NodeId a) {
    Node n;
    n.op = Op::kSigmoid;
    n.a = a;
    n.value = nodes_[a].value;
    for (std::size_t i = 0; i < n.value.size(); ++i) {
        n.value.data()[i] = 1.0 / (1.0 + std::exp(-n.value.data()[i]));
    }
    n.needs_grad = wants(a);
    return push(std::move(n));
}

Tape::NodeId Tape::masked_mean_sq(NodeId pred, const DenseMatrix& target,
                                  const DenseMatrix& mask) {
    const DenseMatrix& p = nodes_[pred].value;
    if (!p.same_shape(target) || !p.same_shape(mask)) {
        throw DimensionError("masked_mean_sq: shape mismatch");
    }
    double count = 0.0, acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (mask.data()[i] != 0.0) {
            const double diff = p.data()[i] - target.data()[i];
            acc += diff * diff;
            count += 1.0;
        }
    }
    if (count == 0.0) {
        throw ContractError("masked_mean_sq: mask selects no entries");
    }
    Node n;
    n.op = Op::kMaskedMeanSq;
    n.a = pred;
    n.value = DenseMatrix(1, 1, acc / count);
    n.target = std::make_shared<DenseMatrix>(target);
    n.mask = std::make_shared<DenseMatrix>(mask);
    n.needs_grad = wants(pred);
    return push(std::move(n));
}

void Tape::accumulate(NodeId id, const DenseMatrix& delta) {
    Node& n = nodes_[id];
    if (n.grad.size() == 0) {
        n.grad = delta;
        return;
    }
    for (std::size_t i = 0; i < n.grad.size(); ++i) n.grad.data()[i] += delta.data()[i];
}

void Tape::backward(NodeId loss) {
    if (nodes_[loss].value.rows() != 1 || nodes_[loss].value.cols() != 1) {
        throw ContractError("backward: loss node must be 1x1");
    }
    for (Node& n : nodes_) {
        n.grad = DenseMatrix(n.value.rows(), n.value.cols());
    }
    nodes_[loss].grad(0, 0) = 1.0;

    for (NodeId id = loss; id >= 0; --id) {
        Node& n = nodes_[id];
        if (!n.needs_grad || n.grad.size() == 0) continue;
        const DenseMatrix& g = n.grad;
        switch (n.op) {
            case Op::kConstant:
            case Op::kParameter:
                break;
            case Op::kMatmul:
                if (wants(n.a)) accumulate(n.a, matmul_nt(g, nodes_[n.b].value));
                if (wants(n.b)) accumulate(n.b, matmul_tn(nodes_[n.a].value, g));
                break;
            case Op::kAdd:
                if (wants(n.a)) accumulate(n.a, g);
                if (wants(n.b)) accumulate(n.b, g);
                break;
            case Op::kSubtract:
                if (wants(n.a)) accumulate(n.a, g);
                if (wants(n.b)) accumulate(n.b, glpn::scale(g, -1.0));
                break;
            case Op::kScaleConst:
                if (wants(n.a)) accumulate(n.a, glpn::scale(g, n.factor));
                break;
            case Op::kScaleNode: {
                const double s = nodes_[n.b].value(0, 0);
                if (wants(n.a)) accumulate(n.a, glpn::scale(g, s));
                if (wants(n.b)) {
                    double acc = 0.0;
                    const DenseMatrix& av = nodes_[n.a].value;
                    for (std::size_t i = 0; i < av.size(); ++i) acc += g.data()[i] * av.data()[i];
                    accumulate(n.b, DenseMatrix(1, 1, acc));
                }
                break;
            }
            case Op::kHadamard:
                if (wants(n.a)) accumulate(n.a, glpn::hadamard(g, nodes_[n.b].value));
                if (wants(n.b)) accumulate(n.b, glpn::hadamard(g, nodes_[n.a].value));
                break;
            case Op::kTranspose:
                if (wants(n.a)) accumulate(n.a, glpn::transpose(g));
                break;
            case Op::kRowSoftmax: {
                if (!wants(n.a)) break;
                const DenseMatrix& s = n.value;
                DenseMatrix dz(s.rows(), s.cols());
                for (std::size_t i = 0; i < s.rows(); ++i) {
                    double dot = 0.0;
                    for (std::size_t j = 0; j < s.cols(); ++j) dot += g(i, j) * s(i, j);
                    for (std::size_t j = 0; j < s.cols(); ++j) {
                        dz(i, j) = (g(i, j) - dot) * s(i, j);
                    }
                }
                accumulate(n.a, dz);
                break;
            }
            case Op::kTanh: {
                if (!wants(n.a)) break;
                DenseMatrix dz = g;
                for (std::size_t i = 0; i < dz.size(); ++i) {
                    const double t = n.value.data()[i];
                    dz.data()[i] *= (1.0 - t * t);
                }
                accumulate(n.a, dz);
                break;
            }
            case Op::kRelu: {
                if (!wants(n.a)) break;
                DenseMatrix dz = g;
                const DenseMatrix& input = nodes_[n.a].value;
                for (std::size_t i = 0; i < dz.size(); ++i) {
                    if (input.data()[i] <= 0.0) dz.data()[i] = 0.0;
                }
                accumulate(n.a, dz);
                break;
            }
            case Op::kSigmoid: {
                if (!wants(n.a)) break;
                DenseMatrix dz = g;
                for (std::size_t i = 0; i < dz.size(); ++i) {
                    const double s = n.value.data()[i];
                    dz.data()[i] *= s * (1.0 - s);
                }
                accumulate(n.a, dz);
                break;
            }
            case Op::kMaskedMeanSq: {
                if (!wants(n.a)) break;
                const DenseMatrix& p = nodes_[n.a].value;
                double count = 0.0;
                for (std::size_t i = 0; i < n.mask->size(); ++i) {
                    if (n.mask->data()[i] != 0.0) count += 1.0;
                }
                DenseMatrix dz(p.rows(), p.cols());
                const double scale_g = 2.0 * g(0, 0) / count;
                for (std::size_t i = 0; i < p.size(); ++i) {
                    if (n.mask->data()[i] != 0.0) {
                        dz.data()[i] = scale_g * (p.data()[i] - n.target->data()[i]);
                    }
                }
                accumulate(n.a, dz);
                break;
            }
        }
    }
}

void Adam::step(std::vector<DenseMatrix*> params, std::vector<const DenseMatrix*> grads) {
    if (params.size() != grads.size()) {
        throw DimensionError("Adam::step: params/grads count mismatch");
    }
    if (m_.empty()) {
        for (const DenseMatrix* p : params) {
            m_.emplace_back(p->rows(), p->cols());
            v_.emplace_back(p->rows(), p->cols());
        }
    }
    if (m_.size() != params.size()) {
        throw DimensionError("Adam::step: parameter count changed between steps");
    }
    ++t_;
    const double bc1 = 1.0 - std::pow(opts_.beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(opts_.beta2, static_cast<double>(t_));
    for (std::size_t k = 0; k < params.size(); ++k) {
        DenseMatrix& p = *params[k];
        const DenseMatrix& g = *grads[k];
        if (!p.same_shape(g) || !p.same_shape(m_[k])) {
            throw DimensionError("Adam::step: shape mismatch at parameter " + std::to_string(k));
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double gi = g.data()[i];
            m_[k].data()[i] = opts_.beta1 * m_[k].data()[i] + (1.0 - opts_.beta1) * gi;
            v_[k].data()[i] = opts_.beta2 * v_[k].data()[i] + (1.0 - opts_.beta2) * gi * gi;
            const double mhat = m_[k].data()[i] / bc1;
            const double vhat = v_[k].data()[i] / bc2;
            p.data()[i] -= opts_.lr * mhat / (std::sqrt(vhat) + opts_.eps);
        }
    }
}

}  // namespace glpn
