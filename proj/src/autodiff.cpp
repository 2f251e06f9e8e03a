#include "coref/autodiff.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace coref {

namespace {

double logsumexp(const std::vector<double>& z) {
    double m = *std::max_element(z.begin(), z.end());
    double s = 0.0;
    for (double v : z) s += std::exp(v - m);
    return m + std::log(s);
}

}  // namespace

Tape::NodeId Tape::push(std::vector<double> value, std::function<void(Tape&, Node&)> backprop) {
    Node n;
    n.value = std::move(value);
    n.grad.assign(n.value.size(), 0.0);
    n.backprop = std::move(backprop);
    nodes_.push_back(std::move(n));
    return static_cast<NodeId>(nodes_.size()) - 1;
}

Tape::NodeId Tape::input(std::vector<double> value) { return push(std::move(value), nullptr); }

Tape::NodeId Tape::param(const std::string& name) {
    auto it = param_nodes_.find(name);
    if (it != param_nodes_.end()) return it->second;
    auto ait = params_->arrays.find(name);
    if (ait == params_->arrays.end())
        throw std::runtime_error("unknown parameter array '" + name + "'");
    NodeId id = push(ait->second.data, nullptr);
    nodes_[id].param_name = name;
    param_nodes_[name] = id;
    return id;
}

Tape::NodeId Tape::linear(NodeId w, NodeId b, NodeId x, int rows, int cols) {
    const auto& wv = value(w);
    const auto& bv = value(b);
    const auto& xv = value(x);
    assert(static_cast<int>(wv.size()) == rows * cols);
    assert(static_cast<int>(bv.size()) == rows);
    assert(static_cast<int>(xv.size()) == cols);
    std::vector<double> y(rows);
    for (int r = 0; r < rows; ++r) {
        double acc = bv[r];
        const double* wr = wv.data() + static_cast<size_t>(r) * cols;
        for (int c = 0; c < cols; ++c) acc += wr[c] * xv[c];
        y[r] = acc;
    }
    return push(std::move(y), [w, b, x, rows, cols](Tape& t, Node& self) {
        const auto& wv = t.value(w);
        const auto& xv = t.value(x);
        auto& gw = t.grad(w);
        auto& gb = t.grad(b);
        auto& gx = t.grad(x);
        for (int r = 0; r < rows; ++r) {
            double gy = self.grad[r];
            if (gy == 0.0) continue;
            gb[r] += gy;
            const double* wr = wv.data() + static_cast<size_t>(r) * cols;
            double* gwr = gw.data() + static_cast<size_t>(r) * cols;
            for (int c = 0; c < cols; ++c) {
                gwr[c] += gy * xv[c];
                gx[c] += gy * wr[c];
            }
        }
    });
}

Tape::NodeId Tape::relu(NodeId x) {
    std::vector<double> y = value(x);
    for (double& v : y) v = std::max(v, 0.0);
    return push(std::move(y), [x](Tape& t, Node& self) {
        auto& gx = t.grad(x);
        for (size_t i = 0; i < self.value.size(); ++i)
            if (self.value[i] > 0.0) gx[i] += self.grad[i];
    });
}

Tape::NodeId Tape::tanh_op(NodeId x) {
    std::vector<double> y = value(x);
    for (double& v : y) v = std::tanh(v);
    return push(std::move(y), [x](Tape& t, Node& self) {
        auto& gx = t.grad(x);
        for (size_t i = 0; i < self.value.size(); ++i)
            gx[i] += self.grad[i] * (1.0 - self.value[i] * self.value[i]);
    });
}

Tape::NodeId Tape::add(NodeId a, NodeId b) {
    assert(value(a).size() == value(b).size());
    std::vector<double> y = value(a);
    const auto& bv = value(b);
    for (size_t i = 0; i < y.size(); ++i) y[i] += bv[i];
    return push(std::move(y), [a, b](Tape& t, Node& self) {
        auto& ga = t.grad(a);
        auto& gb = t.grad(b);
        for (size_t i = 0; i < self.grad.size(); ++i) {
            ga[i] += self.grad[i];
            gb[i] += self.grad[i];
        }
    });
}

Tape::NodeId Tape::concat(const std::vector<NodeId>& parts) {
    std::vector<double> y;
    for (NodeId p : parts) {
        const auto& v = value(p);
        y.insert(y.end(), v.begin(), v.end());
    }
    return push(std::move(y), [parts](Tape& t, Node& self) {
        size_t off = 0;
        for (NodeId p : parts) {
            auto& gp = t.grad(p);
            for (size_t i = 0; i < gp.size(); ++i) gp[i] += self.grad[off + i];
            off += gp.size();
        }
    });
}

Tape::NodeId Tape::hadamard(NodeId a, NodeId b) {
    assert(value(a).size() == value(b).size());
    std::vector<double> y = value(a);
    const auto& bv = value(b);
    for (size_t i = 0; i < y.size(); ++i) y[i] *= bv[i];
    return push(std::move(y), [a, b](Tape& t, Node& self) {
        const auto& av = t.value(a);
        const auto& bv = t.value(b);
        auto& ga = t.grad(a);
        auto& gb = t.grad(b);
        for (size_t i = 0; i < self.grad.size(); ++i) {
            ga[i] += self.grad[i] * bv[i];
            gb[i] += self.grad[i] * av[i];
        }
    });
}

Tape::NodeId Tape::mean(const std::vector<NodeId>& parts) {
    assert(!parts.empty());
    std::vector<double> y(value(parts[0]).size(), 0.0);
    for (NodeId p : parts) {
        const auto& v = value(p);
        for (size_t i = 0; i < y.size(); ++i) y[i] += v[i];
    }
    double inv = 1.0 / static_cast<double>(parts.size());
    for (double& v : y) v *= inv;
    return push(std::move(y), [parts, inv](Tape& t, Node& self) {
        for (NodeId p : parts) {
            auto& gp = t.grad(p);
            for (size_t i = 0; i < gp.size(); ++i) gp[i] += self.grad[i] * inv;
        }
    });
}

Tape::NodeId Tape::row(NodeId matrix, int r, int cols) {
    const auto& mv = value(matrix);
    assert(static_cast<size_t>((r + 1)) * cols <= mv.size());
    std::vector<double> y(mv.begin() + static_cast<size_t>(r) * cols,
                          mv.begin() + static_cast<size_t>(r + 1) * cols);
    return push(std::move(y), [matrix, r, cols](Tape& t, Node& self) {
        auto& gm = t.grad(matrix);
        for (int c = 0; c < cols; ++c) gm[static_cast<size_t>(r) * cols + c] += self.grad[c];
    });
}

Tape::NodeId Tape::stack_scalars(const std::vector<NodeId>& scalars) {
    std::vector<double> y(scalars.size());
    for (size_t i = 0; i < scalars.size(); ++i) y[i] = value(scalars[i])[0];
    return push(std::move(y), [scalars](Tape& t, Node& self) {
        for (size_t i = 0; i < scalars.size(); ++i) t.grad(scalars[i])[0] += self.grad[i];
    });
}

Tape::NodeId Tape::softmax(NodeId logits) {
    std::vector<double> y = value(logits);
    double m = *std::max_element(y.begin(), y.end());
    double s = 0.0;
    for (double& v : y) {
        v = std::exp(v - m);
        s += v;
    }
    for (double& v : y) v /= s;
    return push(std::move(y), [logits](Tape& t, Node& self) {
        auto& gl = t.grad(logits);
        double dot = 0.0;
        for (size_t i = 0; i < self.value.size(); ++i) dot += self.grad[i] * self.value[i];
        for (size_t i = 0; i < self.value.size(); ++i)
            gl[i] += self.value[i] * (self.grad[i] - dot);
    });
}

Tape::NodeId Tape::weighted_sum(NodeId weights, const std::vector<NodeId>& xs) {
    const auto& w = value(weights);
    assert(w.size() == xs.size() && !xs.empty());
    std::vector<double> y(value(xs[0]).size(), 0.0);
    for (size_t t = 0; t < xs.size(); ++t) {
        const auto& xv = value(xs[t]);
        for (size_t i = 0; i < y.size(); ++i) y[i] += w[t] * xv[i];
    }
    return push(std::move(y), [weights, xs](Tape& t, Node& self) {
        const auto& w = t.value(weights);
        auto& gw = t.grad(weights);
        for (size_t k = 0; k < xs.size(); ++k) {
            const auto& xv = t.value(xs[k]);
            auto& gx = t.grad(xs[k]);
            double acc = 0.0;
            for (size_t i = 0; i < self.grad.size(); ++i) {
                acc += self.grad[i] * xv[i];
                gx[i] += self.grad[i] * w[k];
            }
            gw[k] += acc;
        }
    });
}

Tape::NodeId Tape::bce_with_logits(NodeId logit, double target) {
    double z = value(logit)[0];
    double p = 1.0 / (1.0 + std::exp(-z));
    constexpr double eps = 1e-12;
    double pc = std::clamp(p, eps, 1.0 - eps);
    double loss = -(target * std::log(pc) + (1.0 - target) * std::log(1.0 - pc));
    return push({loss}, [logit, p, target](Tape& t, Node& self) {
        t.grad(logit)[0] += self.grad[0] * (p - target);
    });
}

Tape::NodeId Tape::sum_scalars(const std::vector<NodeId>& scalars) {
    double s = 0.0;
    for (NodeId id : scalars) s += value(id)[0];
    return push({s}, [scalars](Tape& t, Node& self) {
        for (NodeId id : scalars) t.grad(id)[0] += self.grad[0];
    });
}

Tape::NodeId Tape::marginal_nll(const std::vector<NodeId>& antecedent_logits,
                                const std::vector<char>& is_gold, bool epsilon_gold) {
    assert(antecedent_logits.size() == is_gold.size());
    std::vector<double> all{0.0};  // epsilon logit
    std::vector<double> gold;
    if (epsilon_gold) gold.push_back(0.0);
    for (size_t j = 0; j < antecedent_logits.size(); ++j) {
        double z = value(antecedent_logits[j])[0];
        all.push_back(z);
        if (is_gold[j]) gold.push_back(z);
    }
    if (gold.empty()) throw std::logic_error("marginal_nll: empty gold set without epsilon");
    double lse_all = logsumexp(all);
    double lse_gold = logsumexp(gold);
    double loss = lse_all - lse_gold;
    return push({loss},
                [antecedent_logits, is_gold, lse_all, lse_gold](Tape& t, Node& self) {
                    double g = self.grad[0];
                    for (size_t j = 0; j < antecedent_logits.size(); ++j) {
                        double z = t.value(antecedent_logits[j])[0];
                        double d = std::exp(z - lse_all);
                        if (is_gold[j]) d -= std::exp(z - lse_gold);
                        t.grad(antecedent_logits[j])[0] += g * d;
                    }
                });
}

void Tape::backward(NodeId loss, GradientMap& grads) {
    assert(nodes_[loss].value.size() == 1);
    nodes_[loss].grad[0] = 1.0;
    for (NodeId id = loss; id >= 0; --id) {
        Node& n = nodes_[id];
        if (n.backprop) n.backprop(*this, n);
    }
    for (const auto& [name, id] : param_nodes_) {
        auto& dst = grads[name];
        const auto& src = nodes_[id].grad;
        if (dst.empty()) dst.assign(src.size(), 0.0);
        for (size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
    }
}

}  // namespace coref
