#include "airlex/graph.hpp"

#include <algorithm>
#include <cmath>

#include "airlex/errors.hpp"

namespace airlex {

namespace {

void check_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (a.shape != b.shape) {
        throw DimensionError(std::string(op) + ": shape mismatch " + shape_str(a.shape) + " vs " +
                             shape_str(b.shape));
    }
}

double stable_softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

}  // namespace

Var Graph::record(Var n) {
    nodes_.push_back(n);
    return n;
}

Var Graph::constant(Tensor v) { return record(std::make_shared<Node>(std::move(v))); }

Var Graph::param(Tensor& t) {
    auto n = std::make_shared<Node>(t);
    n->param = &t;
    n->backprop = [](Node& self) {
        self.param->ensure_grad();
        for (std::size_t i = 0; i < self.grad.size(); ++i) self.param->grad[i] += self.grad[i];
    };
    return record(n);
}

Var Graph::matvec(Var W, Var x) {
    const Tensor& wv = W->value;
    const Tensor& xv = x->value;
    if (wv.shape.size() != 2 || xv.shape.size() != 1 || wv.shape[1] != xv.shape[0]) {
        throw DimensionError("matvec: incompatible shapes " + shape_str(wv.shape) + " and " +
                             shape_str(xv.shape));
    }
    const std::size_t m = wv.shape[0], k = wv.shape[1];
    Tensor out = Tensor::zeros({m});
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) acc += wv.data[i * k + j] * xv.data[j];
        out.data[i] = acc;
    }
    auto n = std::make_shared<Node>(std::move(out));
    n->parents = {W, x};
    n->backprop = [m, k](Node& self) {
        Node& Wp = *self.parents[0];
        Node& xp = *self.parents[1];
        for (std::size_t i = 0; i < m; ++i) {
            const double gy = self.grad[i];
            if (gy == 0.0) continue;
            for (std::size_t j = 0; j < k; ++j) {
                Wp.grad[i * k + j] += gy * xp.value.data[j];
                xp.grad[j] += gy * Wp.value.data[i * k + j];
            }
        }
    };
    return record(n);
}

Var Graph::add(Var a, Var b) {
    check_same_shape(a->value, b->value, "add");
    Tensor out = a->value;
    for (std::size_t i = 0; i < out.size(); ++i) out.data[i] += b->value.data[i];
    auto n = std::make_shared<Node>(std::move(out));
    n->parents = {a, b};
    n->backprop = [](Node& self) {
        for (std::size_t i = 0; i < self.grad.size(); ++i) {
            self.parents[0]->grad[i] += self.grad[i];
            self.parents[1]->grad[i] += self.grad[i];
        }
    };
    return record(n);
}

Var Graph::sub(Var a, Var b) { return add(a, scale(b, -1.0)); }

Var Graph::mul(Var a, Var b) {
    check_same_shape(a->value, b->value, "mul");
    Tensor out = a->value;
    for (std::size_t i = 0; i < out.size(); ++i) out.data[i] *= b->value.data[i];
    auto n = std::make_shared<Node>(std::move(out));
    n->parents = {a, b};
    n->backprop = [](Node& self) {
        for (std::size_t i = 0; i < self.grad.size(); ++i) {
            self.parents[0]->grad[i] += self.grad[i] * self.parents[1]->value.data[i];
            self.parents[1]->grad[i] += self.grad[i] * self.parents[0]->value.data[i];
        }
    };
    return record(n);
}

Var Graph::scale(Var a, double c) {
    Tensor out = a->value;
    for (double& v : out.data) v *= c;
    auto n = std::make_shared<Node>(std::move(out));
    n->parents = {a};
    n->backprop = [c](Node& self) {
        for (std::size_t i = 0; i < self.grad.size(); ++i) self.parents[0]->grad[i] += c * self.grad[i];
    };
    return record(n);
}

Var Graph::tanh_(Var a) {
    Tensor out = a->value;
    for (double& v : out.data) v = std::tanh(v);
    auto n = std::make_shared<Node>(std::move(out));
    n->parents = {a};
    n->backprop = [](Node& self) {
        for (std::size_t i = 0; i < self.grad.size(); ++i) {
            const double y = self.value.data[i];
            self.parents[0]->grad[i] += self.grad[i] * (1.0 - y * y);
        }
    };
    return record(n);
}

Var Graph::exp_(Var a) {
    Tensor out = a->value;
    for (double& v : out.data) v = std::exp(v);
    auto n = std::make_shared<Node>(std::move(out));
    n->parents = {a};
    n->backprop = [](Node& self) {
        for (std::size_t i = 0; i < self.grad.size(); ++i)
            self.parents[0]->grad[i] += self.grad[i] * self.value.data[i];
    };
    return record(n);
}

Var Graph::softplus(Var a) {
    Tensor out = a->value;
    for (double& v : out.data) v = stable_softplus(v);
    auto n = std::make_shared<Node>(std::move(out));
    n->parents = {a};
    n->backprop = [](Node& self) {
        for (std::size_t i = 0; i < self.grad.size(); ++i) {
            const double x = self.parents[0]->value.data[i];
            const double sig = 1.0 / (1.0 + std::exp(-x));
            self.parents[0]->grad[i] += self.grad[i] * sig;
        }
    };
    return record(n);
}

Var Graph::log_softmax(Var logits) {
    const Tensor& lv = logits->value;
    if (lv.shape.size() != 1) {
        throw DimensionError("log_softmax: expected 1-D vector, got " + shape_str(lv.shape));
    }
    const double mx = *std::max_element(lv.data.begin(), lv.data.end());
    double z = 0.0;
    for (double v : lv.data) z += std::exp(v - mx);
    const double log_z = mx + std::log(z);
    Tensor out = lv;
    for (double& v : out.data) v -= log_z;
    auto n = std::make_shared<Node>(std::move(out));
    n->parents = {logits};
    n->backprop = [](Node& self) {
        double gsum = 0.0;
        for (double g : self.grad) gsum += g;
        for (std::size_t i = 0; i < self.grad.size(); ++i) {
            const double p = std::exp(self.value.data[i]);
            self.parents[0]->grad[i] += self.grad[i] - p * gsum;
        }
    };
    return record(n);
}

Var Graph::pick(Var v, std::size_t index) {
    if (index >= v->value.size()) {
        throw DimensionError("pick: index " + std::to_string(index) + " out of range for " +
                             shape_str(v->value.shape));
    }
    auto n = std::make_shared<Node>(Tensor::scalar(v->value.data[index]));
    n->parents = {v};
    n->backprop = [index](Node& self) { self.parents[0]->grad[index] += self.grad[0]; };
    return record(n);
}

Var Graph::sum(Var v) {
    double acc = 0.0;
    for (double x : v->value.data) acc += x;
    auto n = std::make_shared<Node>(Tensor::scalar(acc));
    n->parents = {v};
    n->backprop = [](Node& self) {
        for (double& g : self.parents[0]->grad) g += self.grad[0];
    };
    return record(n);
}

void Graph::backward(Var loss) {
    if (!loss->value.is_scalar()) {
        throw ContractError("backward: loss must be scalar, got shape " + shape_str(loss->value.shape));
    }
    if (swept_) throw ContractError("backward: tape already swept; build a fresh graph per loss");
    swept_ = true;
    loss->grad[0] = 1.0;
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
        if ((*it)->backprop) (*it)->backprop(**it);
    }
}

}  // namespace airlex
