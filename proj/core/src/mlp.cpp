#include "airlex/mlp.hpp"

#include <cmath>

#include "airlex/errors.hpp"
#include "airlex/rng.hpp"

namespace airlex {

Mlp Mlp::make(std::vector<std::size_t> dims, std::uint64_t seed) {
    if (dims.size() < 2) throw DimensionError("Mlp needs at least input and output dims");
    Mlp net;
    net.layer_dims = std::move(dims);
    net.init_seed = seed;
    Rng rng = make_rng(seed);
    for (std::size_t i = 0; i + 1 < net.layer_dims.size(); ++i) {
        const std::size_t fan_in = net.layer_dims[i];
        const std::size_t fan_out = net.layer_dims[i + 1];
        const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        Layer layer;
        layer.W = Tensor::zeros({fan_out, fan_in});
        layer.b = Tensor::zeros({fan_out});
        for (double& w : layer.W.data) w = uniform(rng, -a, a);
        net.layers.push_back(std::move(layer));
    }
    return net;
}

Tensor Mlp::forward(const Tensor& x) const {
    if (x.shape.size() != 1 || x.shape[0] != input_dim()) {
        throw DimensionError("Mlp::forward: input shape " + shape_str(x.shape) +
                             " incompatible with expected [" + std::to_string(input_dim()) + "]");
    }
    Tensor h = x;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const Layer& layer = layers[l];
        const std::size_t m = layer.W.shape[0], k = layer.W.shape[1];
        Tensor out = Tensor::zeros({m});
        for (std::size_t i = 0; i < m; ++i) {
            double acc = layer.b.data[i];
            for (std::size_t j = 0; j < k; ++j) acc += layer.W.data[i * k + j] * h.data[j];
            out.data[i] = acc;
        }
        if (l + 1 < layers.size())
            for (double& v : out.data) v = std::tanh(v);
        h = std::move(out);
    }
    return h;
}

Var Mlp::forward(Graph& g, Var x) {
    if (x->value.shape.size() != 1 || x->value.shape[0] != input_dim()) {
        throw DimensionError("Mlp::forward: input shape " + shape_str(x->value.shape) +
                             " incompatible with expected [" + std::to_string(input_dim()) + "]");
    }
    Var h = x;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        Var W = g.param(layers[l].W);
        Var b = g.param(layers[l].b);
        h = g.add(g.matvec(W, h), b);
        if (l + 1 < layers.size()) h = g.tanh_(h);
    }
    return h;
}

void Mlp::zero_grad() {
    for (Layer& layer : layers) {
        layer.W.zero_grad();
        layer.b.zero_grad();
    }
}

std::size_t Mlp::param_count() const {
    std::size_t n = 0;
    for (const Layer& layer : layers) n += layer.W.size() + layer.b.size();
    return n;
}

double Mlp::get_param(std::size_t idx) const {
    for (const Layer& layer : layers) {
        if (idx < layer.W.size()) return layer.W.data[idx];
        idx -= layer.W.size();
        if (idx < layer.b.size()) return layer.b.data[idx];
        idx -= layer.b.size();
    }
    throw DimensionError("param index out of range");
}

void Mlp::set_param(std::size_t idx, double v) {
    for (Layer& layer : layers) {
        if (idx < layer.W.size()) {
            layer.W.data[idx] = v;
            return;
        }
        idx -= layer.W.size();
        if (idx < layer.b.size()) {
            layer.b.data[idx] = v;
            return;
        }
        idx -= layer.b.size();
    }
    throw DimensionError("param index out of range");
}

double Mlp::get_grad(std::size_t idx) const {
    for (const Layer& layer : layers) {
        if (idx < layer.W.size()) return layer.W.grad.empty() ? 0.0 : layer.W.grad[idx];
        idx -= layer.W.size();
        if (idx < layer.b.size()) return layer.b.grad.empty() ? 0.0 : layer.b.grad[idx];
        idx -= layer.b.size();
    }
    throw DimensionError("param index out of range");
}

}  // namespace airlex
