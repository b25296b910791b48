#include "airlex/optim.hpp"

#include <cmath>
#include <string>

#include "airlex/errors.hpp"

namespace airlex {

Sgd::Sgd(SgdConfig cfg) : cfg_(cfg) {
    if (!(cfg_.learning_rate > 0.0)) throw ConfigError("SgdConfig.learning_rate must be > 0");
    if (cfg_.momentum < 0.0 || cfg_.momentum >= 1.0)
        throw ConfigError("SgdConfig.momentum must be in [0, 1)");
}

namespace {

void update(std::vector<double>& w, const std::vector<double>& grad, std::vector<double>& vel,
            const SgdConfig& cfg, std::size_t layer) {
    if (grad.empty()) return;  // no backward ran for this tensor, nothing to apply
    if (vel.size() != w.size()) vel.assign(w.size(), 0.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!std::isfinite(grad[i])) {
            throw TrainingError("non-finite gradient in layer " + std::to_string(layer));
        }
        vel[i] = cfg.momentum * vel[i] + grad[i];
        w[i] -= cfg.learning_rate * vel[i];
    }
}

}  // namespace

void Sgd::step(Mlp& net) {
    velocity_w_.resize(net.layers.size());
    velocity_b_.resize(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        update(net.layers[l].W.data, net.layers[l].W.grad, velocity_w_[l], cfg_, l);
        update(net.layers[l].b.data, net.layers[l].b.grad, velocity_b_[l], cfg_, l);
    }
}

}  // namespace airlex
