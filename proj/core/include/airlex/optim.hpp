#pragma once

#include <cstdint>
#include <vector>

#include "airlex/mlp.hpp"

namespace airlex {

struct SgdConfig {
    double learning_rate = 0.01;  // > 0
    double momentum = 0.0;        // in [0, 1)
    std::uint64_t seed = 0;
};

/// SGD with classical momentum. In-place update:
///   v <- momentum * v + grad
///   w <- w - learning_rate * v
/// Reads gradients accumulated on the network's weight tensors.
class Sgd {
  public:
    explicit Sgd(SgdConfig cfg);

    /// TrainingError (carrying the layer index) on non-finite gradients.
    void step(Mlp& net);

    const SgdConfig& config() const { return cfg_; }

  private:
    SgdConfig cfg_;
    std::vector<std::vector<double>> velocity_w_;
    std::vector<std::vector<double>> velocity_b_;
};

}  // namespace airlex
