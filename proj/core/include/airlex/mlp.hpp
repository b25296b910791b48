#pragma once

#include <cstdint>
#include <vector>

#include "airlex/graph.hpp"
#include "airlex/tensor.hpp"

namespace airlex {

/// Fully-connected network: tanh on hidden layers, identity output head.
/// Consumers apply softmax where a distribution is needed.
struct Mlp {
    struct Layer {
        Tensor W;  // [out, in]
        Tensor b;  // [out]
    };

    std::vector<std::size_t> layer_dims;  // input -> hidden* -> output
    std::vector<Layer> layers;
    std::uint64_t init_seed = 0;

    /// Seeded init, uniform in [-a, a] with a = sqrt(6 / (fan_in + fan_out)).
    static Mlp make(std::vector<std::size_t> dims, std::uint64_t seed);

    std::size_t input_dim() const { return layer_dims.front(); }
    std::size_t output_dim() const { return layer_dims.back(); }

    /// Pure forward pass over a 1-D input, no tape.
    Tensor forward(const Tensor& x) const;

    /// Forward pass on the tape; weights are registered as parameters.
    Var forward(Graph& g, Var x);

    void zero_grad();

    // Flat views over all weights, used by finite-difference checks.
    std::size_t param_count() const;
    double get_param(std::size_t flat_index) const;
    void set_param(std::size_t flat_index, double v);
    double get_grad(std::size_t flat_index) const;
};

}  // namespace airlex
