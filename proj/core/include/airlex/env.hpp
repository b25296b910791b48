#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "airlex/tensor.hpp"

namespace airlex {

struct MdpSpec {
    std::size_t state_dim = 0;
    std::size_t action_count = 0;
    double gamma = 0.99;  // in (0, 1)
};

struct Transition {
    Tensor state;
    std::size_t action = 0;
    Tensor next_state;
    double reward = 0.0;
    bool done = false;
};

/// Episodic environment. Instances hold episode state between reset() and
/// the terminal step(); separate instances are independent, a single
/// instance is single-threaded.
class Env {
  public:
    virtual ~Env() = default;

    virtual const MdpSpec& spec() const = 0;

    /// Draws a start state; deterministic for a fixed seed.
    virtual Tensor reset(std::uint64_t seed) = 0;

    /// ContractError when called after the episode is done.
    virtual Transition step(const Tensor& state, std::size_t action) = 0;

    virtual std::unique_ptr<Env> clone() const = 0;

    /// Per-action metadata attached to trajectory steps for the analysis stage.
    virtual std::string action_surface(std::size_t action) const = 0;
    virtual std::string action_tag(std::size_t action) const = 0;
};

}  // namespace airlex
