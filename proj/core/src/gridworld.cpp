#include "airlex/gridworld.hpp"

#include <algorithm>

#include "airlex/errors.hpp"

namespace airlex {

GridWorld::GridWorld(GridWorldConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.width == 0 || cfg_.height == 0) throw ConfigError("gridworld: zero-sized grid");
    if (cfg_.goal.first >= cfg_.width || cfg_.goal.second >= cfg_.height)
        throw ConfigError("gridworld: goal outside grid");
    if (cfg_.walls.count(cfg_.goal)) throw ConfigError("gridworld: goal inside a wall");
    if (cfg_.walls.count(cfg_.start)) throw ConfigError("gridworld: start inside a wall");
    if (!(cfg_.gamma > 0.0 && cfg_.gamma < 1.0)) throw ConfigError("gridworld: gamma must be in (0,1)");
    if (cfg_.max_steps == 0) throw ConfigError("gridworld: max_steps must be positive");
    spec_.state_dim = cfg_.width * cfg_.height;
    spec_.action_count = 4;
    spec_.gamma = cfg_.gamma;
}

Tensor GridWorld::encode(std::size_t x, std::size_t y) const {
    Tensor t = Tensor::zeros({spec_.state_dim});
    t.data[y * cfg_.width + x] = 1.0;
    return t;
}

std::pair<std::size_t, std::size_t> GridWorld::decode(const Tensor& state) const {
    if (state.size() != spec_.state_dim)
        throw DimensionError("gridworld: state width " + std::to_string(state.size()) +
                             " != " + std::to_string(spec_.state_dim));
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state.data[i] != 0.0) return {i % cfg_.width, i / cfg_.width};
    }
    throw DataError("gridworld: all-zero state encoding");
}

Tensor GridWorld::reset(std::uint64_t) {
    // point initial distribution: the configured start cell
    steps_ = 0;
    done_ = false;
    return encode(cfg_.start.first, cfg_.start.second);
}

Transition GridWorld::step(const Tensor& state, std::size_t action) {
    if (done_) throw ContractError("gridworld: step after episode end");
    if (action >= spec_.action_count)
        throw ContractError("gridworld: action " + std::to_string(action) + " out of range");
    auto [x, y] = decode(state);
    std::size_t nx = x, ny = y;
    switch (action) {
        case 0: if (y > 0) ny = y - 1; break;
        case 1: if (y + 1 < cfg_.height) ny = y + 1; break;
        case 2: if (x > 0) nx = x - 1; break;
        case 3: if (x + 1 < cfg_.width) nx = x + 1; break;
    }
    if (cfg_.walls.count({nx, ny})) {
        nx = x;
        ny = y;
    }
    ++steps_;
    Transition tr;
    tr.state = state;
    tr.action = action;
    tr.next_state = encode(nx, ny);
    if (nx == cfg_.goal.first && ny == cfg_.goal.second) {
        tr.reward = cfg_.goal_reward;
        tr.done = true;
    } else {
        tr.reward = cfg_.step_penalty;
        tr.done = steps_ >= cfg_.max_steps;
    }
    done_ = tr.done;
    return tr;
}

std::unique_ptr<Env> GridWorld::clone() const { return std::make_unique<GridWorld>(cfg_); }

std::string GridWorld::action_surface(std::size_t action) const {
    static const char* names[4] = {"up", "down", "left", "right"};
    return names[std::min<std::size_t>(action, 3)];
}

}  // namespace airlex
