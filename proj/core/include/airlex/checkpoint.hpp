#pragma once

#include <string>

#include "airlex/mlp.hpp"

#include <nlohmann/json.hpp>

namespace airlex {

// Self-describing JSON checkpoints. Doubles survive the round trip
// bit-exactly (shortest round-trip serialisation).

nlohmann::json mlp_to_json(const Mlp& net);
Mlp mlp_from_json(const nlohmann::json& j);

void save_mlp(const Mlp& net, const std::string& path, const std::string& config_hash = "");
Mlp load_mlp(const std::string& path, std::string* config_hash_out = nullptr);

}  // namespace airlex
