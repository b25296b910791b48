#include "airlex/checkpoint.hpp"

#include <fstream>

#include "airlex/errors.hpp"

namespace airlex {

using nlohmann::json;

json mlp_to_json(const Mlp& net) {
    json j;
    j["layer_dims"] = net.layer_dims;
    j["seed"] = net.init_seed;
    json layers = json::array();
    for (const Mlp::Layer& layer : net.layers) {
        layers.push_back({{"W", layer.W.data}, {"b", layer.b.data}});
    }
    j["layers"] = std::move(layers);
    return j;
}

Mlp mlp_from_json(const json& j) {
    Mlp net;
    net.layer_dims = j.at("layer_dims").get<std::vector<std::size_t>>();
    net.init_seed = j.at("seed").get<std::uint64_t>();
    const json& layers = j.at("layers");
    if (layers.size() + 1 != net.layer_dims.size())
        throw DataError("checkpoint: layer count does not match layer_dims");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        Mlp::Layer layer;
        layer.W = Tensor({net.layer_dims[l + 1], net.layer_dims[l]},
                         layers[l].at("W").get<std::vector<double>>());
        layer.b = Tensor({net.layer_dims[l + 1]}, layers[l].at("b").get<std::vector<double>>());
        net.layers.push_back(std::move(layer));
    }
    return net;
}

void save_mlp(const Mlp& net, const std::string& path, const std::string& config_hash) {
    json j = mlp_to_json(net);
    if (!config_hash.empty()) j["config_hash"] = config_hash;
    std::ofstream out(path);
    if (!out) throw DataError("cannot open checkpoint for writing: " + path);
    out << j.dump(2) << "\n";
}

Mlp load_mlp(const std::string& path, std::string* config_hash_out) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open checkpoint: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("malformed checkpoint " + path + ": " + e.what());
    }
    if (config_hash_out) *config_hash_out = j.value("config_hash", "");
    return mlp_from_json(j);
}

}  // namespace airlex
