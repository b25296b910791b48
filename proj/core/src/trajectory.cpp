#include "airlex/trajectory.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "airlex/errors.hpp"

namespace airlex {

using nlohmann::json;

void write_trajectories(const std::vector<Trajectory>& trajectories, const std::string& path,
                        const std::string& config_hash) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open trajectory file for writing: " + path);
    for (const Trajectory& traj : trajectories) {
        json steps = json::array();
        for (const TrajStep& st : traj.steps) {
            json rec{{"s", st.s.data}, {"a", st.a}, {"s_next", st.s_next.data}};
            if (!st.token_surface.empty()) {
                rec["token_surface"] = st.token_surface;
                rec["token_tag"] = st.token_tag;
            }
            if (st.has_reward_disc) rec["reward_disc"] = st.reward_disc;
            steps.push_back(std::move(rec));
        }
        json line{{"id", traj.id},
                  {"steps", std::move(steps)},
                  {"episode_reward", traj.episode_reward},
                  {"config_hash", config_hash}};
        out << line.dump() << "\n";
    }
}

TrajectoryFile read_trajectories(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open trajectory file: " + path);
    TrajectoryFile file;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
            Trajectory traj;
            traj.id = j.at("id").get<std::string>();
            traj.episode_reward = j.at("episode_reward").get<double>();
            std::string hash = j.value("config_hash", "");
            if (file.config_hash.empty()) file.config_hash = hash;
            for (const json& rec : j.at("steps")) {
                TrajStep st;
                st.s = Tensor::vec(rec.at("s").get<std::vector<double>>());
                st.a = rec.at("a").get<std::size_t>();
                st.s_next = Tensor::vec(rec.at("s_next").get<std::vector<double>>());
                if (rec.contains("token_surface")) {
                    st.token_surface = rec.at("token_surface").get<std::string>();
                    st.token_tag = rec.at("token_tag").get<std::string>();
                }
                if (rec.contains("reward_disc")) {
                    st.reward_disc = rec.at("reward_disc").get<double>();
                    st.has_reward_disc = true;
                }
                traj.steps.push_back(std::move(st));
            }
            file.trajectories.push_back(std::move(traj));
        } catch (const json::exception& e) {
            throw DataError("trajectory file " + path + " line " + std::to_string(lineno) + ": " +
                            e.what());
        }
    }
    return file;
}

}  // namespace airlex
