#include "airlex/tokenenv.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "airlex/errors.hpp"
#include "airlex/rng.hpp"
#include "airlex/rouge.hpp"

namespace airlex {

std::vector<TokenEntry> load_vocab(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open vocabulary file: " + path);
    std::vector<TokenEntry> vocab;
    std::set<std::pair<std::string, std::string>> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError("vocabulary file " + path + " line " + std::to_string(lineno) +
                            ": missing tab separator");
        TokenEntry e{line.substr(0, tab), line.substr(tab + 1)};
        if (e.surface.empty() || e.tag.empty())
            throw DataError("vocabulary file " + path + " line " + std::to_string(lineno) +
                            ": empty surface or tag");
        if (!seen.insert({e.surface, e.tag}).second)
            throw DataError("vocabulary file " + path + " line " + std::to_string(lineno) +
                            ": duplicate entry " + e.surface + "/" + e.tag);
        vocab.push_back(std::move(e));
    }
    return vocab;
}

void save_vocab(const std::vector<TokenEntry>& vocab, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open vocabulary file for writing: " + path);
    for (const TokenEntry& e : vocab) out << e.surface << "\t" << e.tag << "\n";
}

TokenGenEnv::TokenGenEnv(TokenEnvConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.vocab.size() < 2) throw ConfigError("token env: vocabulary needs at least 2 entries");
    if (cfg_.article_len == 0) throw ConfigError("token env: article_len must be positive");
    if (cfg_.max_summary_len == 0) throw ConfigError("token env: max_summary_len must be positive");
    if (!(cfg_.gamma > 0.0 && cfg_.gamma < 1.0)) throw ConfigError("token env: gamma must be in (0,1)");
    spec_.state_dim = 2 * cfg_.vocab.size();
    spec_.action_count = cfg_.vocab.size() + 1;  // + end-of-summary
    spec_.gamma = cfg_.gamma;
}

Tensor TokenGenEnv::encode() const {
    Tensor t = Tensor::zeros({spec_.state_dim});
    const std::size_t v = cfg_.vocab.size();
    for (int tok : summary_) t.data[static_cast<std::size_t>(tok)] += 1.0;
    for (int tok : article_) t.data[v + static_cast<std::size_t>(tok)] += 1.0 / article_.size();
    return t;
}

Tensor TokenGenEnv::reset(std::uint64_t seed) {
    Rng rng = make_rng(derive_seed(seed, 0x70c53));
    article_.clear();
    for (std::size_t i = 0; i < cfg_.article_len; ++i)
        article_.push_back(static_cast<int>(uniform_index(rng, cfg_.vocab.size())));
    // reference: salient-tag article tokens in order, deduplicated
    reference_.clear();
    std::set<int> used;
    for (int tok : article_) {
        if (reference_.size() >= cfg_.max_summary_len) break;
        if (!cfg_.salient_tags.count(cfg_.vocab[tok].tag)) continue;
        if (used.insert(tok).second) reference_.push_back(tok);
    }
    if (reference_.empty()) reference_.push_back(article_.front());
    summary_.clear();
    done_ = false;
    return encode();
}

Transition TokenGenEnv::step(const Tensor& state, std::size_t action) {
    if (done_) throw ContractError("token env: step after episode end");
    if (action >= spec_.action_count)
        throw ContractError("token env: action " + std::to_string(action) + " out of range");
    Transition tr;
    tr.state = state;
    tr.action = action;
    if (action != eos_action()) summary_.push_back(static_cast<int>(action));
    tr.next_state = encode();
    tr.done = action == eos_action() || summary_.size() >= cfg_.max_summary_len;
    if (tr.done) {
        RougeScore sc = rouge_n(summary_, reference_, 1);
        tr.reward = sc.degenerate ? 0.0 : sc.f1;
    }
    done_ = tr.done;
    return tr;
}

std::unique_ptr<Env> TokenGenEnv::clone() const { return std::make_unique<TokenGenEnv>(cfg_); }

std::string TokenGenEnv::action_surface(std::size_t action) const {
    if (action == eos_action()) return "<eos>";
    return cfg_.vocab.at(action).surface;
}

std::string TokenGenEnv::action_tag(std::size_t action) const {
    if (action == eos_action()) return "eos";
    return cfg_.vocab.at(action).tag;
}

}  // namespace airlex
