#pragma once

#include <set>
#include <string>
#include <vector>

#include "airlex/env.hpp"

namespace airlex {

struct TokenEntry {
    std::string surface;
    std::string tag;
    bool operator==(const TokenEntry&) const = default;
};

/// `surface<TAB>tag` per line. Duplicate (surface, tag) pairs are a DataError;
/// the same surface under different tags is a distinct entry.
std::vector<TokenEntry> load_vocab(const std::string& path);
void save_vocab(const std::vector<TokenEntry>& vocab, const std::string& path);

struct TokenEnvConfig {
    std::vector<TokenEntry> vocab;
    std::size_t article_len = 10;
    std::size_t max_summary_len = 6;
    /// Tags whose tokens the reference summary keeps (in article order,
    /// deduplicated). Planting a single tag here biases references toward it.
    std::set<std::string> salient_tags;
    double gamma = 0.99;
};

/// Synthetic summarization environment. reset(seed) draws an article of
/// article_len tokens; the reference summary is the article's salient-tag
/// tokens. The agent emits one token per step (last action = end-of-summary)
/// and receives the ROUGE-1 F1 against the reference at episode end.
///
/// State features: bag-of-token counts of the summary so far, concatenated
/// with the mean one-hot embedding of the article (state_dim = 2 * |vocab|).
class TokenGenEnv final : public Env {
  public:
    explicit TokenGenEnv(TokenEnvConfig cfg);

    const MdpSpec& spec() const override { return spec_; }
    Tensor reset(std::uint64_t seed) override;
    Transition step(const Tensor& state, std::size_t action) override;
    std::unique_ptr<Env> clone() const override;

    std::string action_surface(std::size_t action) const override;
    std::string action_tag(std::size_t action) const override;

    std::size_t eos_action() const { return cfg_.vocab.size(); }
    const std::vector<int>& article() const { return article_; }
    const std::vector<int>& reference() const { return reference_; }
    const TokenEnvConfig& config() const { return cfg_; }

  private:
    Tensor encode() const;

    TokenEnvConfig cfg_;
    MdpSpec spec_;
    std::vector<int> article_;
    std::vector<int> reference_;
    std::vector<int> summary_;
    bool done_ = true;
};

}  // namespace airlex
