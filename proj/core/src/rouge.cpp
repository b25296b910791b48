#include "airlex/rouge.hpp"

#include <algorithm>
#include <map>

#include "airlex/errors.hpp"

namespace airlex {

namespace {

using Ngram = std::vector<int>;

std::map<Ngram, int> ngram_counts(std::span<const int> seq, int n) {
    std::map<Ngram, int> counts;
    if (seq.size() < static_cast<std::size_t>(n)) return counts;
    for (std::size_t i = 0; i + n <= seq.size(); ++i) {
        counts[Ngram(seq.begin() + i, seq.begin() + i + n)]++;
    }
    return counts;
}

RougeScore from_pr(double precision, double recall) {
    RougeScore s;
    s.precision = precision;
    s.recall = recall;
    if (precision + recall > 0.0) s.f1 = 2.0 * precision * recall / (precision + recall);
    return s;
}

}  // namespace

RougeScore rouge_n(std::span<const int> candidate, std::span<const int> reference, int n) {
    if (n != 1 && n != 2) throw ContractError("rouge_n: n must be 1 or 2");
    if (candidate.empty() || reference.empty()) {
        RougeScore s;
        s.degenerate = true;
        return s;
    }
    auto cand = ngram_counts(candidate, n);
    auto ref = ngram_counts(reference, n);
    long long cand_total = 0, ref_total = 0, overlap = 0;
    for (const auto& [gram, c] : cand) cand_total += c;
    for (const auto& [gram, c] : ref) ref_total += c;
    for (const auto& [gram, c] : cand) {
        auto it = ref.find(gram);
        if (it != ref.end()) overlap += std::min(c, it->second);
    }
    if (cand_total == 0 || ref_total == 0) {
        RougeScore s;
        s.degenerate = true;
        return s;
    }
    return from_pr(static_cast<double>(overlap) / cand_total,
                   static_cast<double>(overlap) / ref_total);
}

RougeScore rouge_l(std::span<const int> candidate, std::span<const int> reference) {
    if (candidate.empty() || reference.empty()) {
        RougeScore s;
        s.degenerate = true;
        return s;
    }
    const std::size_t n = candidate.size(), m = reference.size();
    // quadratic DP, two rolling rows
    std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            if (candidate[i - 1] == reference[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    const double lcs = static_cast<double>(prev[m]);
    return from_pr(lcs / n, lcs / m);
}

}  // namespace airlex
