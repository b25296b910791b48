#pragma once

#include <span>
#include <vector>

namespace airlex {

struct RougeScore {
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    bool degenerate = false;  // set instead of throwing when an input is empty
};

/// N-gram overlap F1 with clipped counts, n in {1, 2}.
RougeScore rouge_n(std::span<const int> candidate, std::span<const int> reference, int n);

/// Longest-common-subsequence F1.
RougeScore rouge_l(std::span<const int> candidate, std::span<const int> reference);

}  // namespace airlex
