#include <doctest.h>

#include <vector>

#include "airlex/errors.hpp"
#include "airlex/rng.hpp"
#include "airlex/rouge.hpp"
#include "oracles.hpp"

using namespace airlex;

TEST_CASE("rouge-1: identical sequences score 1") {
    std::vector<int> s = {1, 2, 3, 4};
    RougeScore r = rouge_n(s, s, 1);
    CHECK(r.f1 == doctest::Approx(1.0));
    CHECK(r.precision == doctest::Approx(1.0));
    CHECK(r.recall == doctest::Approx(1.0));
    CHECK_FALSE(r.degenerate);
    CHECK(rouge_l(s, s).f1 == doctest::Approx(1.0));
}

TEST_CASE("rouge-1: disjoint sequences score 0") {
    std::vector<int> a = {1, 2, 3};
    std::vector<int> b = {4, 5, 6};
    CHECK(rouge_n(a, b, 1).f1 == 0.0);
    CHECK(rouge_n(a, b, 2).f1 == 0.0);
    CHECK(rouge_l(a, b).f1 == 0.0);
}

TEST_CASE("rouge-1: half-overlap hand case") {
    // candidate {1,2,3,4}, reference {3,4,5,6}: overlap 2,
    // precision = recall = 2/4 => f1 = 0.5
    std::vector<int> cand = {1, 2, 3, 4};
    std::vector<int> ref = {3, 4, 5, 6};
    RougeScore r = rouge_n(cand, ref, 1);
    CHECK(r.precision == doctest::Approx(0.5));
    CHECK(r.recall == doctest::Approx(0.5));
    CHECK(r.f1 == doctest::Approx(0.5));
}

TEST_CASE("rouge-1: asymmetric lengths give 2/3") {
    // candidate {1}, reference {1,2}: precision 1, recall 1/2, f1 = 2/3
    std::vector<int> cand = {1};
    std::vector<int> ref = {1, 2};
    CHECK(rouge_n(cand, ref, 1).f1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("rouge-1: repeated candidate tokens are clipped") {
    // candidate {7,7,7}, reference {7,1,2}: clipped overlap 1,
    // precision 1/3, recall 1/3, f1 = 1/3
    std::vector<int> cand = {7, 7, 7};
    std::vector<int> ref = {7, 1, 2};
    RougeScore r = rouge_n(cand, ref, 1);
    CHECK(r.precision == doctest::Approx(1.0 / 3.0));
    CHECK(r.recall == doctest::Approx(1.0 / 3.0));
    CHECK(r.f1 == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("rouge-2: bigram hand case") {
    // candidate {1,2,3}, reference {1,2,4}: bigrams {12,23} vs {12,24},
    // overlap 1 => precision = recall = 1/2, f1 = 0.5
    std::vector<int> cand = {1, 2, 3};
    std::vector<int> ref = {1, 2, 4};
    CHECK(rouge_n(cand, ref, 2).f1 == doctest::Approx(0.5));
}

TEST_CASE("rouge-l: lcs hand case gives 0.8") {
    // lcs {1,2,3,4} of length 4 over two length-5 sequences:
    // precision = recall = 4/5 => f1 = 0.8
    std::vector<int> cand = {1, 2, 3, 4, 5};
    std::vector<int> ref = {1, 2, 3, 4, 9};
    RougeScore r = rouge_l(cand, ref);
    CHECK(r.precision == doctest::Approx(0.8));
    CHECK(r.recall == doctest::Approx(0.8));
    CHECK(r.f1 == doctest::Approx(0.8));
}

TEST_CASE("rouge-l: lcs respects order, not just content") {
    std::vector<int> cand = {3, 2, 1};
    std::vector<int> ref = {1, 2, 3};
    // longest common subsequence of a sequence and its reverse is length 1
    RougeScore r = rouge_l(cand, ref);
    CHECK(r.f1 == doctest::Approx(2.0 * (1.0 / 3) * (1.0 / 3) / (2.0 / 3)));
}

TEST_CASE("empty inputs flag degenerate instead of throwing") {
    std::vector<int> s = {1, 2};
    std::vector<int> empty;
    for (const RougeScore& r :
         {rouge_n(empty, s, 1), rouge_n(s, empty, 1), rouge_n(empty, empty, 2),
          rouge_l(empty, s), rouge_l(s, empty)}) {
        CHECK(r.degenerate);
        CHECK(r.f1 == 0.0);
    }
}

TEST_CASE("rouge_n rejects unsupported n") {
    std::vector<int> s = {1, 2, 3};
    CHECK_THROWS_AS(rouge_n(s, s, 0), ContractError);
    CHECK_THROWS_AS(rouge_n(s, s, 3), ContractError);
}

TEST_CASE("rouge-l DP matches exhaustive LCS on 200 random pairs") {
    Rng rng = make_rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> a(1 + uniform_index(rng, 12));
        std::vector<int> b(1 + uniform_index(rng, 12));
        for (int& v : a) v = static_cast<int>(uniform_index(rng, 5));
        for (int& v : b) v = static_cast<int>(uniform_index(rng, 5));
        const double lcs = static_cast<double>(oracles::lcs_exhaustive(a, b));
        RougeScore r = rouge_l(a, b);
        const double p = lcs / a.size();
        const double q = lcs / b.size();
        const double f1 = (p + q) > 0.0 ? 2.0 * p * q / (p + q) : 0.0;
        CHECK(r.f1 == doctest::Approx(f1).epsilon(1e-12));
    }
}
