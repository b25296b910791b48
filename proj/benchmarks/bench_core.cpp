#include <benchmark/benchmark.h>

#include "airlex/analysis.hpp"
#include "airlex/graph.hpp"
#include "airlex/mlp.hpp"
#include "airlex/rng.hpp"
#include "airlex/rouge.hpp"

using namespace airlex;

namespace {

void BM_MlpForward(benchmark::State& state) {
    const std::size_t dim = static_cast<std::size_t>(state.range(0));
    Mlp net = Mlp::make({dim, dim, dim}, 1);
    Tensor x = Tensor::zeros({dim});
    for (std::size_t i = 0; i < dim; ++i) x.data[i] = 0.01 * static_cast<double>(i);
    for (auto _ : state) {
        benchmark::DoNotOptimize(net.forward(x));
    }
}
BENCHMARK(BM_MlpForward)->Arg(16)->Arg(64)->Arg(256);

void BM_MlpBackward(benchmark::State& state) {
    const std::size_t dim = static_cast<std::size_t>(state.range(0));
    Mlp net = Mlp::make({dim, dim, dim}, 1);
    Tensor x = Tensor::zeros({dim});
    for (std::size_t i = 0; i < dim; ++i) x.data[i] = 0.01 * static_cast<double>(i);
    for (auto _ : state) {
        net.zero_grad();
        Graph g;
        Var loss = g.sum(net.forward(g, g.constant(x)));
        g.backward(loss);
        benchmark::DoNotOptimize(net.get_grad(0));
    }
}
BENCHMARK(BM_MlpBackward)->Arg(16)->Arg(64)->Arg(256);

void BM_RougeL(benchmark::State& state) {
    const std::size_t len = static_cast<std::size_t>(state.range(0));
    Rng rng = make_rng(3);
    std::vector<int> a(len), b(len);
    for (std::size_t i = 0; i < len; ++i) {
        a[i] = static_cast<int>(uniform_index(rng, 50));
        b[i] = static_cast<int>(uniform_index(rng, 50));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(rouge_l(a, b));
    }
}
BENCHMARK(BM_RougeL)->Arg(16)->Arg(128)->Arg(1024);

void BM_NormalizedMi(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Rng rng = make_rng(4);
    std::vector<int> x(n);
    std::vector<double> rewards(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<int>(uniform_index(rng, 8));
        rewards[i] = uniform(rng, 0.0, 1.0);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(normalized_mi(x, rewards, 8));
    }
}
BENCHMARK(BM_NormalizedMi)->Arg(1000)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
