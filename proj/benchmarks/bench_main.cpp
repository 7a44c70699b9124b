// Microbenchmarks for the hot paths: the structured transition apply, the two
// steady-state solvers, one engine evaluation, and one benchmark grid point.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "mocu/bnp.hpp"
#include "mocu/cellcycle.hpp"
#include "mocu/engine.hpp"
#include "mocu/quad.hpp"
#include "mocu/rng.hpp"

namespace {

mocu::GeneNetwork random_network(int n, std::uint64_t seed) {
    mocu::Rng rng(seed);
    mocu::GeneNetwork net;
    for (int g = 0; g < n; ++g) net.genes.push_back("g" + std::to_string(g));
    std::vector<int> sources(static_cast<std::size_t>(n));
    std::iota(sources.begin(), sources.end(), 0);
    for (int target = 0; target < n; ++target) {
        const std::size_t degree = 1 + rng.bounded(3);
        for (std::size_t i = 0; i < degree; ++i) {
            const std::size_t j = i + rng.bounded(sources.size() - i);
            std::swap(sources[i], sources[j]);
            mocu::Edge edge;
            edge.source = sources[i];
            edge.target = target;
            edge.sign = rng.bounded(2) == 0 ? mocu::EdgeSign::Activating
                                            : mocu::EdgeSign::Suppressing;
            net.edges.push_back(edge);
        }
    }
    return net;
}

void BM_TransitionApply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto table = mocu::build_truth_table(random_network(n, 42));
    const mocu::TransitionOperator op(table, 0.01);
    const auto size = std::size_t{1} << n;
    std::vector<double> pi(size, 1.0 / static_cast<double>(size));
    std::vector<double> out(size);
    for (auto _ : state) {
        op.apply(pi, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(size));
}
BENCHMARK(BM_TransitionApply)->Arg(8)->Arg(10)->Arg(12);

void BM_SteadyPower(benchmark::State& state) {
    const auto file =
        mocu::load_network({std::string(MOCU_DATA_DIR) + "/mammalian_cell_cycle.json"});
    const mocu::BnpModel model{file.network, file.perturbation};
    mocu::SolverConfig config;
    config.method = mocu::SteadyMethod::StructuredPower;
    for (auto _ : state) {
        const auto ss = mocu::steady_state(model, config);
        benchmark::DoNotOptimize(ss.pi.data());
    }
}
BENCHMARK(BM_SteadyPower);

void BM_SteadyDense(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto table = mocu::build_truth_table(random_network(n, 43));
    for (auto _ : state) {
        const auto ss = mocu::dense_steady_state(table, 0.01);
        benchmark::DoNotOptimize(ss.pi.data());
    }
}
BENCHMARK(BM_SteadyDense)->Arg(8)->Arg(10);

void BM_MocuAtLambda(benchmark::State& state) {
    constexpr int kModels = 8, kOps = 10, kObjectives = 2;
    mocu::Rng rng(44);
    auto tables = std::make_shared<std::vector<std::vector<double>>>();
    tables->assign(kObjectives, std::vector<double>(kModels * kOps));
    for (auto& t : *tables)
        for (auto& v : t) v = rng.uniform();

    std::vector<int> models(kModels);
    std::iota(models.begin(), models.end(), 0);
    std::vector<int> op_list(kOps);
    std::iota(op_list.begin(), op_list.end(), 0);
    const auto cls = mocu::UncertaintyClass<int>::finite_uniform(models);
    const auto ops = mocu::OperatorClass<int, int>::finite(op_list);
    mocu::CostFunctionSet<int, int> costs;
    for (int j = 0; j < kObjectives; ++j)
        costs.costs.push_back([tables, j](const int& m, const int& o) {
            return (*tables)[static_cast<std::size_t>(j)]
                            [static_cast<std::size_t>(m * kOps + o)];
        });
    const auto lambda = mocu::WeightVector::pair(0.375);

    for (auto _ : state) {
        mocu::Rng eval_rng(7);
        benchmark::DoNotOptimize(
            mocu::mocu_at_lambda(cls, lambda, ops, costs, eval_rng));
    }
}
BENCHMARK(BM_MocuAtLambda);

void BM_QuadGridPoint(benchmark::State& state) {
    mocu::CaseConfig config;
    config.case_id = 1;
    config.c_grid = {1.0};
    config.d_grid = {0.0};
    config.delta_grid = {2.0};
    config.theta_samples = 1000;
    config.lambda_grid = 100;
    config.seed = 42;
    for (auto _ : state) {
        const auto table = mocu::run_case(config);
        benchmark::DoNotOptimize(table.rows.data());
    }
}
BENCHMARK(BM_QuadGridPoint);

}  // namespace

BENCHMARK_MAIN();
