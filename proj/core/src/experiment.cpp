#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>

#include "mocu/cellcycle.hpp"
#include "mocu/numeric.hpp"
#include "mocu/rng.hpp"

namespace mocu {

namespace {

int resolve_workers(int workers) {
    if (workers < 0) throw std::invalid_argument("workers must be >= 0");
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Work-stealing-free task pool: an atomic counter hands out indices. Bodies
/// must be independent; the first exception wins and aborts remaining work.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto drain = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) return;
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };
    const std::size_t spawn = std::min<std::size_t>(
        static_cast<std::size_t>(workers), count);
    std::vector<std::thread> pool;
    pool.reserve(spawn);
    for (std::size_t t = 0; t < spawn; ++t) pool.emplace_back(drain);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

/// Uniform k-subset of {0, ..., universe-1} by partial Fisher-Yates,
/// returned ascending.
std::vector<int> sorted_subset(int universe, int k, Rng& rng) {
    std::vector<int> pool(universe);
    std::iota(pool.begin(), pool.end(), 0);
    for (int j = 0; j < k; ++j) {
        const int pick =
            j + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(universe - j)));
        std::swap(pool[j], pool[pick]);
    }
    std::vector<int> subset(pool.begin(), pool.begin() + k);
    std::sort(subset.begin(), subset.end());
    return subset;
}

}  // namespace

RunStats run_experiment(const GeneNetwork& base, const ExperimentConfig& config,
                        SteadyStateCache* cache, const RunCallback& on_run,
                        std::span<const RunRecord> resume) {
    base.validate();
    if (!base.fully_signed())
        throw std::invalid_argument("experiment base network must be fully signed");
    if (config.runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (config.ks.empty()) throw std::invalid_argument("k list must be nonempty");
    if (config.lambda_intervals < 1)
        throw std::invalid_argument("lambda_intervals must be >= 1");
    const int edge_count = static_cast<int>(base.edges.size());
    for (int k : config.ks)
        if (k < 0 || k > edge_count || k > config.eval.k_cap)
            throw std::invalid_argument(
                "k must lie in [0, edge count] and within the enumeration cap");

    const auto dist = WeightDistribution::uniform_grid2(config.lambda_intervals + 1);

    std::map<std::pair<int, int>, double> resumed;
    for (const auto& r : resume) resumed[{r.k, r.run}] = r.eta_multi;

    struct Task {
        int k;
        int run;
    };
    std::vector<Task> tasks;
    tasks.reserve(config.ks.size() * static_cast<std::size_t>(config.runs));
    for (int k : config.ks)
        for (int run = 0; run < config.runs; ++run) tasks.push_back({k, run});

    RunStats stats;
    stats.records.resize(tasks.size());
    std::mutex callback_mutex;
    parallel_for(tasks.size(), resolve_workers(config.workers), [&](std::size_t i) {
        const Task task = tasks[i];
        const std::uint64_t run_seed =
            mix_seed(config.seed, static_cast<std::uint64_t>(task.k),
                     static_cast<std::uint64_t>(task.run));
        RunRecord record{task.k, task.run, run_seed, 0.0};
        const auto it = resumed.find({task.k, task.run});
        if (it != resumed.end()) {
            record.eta_multi = it->second;
        } else {
            Rng rng(run_seed);
            const NetworkUncertaintyClass cls{base,
                                              sorted_subset(edge_count, task.k, rng)};
            record.eta_multi = mocu_for_class(cls, dist, config.eval, cache).eta_multi;
            if (on_run) {
                std::lock_guard<std::mutex> lock(callback_mutex);
                on_run(record);
            }
        }
        stats.records[i] = record;
    });

    stats.summaries.reserve(config.ks.size());
    std::size_t offset = 0;
    for (int k : config.ks) {
        std::vector<double> etas(static_cast<std::size_t>(config.runs));
        for (int run = 0; run < config.runs; ++run)
            etas[run] = stats.records[offset + run].eta_multi;
        const SampleStats s = sample_stats(etas);
        stats.summaries.push_back(
            {k, s.min, s.median, s.mean, s.mean + s.stddev, config.runs});
        offset += static_cast<std::size_t>(config.runs);
    }
    return stats;
}

}  // namespace mocu
