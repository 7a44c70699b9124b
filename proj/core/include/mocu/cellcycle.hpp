#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mocu/bnp.hpp"
#include "mocu/engine.hpp"
#include "mocu/weights.hpp"

namespace mocu {

/// Gene order fixed by the cell-cycle model; the first name is bit 0.
const std::vector<std::string>& cell_cycle_gene_order();

struct CellCycleSpec {
    std::string path;
    int expected_genes = 10;
    int expected_edges = 35;
};

/// Load the cell-cycle network file and enforce the experiment's hard
/// constraints: gene names exactly in canonical order, expected edge count,
/// every sign known. Throws LoadError naming the violated constraint.
NetworkFile load_network(const CellCycleSpec& spec);

/// Undesirable set U: the first three genes (CycD, Rb, p27) all down.
StateSet undesirable_states(int n);

/// Constrained set P: Cdc20 (bit 6) up, excluding U.
StateSet constrained_states(int n);

/**
 * Uncertainty class over edge signs: all 2^k complete sign assignments of
 * the listed unknown edges, uniformly weighted. Assignment bit j clear makes
 * unknown_edges[j] activating, set makes it suppressing.
 */
struct NetworkUncertaintyClass {
    GeneNetwork base;
    std::vector<int> unknown_edges;  // ascending, unique, valid edge indices

    void validate() const;
    std::size_t model_count() const {
        return std::size_t{1} << unknown_edges.size();
    }
    GeneNetwork model(std::size_t assignment) const;
};

struct SteadyCacheStats {
    std::size_t hits = 0;
    std::size_t misses = 0;
};

/**
 * Concurrent memo of (pi_U, pi_P) keyed by a digest of the full truth table
 * plus the solver inputs, so functionally identical (sign assignment,
 * intervention) pairs share one solve. Concurrent misses may duplicate work;
 * values are idempotent, last writer wins.
 */
class SteadyStateCache {
public:
    std::pair<double, double> mass_pair(const TruthTable& table, double p,
                                        const SolverConfig& solver);

    SteadyCacheStats stats() const;
    void clear();

private:
    struct Key {
        std::uint64_t a = 0;
        std::uint64_t b = 0;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return static_cast<std::size_t>(k.a);
        }
    };

    mutable std::mutex mutex_;
    std::unordered_map<Key, std::pair<double, double>, KeyHash> map_;
    SteadyCacheStats stats_;
};

struct ClassEvalOptions {
    double perturbation = 0.01;
    SolverConfig solver;
    bool allow_null_intervention = false;  // adds None after the edge blocks
    int k_cap = 12;                        // bounds the 2^k enumeration
};

/// Steady-state cost pair (pi_U, pi_P) of the intervened network. A non-null
/// cache memoizes by truth-table digest.
std::pair<double, double> intervention_cost_pair(const GeneNetwork& network, double p,
                                                 const Intervention& iv,
                                                 const SolverConfig& solver,
                                                 SteadyStateCache* cache = nullptr);

using InterventionReport = MocuReport<Intervention>;

/**
 * Multi-objective MOCU of one uncertainty class: exact finite expectations
 * over the 2^k sign assignments, operator class = one block per edge (plus
 * None when enabled), costs (pi_U, pi_P). Deterministic; consumes no
 * randomness for grid weight distributions.
 */
InterventionReport mocu_for_class(const NetworkUncertaintyClass& cls,
                                  const WeightDistribution& dist,
                                  const ClassEvalOptions& opts = {},
                                  SteadyStateCache* cache = nullptr);

struct ExperimentConfig {
    std::vector<int> ks;       // unknown-edge counts; k = 0 gives the singleton class
    int runs = 500;
    int lambda_intervals = 100;
    std::uint64_t seed = 0;
    int workers = 0;           // 0 -> hardware concurrency
    ClassEvalOptions eval;
};

struct RunRecord {
    int k = 0;
    int run = 0;
    std::uint64_t seed = 0;    // mix of (master seed, k, run)
    double eta_multi = 0.0;
};

struct KSummary {
    int k = 0;
    double min = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double mean_plus_std = 0.0;
    int runs = 0;
};

struct RunStats {
    std::vector<RunRecord> records;    // (k, run) order
    std::vector<KSummary> summaries;   // config.ks order
};

/// Invoked once per newly computed run (resumed records are not
/// re-announced), serialized across workers; invocation order is
/// schedule-dependent, record contents are not.
using RunCallback = std::function<void(const RunRecord&)>;

/**
 * Per-k random uncertainty classes and their MOCU statistics. Each run draws
 * an independent uniform k-subset of the edges from a stream seeded by
 * (master seed, k, run), so results are reproducible per run and independent
 * of worker count. Records listed in `resume` are reused without
 * recomputation; aggregation always happens in (k, run) order.
 */
RunStats run_experiment(const GeneNetwork& base, const ExperimentConfig& config,
                        SteadyStateCache* cache = nullptr,
                        const RunCallback& on_run = {},
                        std::span<const RunRecord> resume = {});

}  // namespace mocu
