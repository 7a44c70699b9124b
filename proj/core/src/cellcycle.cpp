#include "mocu/cellcycle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "mocu/rng.hpp"
#include "mocu/uncertainty.hpp"

namespace mocu {

namespace {

std::pair<double, double> compute_mass_pair(const TruthTable& table, double p,
                                            const SolverConfig& solver) {
    const SteadyState ss = steady_state(table, p, solver);
    return {state_mass(ss, undesirable_states(table.n)),
            state_mass(ss, constrained_states(table.n))};
}

std::uint64_t absorb(std::uint64_t h, std::uint64_t x) { return mix64(h ^ x); }

}  // namespace

const std::vector<std::string>& cell_cycle_gene_order() {
    static const std::vector<std::string> order = {
        "CycD", "Rb",   "p27",  "E2F",    "CycE",
        "CycA", "Cdc20", "Cdh1", "UbcH10", "CycB"};
    return order;
}

NetworkFile load_network(const CellCycleSpec& spec) {
    NetworkFile file = load_network_file(spec.path);
    const auto& net = file.network;
    if (net.gene_count() != spec.expected_genes)
        throw LoadError(spec.path + ": expected " + std::to_string(spec.expected_genes) +
                        " genes, found " + std::to_string(net.gene_count()));
    if (net.genes != cell_cycle_gene_order())
        throw LoadError(spec.path + ": gene list must match the canonical order " +
                        "CycD, Rb, p27, E2F, CycE, CycA, Cdc20, Cdh1, UbcH10, CycB");
    if (static_cast<int>(net.edges.size()) != spec.expected_edges)
        throw LoadError(spec.path + ": expected " + std::to_string(spec.expected_edges) +
                        " edges, found " + std::to_string(net.edges.size()));
    if (!net.fully_signed())
        throw LoadError(spec.path + ": every edge sign must be known");
    return file;
}

StateSet undesirable_states(int n) {
    if (n < 3 || n > 20)
        throw std::invalid_argument("undesirable set needs at least 3 genes");
    return StateSet::from_predicate(n, [](State x) { return (x & 0x7u) == 0; });
}

StateSet constrained_states(int n) {
    if (n < 7 || n > 20)
        throw std::invalid_argument("constrained set needs at least 7 genes");
    return StateSet::from_predicate(
        n, [](State x) { return ((x >> 6) & 1u) == 1u && (x & 0x7u) != 0; });
}

void NetworkUncertaintyClass::validate() const {
    base.validate();
    const int edge_count = static_cast<int>(base.edges.size());
    int prev = -1;
    for (int e : unknown_edges) {
        if (e < 0 || e >= edge_count)
            throw std::invalid_argument("unknown edge index out of range");
        if (e <= prev)
            throw std::invalid_argument("unknown edge indices must be ascending and unique");
        prev = e;
    }
}

GeneNetwork NetworkUncertaintyClass::model(std::size_t assignment) const {
    if (assignment >= model_count())
        throw std::invalid_argument("sign assignment out of range");
    GeneNetwork m = base;
    for (std::size_t j = 0; j < unknown_edges.size(); ++j)
        m.edges[unknown_edges[j]].sign =
            (assignment >> j) & 1u ? EdgeSign::Suppressing : EdgeSign::Activating;
    return m;
}

std::pair<double, double> SteadyStateCache::mass_pair(const TruthTable& table,
                                                      double p,
                                                      const SolverConfig& solver) {
    Key key;
    key.a = absorb(0x243f6a8885a308d3ull, static_cast<std::uint64_t>(table.n));
    key.b = absorb(0x13198a2e03707344ull, static_cast<std::uint64_t>(table.n));
    for (State y : table.next) {
        key.a = absorb(key.a, y);
        key.b = absorb(key.b, y);
    }
    for (std::uint64_t field : {std::bit_cast<std::uint64_t>(p),
                                static_cast<std::uint64_t>(solver.method),
                                std::bit_cast<std::uint64_t>(solver.tol),
                                static_cast<std::uint64_t>(solver.max_iter)}) {
        key.a = absorb(key.a, field);
        key.b = absorb(key.b, field);
    }

    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = map_.find(key);
        if (it != map_.end()) {
            ++stats_.hits;
            return it->second;
        }
    }
    const auto value = compute_mass_pair(table, p, solver);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        map_[key] = value;
        ++stats_.misses;
    }
    return value;
}

SteadyCacheStats SteadyStateCache::stats() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return stats_;
}

void SteadyStateCache::clear() {
    std::lock_guard<std::mutex> lock(mutex_);
    map_.clear();
    stats_ = {};
}

std::pair<double, double> intervention_cost_pair(const GeneNetwork& network, double p,
                                                 const Intervention& iv,
                                                 const SolverConfig& solver,
                                                 SteadyStateCache* cache) {
    const TruthTable table = build_truth_table(apply_intervention(network, iv));
    if (table.n < 7)
        throw std::invalid_argument("cost pair needs the constrained set's gene");
    if (cache) return cache->mass_pair(table, p, solver);
    return compute_mass_pair(table, p, solver);
}

InterventionReport mocu_for_class(const NetworkUncertaintyClass& cls,
                                  const WeightDistribution& dist,
                                  const ClassEvalOptions& opts,
                                  SteadyStateCache* cache) {
    cls.validate();
    if (opts.k_cap < 0 || opts.k_cap > 20)
        throw std::invalid_argument("k_cap must lie in [0, 20]");
    if (static_cast<int>(cls.unknown_edges.size()) > opts.k_cap)
        throw std::invalid_argument("unknown edge count exceeds the enumeration cap");
    if (!(opts.perturbation > 0.0 && opts.perturbation < 1.0))
        throw std::invalid_argument("perturbation probability must lie in (0, 1)");

    std::vector<GeneNetwork> models;
    models.reserve(cls.model_count());
    for (std::size_t a = 0; a < cls.model_count(); ++a) models.push_back(cls.model(a));
    const auto theta = UncertaintyClass<GeneNetwork>::finite_uniform(std::move(models));

    // Edge blocks in edge order; None, when enabled, goes last so argmin
    // tie-breaking still favors the lowest edge index.
    std::vector<Intervention> interventions;
    interventions.reserve(cls.base.edges.size() + 1);
    for (int i = 0; i < static_cast<int>(cls.base.edges.size()); ++i)
        interventions.push_back(Intervention::block_edge(i));
    if (opts.allow_null_intervention) interventions.push_back(Intervention::none());
    const auto ops =
        OperatorClass<GeneNetwork, Intervention>::finite(std::move(interventions));

    const double p = opts.perturbation;
    const SolverConfig solver = opts.solver;
    const CostFunctionSet<GeneNetwork, Intervention> costs{
        {[p, solver, cache](const GeneNetwork& net, const Intervention& iv) {
             return intervention_cost_pair(net, p, iv, solver, cache).first;
         },
         [p, solver, cache](const GeneNetwork& net, const Intervention& iv) {
             return intervention_cost_pair(net, p, iv, solver, cache).second;
         }}};

    Rng rng(0);  // finite class + grid distribution: no randomness consumed
    return multi_objective_mocu(theta, dist, ops, costs, rng);
}

}  // namespace mocu
