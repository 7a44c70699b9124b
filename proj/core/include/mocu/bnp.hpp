#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mocu {

enum class EdgeSign : int { Suppressing = -1, Unknown = 0, Activating = 1 };

/// Directed regulation between gene indices. Unknown signs may appear only
/// while building uncertainty classes; simulation requires full signs.
struct Edge {
    int source = 0;
    int target = 0;
    EdgeSign sign = EdgeSign::Unknown;
};

/**
 * Signed regulatory graph under the signed-majority-vote update: gene i's
 * next value follows the sign of the summed signs of its expressed
 * regulators, holding the current value on a zero sum (ties and genes with
 * no expressed regulator).
 */
struct GeneNetwork {
    std::vector<std::string> genes;
    std::vector<Edge> edges;

    int gene_count() const { return static_cast<int>(genes.size()); }

    /// Unique nonempty gene names, n <= 20, valid edge endpoints, no
    /// duplicate (source, target) pairs. Throws std::invalid_argument.
    void validate() const;

    bool fully_signed() const;
};

/// Network state encoded as an integer; gene i occupies bit i (the first
/// listed gene is the least significant bit).
using State = std::uint32_t;

/// Deterministic update of every gene, tabulated over all 2^n states.
struct TruthTable {
    int n = 0;
    std::vector<State> next;
};

/// Requires a fully signed network.
TruthTable build_truth_table(const GeneNetwork& network);

/// Single deterministic update. Requires a fully signed network.
State next_state(const GeneNetwork& network, State state);

struct Intervention {
    enum class Kind { None, BlockEdge };

    Kind kind = Kind::None;
    int edge = -1;

    static Intervention none() { return {}; }
    static Intervention block_edge(int index) {
        return {Kind::BlockEdge, index};
    }

    bool operator==(const Intervention&) const = default;
};

/// Copy of the network with the blocked edge removed from its target's
/// majority vote; None returns the network unchanged.
GeneNetwork apply_intervention(const GeneNetwork& network, const Intervention& iv);

/// Boolean network with perturbation: the deterministic update fires only
/// when none of the n independent per-gene flips (probability p each)
/// occurs. p > 0 makes the chain ergodic.
struct BnpModel {
    GeneNetwork network;
    double p = 0.01;
};

/**
 * One application of the BNp transition kernel
 *   P(x -> y) = (1-p)^n 1[f(x)=y] + p^h (1-p)^(n-h) 1[h>0],  h = H(x, y),
 * computed structurally in O(n 2^n): the full per-gene flip channel as n
 * in-place two-point mixes, minus the channel's stay-put part, plus the
 * deterministic pushforward scaled by (1-p)^n.
 */
class TransitionOperator {
public:
    TransitionOperator(TruthTable table, double p);

    int n() const { return table_.n; }
    std::size_t size() const { return table_.next.size(); }

    /// out = in P. Spans must both have length 2^n and must not alias.
    void apply(std::span<const double> in, std::span<double> out) const;

private:
    TruthTable table_;
    double p_;
    double stay_;  // (1-p)^n
};

/// Convenience wrapper validating that pi_in is a distribution.
std::vector<double> transition_apply(const BnpModel& model,
                                     std::span<const double> pi_in);

enum class SteadyMethod { StructuredPower, DenseSolve };

struct SolverConfig {
    SteadyMethod method = SteadyMethod::StructuredPower;
    double tol = 1e-12;          // L1 stopping threshold between iterates
    std::int64_t max_iter = 1'000'000;
};

struct SteadyState {
    std::vector<double> pi;
    double residual = 0.0;       // ||pi P - pi||_1 recomputed on the result
    std::int64_t iterations = 0; // 0 for DenseSolve
    SteadyMethod method = SteadyMethod::StructuredPower;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(double residual, std::int64_t iterations);

    double residual() const { return residual_; }
    std::int64_t iterations() const { return iterations_; }

private:
    double residual_;
    std::int64_t iterations_;
};

/// Stationary distribution of the BNp chain. StructuredPower iterates the
/// transition from the uniform distribution; DenseSolve (n <= 12) solves the
/// stationarity system directly. Throws ConvergenceError when the power
/// method fails to reach tol within max_iter.
SteadyState steady_state(const BnpModel& model, const SolverConfig& config = {});

/// Same solve for a prebuilt truth table.
SteadyState steady_state(const TruthTable& table, double p,
                         const SolverConfig& config = {});

/// Power iteration from an explicit initial distribution (the limit is
/// initial-state independent; exposed so that can be exercised).
SteadyState steady_state_from(const BnpModel& model, std::span<const double> init,
                              const SolverConfig& config = {});

/// Row-major dense kernel, size 2^n x 2^n; accepts p in [0, 1) so the p = 0
/// deterministic indicator is constructible.
std::vector<double> dense_transition_matrix(const TruthTable& table, double p);

/// Direct stationary solve on the dense kernel; requires n <= 12 and p > 0.
SteadyState dense_steady_state(const TruthTable& table, double p);

/// Membership table over the 2^n states for one predicate.
struct StateSet {
    int n = 0;
    std::vector<std::uint8_t> member;

    static StateSet from_predicate(int n, const std::function<bool(State)>& pred);

    std::size_t count() const;
};

/// Total stationary mass of the member states.
double state_mass(const SteadyState& steady, const StateSet& set);

/// Raised for unreadable or schema-violating network files.
class LoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NetworkFile {
    GeneNetwork network;
    double perturbation = 0.01;
};

/**
 * Load a JSON network definition:
 *   {"genes": ["A", ...],
 *    "edges": [{"source": "A", "target": "B", "sign": "activating"}, ...],
 *    "perturbation": 0.01}
 * Gene order in the file defines bit order. Sign strings are "activating",
 * "suppressing", or "unknown". Throws LoadError with the offending detail.
 */
NetworkFile load_network_file(const std::string& path);

}  // namespace mocu
