#include "mocu/bnp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <utility>

#include "mocu/numeric.hpp"

namespace mocu {

namespace {

void check_perturbation(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("perturbation probability must lie in (0, 1)");
}

void check_truth_table(const TruthTable& t) {
    if (t.n < 1 || t.n > 20)
        throw std::invalid_argument("truth table gene count out of range");
    const std::size_t size = std::size_t{1} << t.n;
    if (t.next.size() != size)
        throw std::invalid_argument("truth table size must be 2^n");
    for (State y : t.next)
        if (y >= size) throw std::invalid_argument("truth table entry out of range");
}

void check_distribution(std::span<const double> pi, int n) {
    if (pi.size() != (std::size_t{1} << n))
        throw std::invalid_argument("distribution length must be 2^n");
    KahanSum sum;
    for (double v : pi) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("distribution entries must be >= 0");
        sum.add(v);
    }
    if (std::abs(sum.value() - 1.0) > 1e-9)
        throw std::invalid_argument("distribution entries must sum to 1");
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    KahanSum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add(std::abs(a[i] - b[i]));
    return s.value();
}

/// Clamp rounding negatives, renormalize, and recompute the fixed-point
/// residual with one extra kernel application.
SteadyState finalize(const TransitionOperator& op, std::vector<double> pi,
                     std::int64_t iterations, SteadyMethod method) {
    for (double& v : pi)
        if (v < 0.0) v = 0.0;
    const double total = kahan_total(pi);
    if (!(total > 0.0))
        throw std::runtime_error("steady-state solve produced a zero vector");
    for (double& v : pi) v /= total;
    std::vector<double> check(pi.size());
    op.apply(pi, check);
    const double residual = l1_distance(pi, check);
    return {std::move(pi), residual, iterations, method};
}

SteadyState power_solve(const TransitionOperator& op, std::vector<double> pi,
                        const SolverConfig& config) {
    if (config.tol <= 0.0 || config.max_iter < 1)
        throw std::invalid_argument("solver needs tol > 0 and max_iter >= 1");
    std::vector<double> next(pi.size());
    double delta = std::numeric_limits<double>::infinity();
    for (std::int64_t it = 1; it <= config.max_iter; ++it) {
        op.apply(pi, next);
        delta = l1_distance(pi, next);
        pi.swap(next);
        if (delta < config.tol)
            return finalize(op, std::move(pi), it, SteadyMethod::StructuredPower);
    }
    throw ConvergenceError(delta, config.max_iter);
}

}  // namespace

void GeneNetwork::validate() const {
    if (genes.empty()) throw std::invalid_argument("network needs at least one gene");
    if (genes.size() > 20)
        throw std::invalid_argument("networks are limited to 20 genes");
    std::set<std::string> names;
    for (const auto& g : genes) {
        if (g.empty()) throw std::invalid_argument("gene names must be nonempty");
        if (!names.insert(g).second)
            throw std::invalid_argument("duplicate gene name: " + g);
    }
    const int n = gene_count();
    std::set<std::pair<int, int>> pairs;
    for (const auto& e : edges) {
        if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (!pairs.insert({e.source, e.target}).second)
            throw std::invalid_argument("duplicate edge " + genes[e.source] + " -> " +
                                        genes[e.target]);
    }
}

bool GeneNetwork::fully_signed() const {
    return std::all_of(edges.begin(), edges.end(),
                       [](const Edge& e) { return e.sign != EdgeSign::Unknown; });
}

TruthTable build_truth_table(const GeneNetwork& network) {
    network.validate();
    if (!network.fully_signed())
        throw std::invalid_argument("network has unknown edge signs");
    const int n = network.gene_count();
    std::vector<std::vector<std::pair<int, int>>> regs(n);  // (source, sign)
    for (const auto& e : network.edges)
        regs[e.target].push_back({e.source, static_cast<int>(e.sign)});

    TruthTable t{n, std::vector<State>(std::size_t{1} << n)};
    for (State x = 0; x < t.next.size(); ++x) {
        State y = 0;
        for (int i = 0; i < n; ++i) {
            int s = 0;
            for (const auto& [src, sgn] : regs[i])
                if ((x >> src) & 1u) s += sgn;
            const State bit = s > 0 ? 1u : (s < 0 ? 0u : ((x >> i) & 1u));
            y |= bit << i;
        }
        t.next[x] = y;
    }
    return t;
}

State next_state(const GeneNetwork& network, State state) {
    if (!network.fully_signed())
        throw std::invalid_argument("network has unknown edge signs");
    const int n = network.gene_count();
    if (n < 1 || n > 20 || (state >> n) != 0)
        throw std::invalid_argument("state out of range for this network");
    int sums[20] = {};
    for (const auto& e : network.edges)
        if ((state >> e.source) & 1u) sums[e.target] += static_cast<int>(e.sign);
    State y = 0;
    for (int i = 0; i < n; ++i) {
        const State bit = sums[i] > 0 ? 1u : (sums[i] < 0 ? 0u : ((state >> i) & 1u));
        y |= bit << i;
    }
    return y;
}

GeneNetwork apply_intervention(const GeneNetwork& network, const Intervention& iv) {
    if (iv.kind == Intervention::Kind::None) return network;
    if (iv.edge < 0 || iv.edge >= static_cast<int>(network.edges.size()))
        throw std::invalid_argument("intervention edge index out of range");
    GeneNetwork out = network;
    out.edges.erase(out.edges.begin() + iv.edge);
    return out;
}

TransitionOperator::TransitionOperator(TruthTable table, double p)
    : table_(std::move(table)), p_(p) {
    check_truth_table(table_);
    check_perturbation(p);
    stay_ = 1.0;
    for (int i = 0; i < table_.n; ++i) stay_ *= 1.0 - p;
}

void TransitionOperator::apply(std::span<const double> in,
                               std::span<double> out) const {
    const std::size_t count = table_.next.size();
    if (in.size() != count || out.size() != count)
        throw std::invalid_argument("distribution length must be 2^n");
    if (in.data() == out.data())
        throw std::invalid_argument("in and out must not alias");

    std::copy(in.begin(), in.end(), out.begin());
    const double q = 1.0 - p_;
    for (int bit = 0; bit < table_.n; ++bit) {
        const std::size_t stride = std::size_t{1} << bit;
        for (std::size_t base = 0; base < count; base += 2 * stride) {
            for (std::size_t off = 0; off < stride; ++off) {
                const std::size_t i0 = base + off;
                const std::size_t i1 = i0 + stride;
                const double a = out[i0];
                const double b = out[i1];
                out[i0] = q * a + p_ * b;
                out[i1] = p_ * a + q * b;
            }
        }
    }
    // Replace the channel's no-flip mass with the deterministic step.
    for (std::size_t x = 0; x < count; ++x) out[x] -= stay_ * in[x];
    for (std::size_t x = 0; x < count; ++x) out[table_.next[x]] += stay_ * in[x];
}

std::vector<double> transition_apply(const BnpModel& model,
                                     std::span<const double> pi_in) {
    check_perturbation(model.p);
    TransitionOperator op(build_truth_table(model.network), model.p);
    check_distribution(pi_in, op.n());
    std::vector<double> out(pi_in.size());
    op.apply(pi_in, out);
    return out;
}

ConvergenceError::ConvergenceError(double residual, std::int64_t iterations)
    : std::runtime_error([&] {
          char buf[128];
          std::snprintf(buf, sizeof(buf),
                        "steady state did not converge: residual %.3e after %lld iterations",
                        residual, static_cast<long long>(iterations));
          return std::string(buf);
      }()),
      residual_(residual),
      iterations_(iterations) {}

SteadyState steady_state(const BnpModel& model, const SolverConfig& config) {
    return steady_state(build_truth_table(model.network), model.p, config);
}

SteadyState steady_state(const TruthTable& table, double p,
                         const SolverConfig& config) {
    check_perturbation(p);
    if (config.method == SteadyMethod::DenseSolve) return dense_steady_state(table, p);
    TransitionOperator op(table, p);
    std::vector<double> uniform(op.size(), 1.0 / static_cast<double>(op.size()));
    return power_solve(op, std::move(uniform), config);
}

SteadyState steady_state_from(const BnpModel& model, std::span<const double> init,
                              const SolverConfig& config) {
    check_perturbation(model.p);
    TransitionOperator op(build_truth_table(model.network), model.p);
    check_distribution(init, op.n());
    return power_solve(op, std::vector<double>(init.begin(), init.end()), config);
}

StateSet StateSet::from_predicate(int n, const std::function<bool(State)>& pred) {
    if (n < 1 || n > 20) throw std::invalid_argument("state set gene count out of range");
    if (!pred) throw std::invalid_argument("state set needs a predicate");
    StateSet set;
    set.n = n;
    set.member.resize(std::size_t{1} << n);
    for (State x = 0; x < set.member.size(); ++x) set.member[x] = pred(x) ? 1 : 0;
    return set;
}

std::size_t StateSet::count() const {
    return static_cast<std::size_t>(
        std::count(member.begin(), member.end(), std::uint8_t{1}));
}

double state_mass(const SteadyState& steady, const StateSet& set) {
    if (steady.pi.size() != set.member.size())
        throw std::invalid_argument("state set and distribution sizes must match");
    KahanSum s;
    for (std::size_t x = 0; x < set.member.size(); ++x)
        if (set.member[x]) s.add(steady.pi[x]);
    return s.value();
}

}  // namespace mocu
