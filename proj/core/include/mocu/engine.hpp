#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mocu/numeric.hpp"
#include "mocu/rng.hpp"
#include "mocu/uncertainty.hpp"
#include "mocu/weights.hpp"

namespace mocu {

namespace detail {

// Child-stream tags; evaluations derive from the caller's construction seed
// so results depend only on (seed, config), never on prior draw counts.
inline constexpr std::uint64_t kLambdaStream = 1;
inline constexpr std::uint64_t kThetaStream = 2;

inline double checked_cost(double c) {
    if (!std::isfinite(c) || c < 0.0)
        throw std::runtime_error("cost function returned a non-finite or negative value");
    return c;
}

/// Weighted sum of a cost vector, skipping zero weights so unit vectors
/// reduce to the bare objective cost exactly. Index order, compensated.
inline double combined_from_vector(std::span<const double> cost_vec,
                                   const WeightVector& lambda) {
    KahanSum s;
    for (std::size_t i = 0; i < cost_vec.size(); ++i) {
        const double li = lambda[i];
        if (li == 0.0) continue;
        s.add(li * cost_vec[i]);
    }
    return s.value();
}

}  // namespace detail

/// Weighted combined cost Σ_i λ_i ξ^i(model, operator). Zero-weight
/// objectives are skipped, so a unit weight vector returns that objective's
/// cost exactly.
template <typename Model, typename Op>
double combined_cost(const Model& model, const Op& op, const WeightVector& lambda,
                     const CostFunctionSet<Model, Op>& costs) {
    if (costs.arity() == 0)
        throw std::invalid_argument("cost function set must be nonempty");
    if (lambda.arity() != costs.arity())
        throw std::invalid_argument("weight vector arity must match cost count");
    KahanSum s;
    for (std::size_t i = 0; i < costs.arity(); ++i) {
        const double li = lambda[i];
        if (li == 0.0) continue;
        s.add(li * detail::checked_cost(costs.costs[i](model, op)));
    }
    return s.value();
}

template <typename Op>
struct OperatorChoice {
    Op op;
    double cost = 0.0;  // combined cost (optimal) or expected combined cost (robust)
};

/// Model-specific optimal operator: exact enumeration argmin for finite
/// classes (ties break to the lowest index), minimizer hook for analytic
/// ones. The returned cost is the combined cost of the returned operator.
template <typename Model, typename Op>
OperatorChoice<Op> optimal_operator(const Model& model, const WeightVector& lambda,
                                    const OperatorClass<Model, Op>& ops,
                                    const CostFunctionSet<Model, Op>& costs) {
    if (ops.kind() == OperatorClass<Model, Op>::Kind::Analytic) {
        Op op = ops.minimizer()(model, lambda);
        const double c = combined_cost(model, op, lambda, costs);
        return {std::move(op), c};
    }
    const auto& list = ops.operators();
    std::size_t best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < list.size(); ++i) {
        const double c = combined_cost(model, list[i], lambda, costs);
        if (c < best_cost) {
            best_cost = c;
            best = i;
        }
    }
    return {list[best], best_cost};
}

namespace detail {

/**
 * Evaluation over one realized model set. Finite operator classes get their
 * full (model x operator) cost-vector matrix evaluated once up front and
 * reused for every weight vector; analytic classes call their hooks per
 * evaluation. All reductions are compensated sums in index order.
 */
template <typename Model, typename Op>
class RealizedEval {
public:
    RealizedEval(const Realization<Model>& real, const OperatorClass<Model, Op>& ops,
                 const CostFunctionSet<Model, Op>& costs)
        : real_(real), ops_(ops), costs_(costs) {
        if (costs.arity() == 0)
            throw std::invalid_argument("cost function set must be nonempty");
        if (ops.kind() == OperatorClass<Model, Op>::Kind::Finite) {
            const std::size_t m = real.models.size();
            const std::size_t o = ops.operators().size();
            const std::size_t n = costs.arity();
            matrix_.resize(m * o * n);
            for (std::size_t im = 0; im < m; ++im)
                for (std::size_t io = 0; io < o; ++io)
                    for (std::size_t i = 0; i < n; ++i)
                        matrix_[(im * o + io) * n + i] = checked_cost(
                            costs.costs[i](real.models[im], ops.operators()[io]));
        }
    }

    struct Node {
        double raw_eta;  // may be a tiny negative from cancellation
        Op robust_op;
        double robust_expected_cost;
    };

    Node eval(const WeightVector& lambda) const { return compute(lambda, true); }
    Node robust_only(const WeightVector& lambda) const { return compute(lambda, false); }

private:
    Node compute(const WeightVector& lambda, bool need_eta) const {
        if (lambda.arity() != costs_.arity())
            throw std::invalid_argument("weight vector arity must match cost count");
        if (ops_.kind() == OperatorClass<Model, Op>::Kind::Finite)
            return compute_finite(lambda, need_eta);
        return compute_analytic(lambda, need_eta);
    }

    Node compute_finite(const WeightVector& lambda, bool need_eta) const {
        const std::size_t m = real_.models.size();
        const std::size_t o = ops_.operators().size();
        const std::size_t n = costs_.arity();
        std::vector<double> comb(m * o);
        for (std::size_t im = 0; im < m; ++im)
            for (std::size_t io = 0; io < o; ++io)
                comb[im * o + io] = combined_from_vector(
                    std::span<const double>(&matrix_[(im * o + io) * n], n), lambda);

        std::size_t best = 0;
        double best_cost = std::numeric_limits<double>::infinity();
        for (std::size_t io = 0; io < o; ++io) {
            KahanSum e;
            for (std::size_t im = 0; im < m; ++im)
                e.add(real_.weights[im] * comb[im * o + io]);
            const double c = e.value();
            if (c < best_cost) {
                best_cost = c;
                best = io;
            }
        }

        double raw_eta = 0.0;
        if (need_eta) {
            KahanSum eta;
            for (std::size_t im = 0; im < m; ++im) {
                double opt = comb[im * o];
                for (std::size_t io = 1; io < o; ++io)
                    opt = std::min(opt, comb[im * o + io]);
                eta.add(real_.weights[im] * (comb[im * o + best] - opt));
            }
            raw_eta = eta.value();
        }
        return Node{raw_eta, ops_.operators()[best], best_cost};
    }

    Node compute_analytic(const WeightVector& lambda, bool need_eta) const {
        const std::size_t m = real_.models.size();
        Op robust = ops_.robust_minimizer()(
            std::span<const Model>(real_.models), std::span<const double>(real_.weights),
            lambda);
        std::vector<double> robust_cost(m);
        KahanSum expected;
        for (std::size_t im = 0; im < m; ++im) {
            robust_cost[im] = combined_cost(real_.models[im], robust, lambda, costs_);
            expected.add(real_.weights[im] * robust_cost[im]);
        }

        double raw_eta = 0.0;
        if (need_eta) {
            KahanSum eta;
            for (std::size_t im = 0; im < m; ++im) {
                const Op op = ops_.minimizer()(real_.models[im], lambda);
                const double opt = combined_cost(real_.models[im], op, lambda, costs_);
                eta.add(real_.weights[im] * (robust_cost[im] - opt));
            }
            raw_eta = eta.value();
        }
        return Node{raw_eta, std::move(robust), expected.value()};
    }

    const Realization<Model>& real_;
    const OperatorClass<Model, Op>& ops_;
    const CostFunctionSet<Model, Op>& costs_;
    std::vector<double> matrix_;  // finite ops: (model x op) cost vectors
};

}  // namespace detail

/**
 * Robust operator minimizing the expected combined cost over the class.
 * Sampled classes realize one seeded sample set derived from `rng`'s
 * construction seed; the parent stream is not advanced.
 */
template <typename Model, typename Op>
OperatorChoice<Op> robust_operator(const UncertaintyClass<Model>& theta,
                                   const WeightVector& lambda,
                                   const OperatorClass<Model, Op>& ops,
                                   const CostFunctionSet<Model, Op>& costs, Rng& rng) {
    Rng theta_rng = rng.derive(detail::kThetaStream);
    const auto real = realize(theta, theta_rng);
    detail::RealizedEval<Model, Op> ev(real, ops, costs);
    auto node = ev.robust_only(lambda);
    return {std::move(node.robust_op), node.robust_expected_cost};
}

/**
 * λ-specific MOCU: E_Θ[ξ_θ(ψ*, λ) − ξ_θ(ψ_θ, λ)]. The robust and
 * model-optimal expectations share one realized sample set (common random
 * numbers), so the returned difference is a coupled estimate. The raw value
 * is returned; it is mathematically ≥ 0 and numerically ≥ -1e-12.
 */
template <typename Model, typename Op>
double mocu_at_lambda(const UncertaintyClass<Model>& theta, const WeightVector& lambda,
                      const OperatorClass<Model, Op>& ops,
                      const CostFunctionSet<Model, Op>& costs, Rng& rng) {
    Rng theta_rng = rng.derive(detail::kThetaStream);
    const auto real = realize(theta, theta_rng);
    detail::RealizedEval<Model, Op> ev(real, ops, costs);
    return ev.eval(lambda).raw_eta;
}

/// Single-objective MOCU of objective k (1-based). Shares the code path of
/// mocu_at_lambda with the k-th unit weight vector, so the two agree
/// bit-for-bit.
template <typename Model, typename Op>
double single_objective_mocu(const UncertaintyClass<Model>& theta, std::size_t k,
                             const OperatorClass<Model, Op>& ops,
                             const CostFunctionSet<Model, Op>& costs, Rng& rng) {
    if (k < 1 || k > costs.arity())
        throw std::invalid_argument("objective index out of range");
    return mocu_at_lambda(theta, WeightVector::unit(costs.arity(), k - 1), ops, costs,
                          rng);
}

struct MocuDiagnostics {
    std::string theta_method;        // "finite" | "sampled"
    std::string lambda_method;       // "point-mass" | "trapezoid" | "monte-carlo" | "weighted-grid"
    std::size_t model_count = 0;     // realized models
    std::size_t theta_samples = 0;   // sampler draws; 0 for finite classes
    std::size_t lambda_nodes = 0;
    std::uint64_t seed = 0;
    std::vector<double> raw_eta;      // unclamped η per λ node, node order
    std::vector<double> node_weights; // p(λ) node weights, sum to 1
};

/// Result of a multi-objective MOCU evaluation. η values per node are
/// clamped at 0; raw values live in diagnostics.
template <typename Op>
struct MocuReport {
    double eta_multi = 0.0;
    std::vector<std::pair<WeightVector, double>> eta_at_lambda;
    std::vector<std::pair<WeightVector, Op>> robust_operators;
    MocuDiagnostics diagnostics;
};

/**
 * λ-averaged MOCU over a weight distribution: trapezoid rule for the
 * two-objective uniform grid, Monte Carlo mean for flat Dirichlet,
 * probability-weighted sum for explicit grids. One θ realization and one
 * λ node set are drawn from streams derived from `rng`'s construction seed
 * and reused across all nodes and operators.
 */
template <typename Model, typename Op>
MocuReport<Op> multi_objective_mocu(const UncertaintyClass<Model>& theta,
                                    const WeightDistribution& dist,
                                    const OperatorClass<Model, Op>& ops,
                                    const CostFunctionSet<Model, Op>& costs,
                                    Rng& rng) {
    if (static_cast<std::size_t>(dist.arity()) != costs.arity())
        throw std::invalid_argument("weight distribution arity must match cost count");

    Rng lambda_rng = rng.derive(detail::kLambdaStream);
    Rng theta_rng = rng.derive(detail::kThetaStream);
    const auto nodes = dist.nodes(lambda_rng);
    const auto real = realize(theta, theta_rng);
    detail::RealizedEval<Model, Op> ev(real, ops, costs);

    MocuReport<Op> report;
    report.eta_at_lambda.reserve(nodes.size());
    report.robust_operators.reserve(nodes.size());
    report.diagnostics.raw_eta.reserve(nodes.size());
    report.diagnostics.node_weights.reserve(nodes.size());

    KahanSum total;
    for (const auto& node : nodes) {
        auto r = ev.eval(node.lambda);
        const double clamped = std::max(0.0, r.raw_eta);
        total.add(node.weight * clamped);
        report.eta_at_lambda.emplace_back(node.lambda, clamped);
        report.robust_operators.emplace_back(node.lambda, std::move(r.robust_op));
        report.diagnostics.raw_eta.push_back(r.raw_eta);
        report.diagnostics.node_weights.push_back(node.weight);
    }
    report.eta_multi = std::max(0.0, total.value());

    auto& d = report.diagnostics;
    d.theta_method = theta.kind() == UncertaintyClass<Model>::Kind::Finite
                         ? "finite"
                         : "sampled";
    switch (dist.kind()) {
        case WeightDistribution::Kind::PointMass: d.lambda_method = "point-mass"; break;
        case WeightDistribution::Kind::UniformGrid2: d.lambda_method = "trapezoid"; break;
        case WeightDistribution::Kind::FlatDirichlet: d.lambda_method = "monte-carlo"; break;
        case WeightDistribution::Kind::WeightedGrid: d.lambda_method = "weighted-grid"; break;
    }
    d.model_count = real.models.size();
    d.theta_samples = real.drawn;
    d.lambda_nodes = nodes.size();
    d.seed = rng.seed();
    return report;
}

}  // namespace mocu
