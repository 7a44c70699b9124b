#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mocu/numeric.hpp"
#include "mocu/rng.hpp"
#include "mocu/weights.hpp"

namespace mocu {

/// Index of a model within a finite uncertainty class; valid range [0, size).
struct ModelId {
    std::size_t index = 0;
};

/**
 * Uncertainty class over opaque model payloads: either a finite weighted set
 * (prior weights on the simplex) or a sampler that draws models from a
 * continuous prior. All expectations over models run through realize(), which
 * turns either kind into an explicit weighted sample set.
 */
template <typename Model>
class UncertaintyClass {
public:
    enum class Kind { Finite, Sampled };

    using Sampler = std::function<Model(Rng&)>;

    static UncertaintyClass finite(std::vector<Model> models,
                                   std::vector<double> weights) {
        if (models.empty())
            throw std::invalid_argument("finite uncertainty class must be nonempty");
        if (models.size() != weights.size())
            throw std::invalid_argument("model and weight counts must match");
        KahanSum sum;
        for (double w : weights) {
            if (!(w >= 0.0))
                throw std::invalid_argument("model weights must be >= 0");
            sum.add(w);
        }
        if (std::abs(sum.value() - 1.0) > 1e-12)
            throw std::invalid_argument("model weights must sum to 1");
        UncertaintyClass c(Kind::Finite);
        c.models_ = std::move(models);
        c.weights_ = std::move(weights);
        return c;
    }

    static UncertaintyClass finite_uniform(std::vector<Model> models) {
        if (models.empty())
            throw std::invalid_argument("finite uncertainty class must be nonempty");
        std::vector<double> w(models.size(), 1.0 / models.size());
        // Equal weights of size 2^m are exact; other sizes round within 1e-12.
        return finite(std::move(models), std::move(w));
    }

    static UncertaintyClass sampled(Sampler sampler, int sample_count) {
        if (!sampler)
            throw std::invalid_argument("sampled uncertainty class needs a sampler");
        if (sample_count < 1)
            throw std::invalid_argument("sample_count must be >= 1");
        UncertaintyClass c(Kind::Sampled);
        c.sampler_ = std::move(sampler);
        c.sample_count_ = sample_count;
        return c;
    }

    Kind kind() const { return kind_; }

    /// Finite kind only.
    const std::vector<Model>& models() const { return models_; }
    std::span<const double> weights() const { return weights_; }

    /// Sampled kind only.
    const Sampler& sampler() const { return sampler_; }
    int sample_count() const { return sample_count_; }

    /// Models a realization will contain.
    std::size_t model_count() const {
        return kind_ == Kind::Finite ? models_.size()
                                     : static_cast<std::size_t>(sample_count_);
    }

private:
    explicit UncertaintyClass(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::vector<Model> models_;
    std::vector<double> weights_;
    Sampler sampler_;
    int sample_count_ = 0;
};

/// Explicit weighted model set that expectations run over. `drawn` counts
/// sampler draws (0 when the class was already finite).
template <typename Model>
struct Realization {
    std::vector<Model> models;
    std::vector<double> weights;
    std::size_t drawn = 0;
};

/// Materialize an uncertainty class. Finite classes copy; sampled classes
/// draw `sample_count` models from `rng` with equal weights. Callers that
/// need common random numbers realize once and reuse the result.
template <typename Model>
Realization<Model> realize(const UncertaintyClass<Model>& cls, Rng& rng) {
    Realization<Model> r;
    if (cls.kind() == UncertaintyClass<Model>::Kind::Finite) {
        r.models = cls.models();
        r.weights.assign(cls.weights().begin(), cls.weights().end());
        return r;
    }
    const auto n = static_cast<std::size_t>(cls.sample_count());
    r.models.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.models.push_back(cls.sampler()(rng));
    r.weights.assign(n, 1.0 / static_cast<double>(n));
    r.drawn = n;
    return r;
}

/**
 * Operator class: either an explicit finite set searched by enumeration, or
 * an analytic pair of hooks. The minimizer returns the operator minimizing
 * the combined cost for one model; the robust minimizer returns the operator
 * minimizing the weighted-average combined cost over a realized model set
 * (the same sample set the surrounding MOCU evaluation uses).
 */
template <typename Model, typename Op>
class OperatorClass {
public:
    enum class Kind { Finite, Analytic };

    using Minimizer = std::function<Op(const Model&, const WeightVector&)>;
    using RobustMinimizer = std::function<Op(
        std::span<const Model>, std::span<const double>, const WeightVector&)>;

    static OperatorClass finite(std::vector<Op> operators) {
        if (operators.empty())
            throw std::invalid_argument("finite operator class must be nonempty");
        OperatorClass c(Kind::Finite);
        c.operators_ = std::move(operators);
        return c;
    }

    static OperatorClass analytic(Minimizer minimizer,
                                  RobustMinimizer robust_minimizer) {
        if (!minimizer || !robust_minimizer)
            throw std::invalid_argument("analytic operator class needs both hooks");
        OperatorClass c(Kind::Analytic);
        c.minimizer_ = std::move(minimizer);
        c.robust_minimizer_ = std::move(robust_minimizer);
        return c;
    }

    Kind kind() const { return kind_; }

    const std::vector<Op>& operators() const { return operators_; }
    const Minimizer& minimizer() const { return minimizer_; }
    const RobustMinimizer& robust_minimizer() const { return robust_minimizer_; }

private:
    explicit OperatorClass(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::vector<Op> operators_;
    Minimizer minimizer_;
    RobustMinimizer robust_minimizer_;
};

/// One procedure per objective, each mapping (model, operator) to a finite
/// nonnegative cost. Procedures must be pure; the engine may cache results.
template <typename Model, typename Op>
struct CostFunctionSet {
    using Cost = std::function<double(const Model&, const Op&)>;

    std::vector<Cost> costs;

    std::size_t arity() const { return costs.size(); }
};

}  // namespace mocu
