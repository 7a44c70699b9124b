#include "mocu/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mocu/numeric.hpp"

namespace mocu {

namespace {

constexpr double kSimplexTol = 1e-12;

void check_simplex(std::span<const double> w) {
    if (w.empty()) throw std::invalid_argument("weight vector must be nonempty");
    KahanSum sum;
    for (double x : w) {
        if (!(x >= 0.0)) throw std::invalid_argument("weight vector entries must be >= 0");
        sum.add(x);
    }
    if (std::abs(sum.value() - 1.0) > kSimplexTol)
        throw std::invalid_argument("weight vector entries must sum to 1");
}

}  // namespace

WeightVector::WeightVector(std::vector<double> weights) : w_(std::move(weights)) {
    check_simplex(w_);
}

WeightVector WeightVector::pair(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("lambda must lie in [0, 1]");
    return WeightVector({lambda, 1.0 - lambda});
}

WeightVector WeightVector::unit(std::size_t n, std::size_t k) {
    if (k >= n) throw std::invalid_argument("unit weight index out of range");
    std::vector<double> w(n, 0.0);
    w[k] = 1.0;
    return WeightVector(std::move(w));
}

WeightDistribution WeightDistribution::point_mass(WeightVector lambda) {
    WeightDistribution d(Kind::PointMass, static_cast<int>(lambda.arity()));
    d.members_.push_back(std::move(lambda));
    return d;
}

WeightDistribution WeightDistribution::uniform_grid2(int grid_points) {
    if (grid_points < 2)
        throw std::invalid_argument("uniform_grid2 needs at least 2 grid points");
    WeightDistribution d(Kind::UniformGrid2, 2);
    d.grid_points_ = grid_points;
    return d;
}

WeightDistribution WeightDistribution::flat_dirichlet(int n, int sample_count) {
    if (n < 1) throw std::invalid_argument("flat_dirichlet needs arity >= 1");
    if (sample_count < 1)
        throw std::invalid_argument("flat_dirichlet needs sample_count >= 1");
    WeightDistribution d(Kind::FlatDirichlet, n);
    d.sample_count_ = sample_count;
    return d;
}

WeightDistribution WeightDistribution::weighted_grid(
    std::vector<WeightVector> lambdas, std::vector<double> probabilities) {
    if (lambdas.empty() || lambdas.size() != probabilities.size())
        throw std::invalid_argument("weighted_grid needs matching nonempty lists");
    const std::size_t n = lambdas.front().arity();
    for (const auto& l : lambdas)
        if (l.arity() != n)
            throw std::invalid_argument("weighted_grid members must share arity");
    check_simplex(probabilities);
    WeightDistribution d(Kind::WeightedGrid, static_cast<int>(n));
    d.members_ = std::move(lambdas);
    d.probabilities_ = std::move(probabilities);
    return d;
}

std::size_t WeightDistribution::node_count() const {
    switch (kind_) {
        case Kind::PointMass: return 1;
        case Kind::UniformGrid2: return static_cast<std::size_t>(grid_points_);
        case Kind::FlatDirichlet: return static_cast<std::size_t>(sample_count_);
        case Kind::WeightedGrid: return members_.size();
    }
    return 0;
}

std::vector<WeightNode> WeightDistribution::nodes(Rng& rng) const {
    std::vector<WeightNode> out;
    out.reserve(node_count());
    switch (kind_) {
        case Kind::PointMass:
            out.push_back({members_.front(), 1.0});
            break;
        case Kind::UniformGrid2: {
            const int m = grid_points_ - 1;  // number of trapezoid intervals
            for (int j = 0; j <= m; ++j) {
                const double lambda = static_cast<double>(j) / m;
                const double w = (j == 0 || j == m) ? 0.5 / m : 1.0 / m;
                out.push_back({WeightVector::pair(lambda), w});
            }
            break;
        }
        case Kind::FlatDirichlet: {
            const double w = 1.0 / sample_count_;
            for (int j = 0; j < sample_count_; ++j)
                out.push_back({sample_flat_dirichlet(arity_, rng), w});
            break;
        }
        case Kind::WeightedGrid:
            for (std::size_t j = 0; j < members_.size(); ++j)
                out.push_back({members_[j], probabilities_[j]});
            break;
    }
    return out;
}

WeightVector sample_flat_dirichlet(int n, Rng& rng) {
    std::vector<double> e(static_cast<std::size_t>(n));
    for (;;) {
        double sum = 0.0;
        for (auto& x : e) {
            x = rng.exponential();
            sum += x;
        }
        if (sum > 0.0) {
            for (auto& x : e) x /= sum;
            return WeightVector(std::move(e));
        }
    }
}

WeightVector sample_weight(const WeightDistribution& dist, Rng& rng,
                           std::size_t draw_index) {
    switch (dist.kind()) {
        case WeightDistribution::Kind::PointMass:
        case WeightDistribution::Kind::WeightedGrid:
        case WeightDistribution::Kind::UniformGrid2: {
            // Grid kinds consume no randomness; cycle through members.
            Rng scratch(0);
            auto all = dist.nodes(scratch);
            return all[draw_index % all.size()].lambda;
        }
        case WeightDistribution::Kind::FlatDirichlet:
            return sample_flat_dirichlet(dist.arity(), rng);
    }
    throw std::logic_error("unreachable weight distribution kind");
}

}  // namespace mocu
