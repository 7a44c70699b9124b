#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mocu/rng.hpp"

namespace mocu {

/**
 * Scalarization weight vector on the probability simplex: every entry is
 * nonnegative and the entries sum to 1 within 1e-12. Construction validates.
 */
class WeightVector {
public:
    explicit WeightVector(std::vector<double> weights);

    /// Two-objective vector (lambda, 1 - lambda), lambda in [0, 1].
    static WeightVector pair(double lambda);
    /// k-th unit vector of arity n (exact single-objective weights).
    static WeightVector unit(std::size_t n, std::size_t k);

    std::size_t arity() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    std::span<const double> values() const { return w_; }

    bool operator==(const WeightVector& o) const { return w_ == o.w_; }

private:
    std::vector<double> w_;
};

/// One quadrature/sampling node of a weight distribution; node weights over a
/// full expansion sum to 1.
struct WeightNode {
    WeightVector lambda;
    double weight;
};

/**
 * Distribution p(lambda) over the weight simplex.
 *
 * Kinds:
 *  - PointMass: all mass on one vector.
 *  - UniformGrid2: uniform density on [0,1] for two objectives, integrated by
 *    the composite trapezoid rule on `grid_points` equispaced nodes
 *    (endpoints carry half weight).
 *  - FlatDirichlet: uniform density on the (n-1)-simplex, integrated by Monte
 *    Carlo over `sample_count` draws.
 *  - WeightedGrid: explicit nodes with probabilities summing to 1.
 */
class WeightDistribution {
public:
    enum class Kind { PointMass, UniformGrid2, FlatDirichlet, WeightedGrid };

    static WeightDistribution point_mass(WeightVector lambda);
    static WeightDistribution uniform_grid2(int grid_points);
    static WeightDistribution flat_dirichlet(int n, int sample_count);
    static WeightDistribution weighted_grid(std::vector<WeightVector> lambdas,
                                            std::vector<double> probabilities);

    Kind kind() const { return kind_; }
    int arity() const { return arity_; }

    /// Number of nodes an expansion yields (grid size or sample count).
    std::size_t node_count() const;

    /// Expand into integration nodes. Grids enumerate members in order; the
    /// flat Dirichlet kind draws `sample_count` vectors from `rng`.
    std::vector<WeightNode> nodes(Rng& rng) const;

private:
    WeightDistribution(Kind kind, int arity) : kind_(kind), arity_(arity) {}

    Kind kind_;
    int arity_;
    std::vector<WeightVector> members_;   // PointMass / WeightedGrid
    std::vector<double> probabilities_;   // WeightedGrid
    int grid_points_ = 0;                 // UniformGrid2
    int sample_count_ = 0;                // FlatDirichlet
};

/// One flat-Dirichlet draw: n unit-rate exponentials normalized by their sum.
WeightVector sample_flat_dirichlet(int n, Rng& rng);

/**
 * Draw one weight vector from a distribution. PointMass returns its vector
 * and FlatDirichlet draws from `rng`; for the grid kinds `draw_index` selects
 * members in order (modulo the grid size), so successive indices enumerate
 * the grid.
 */
WeightVector sample_weight(const WeightDistribution& dist, Rng& rng,
                           std::size_t draw_index = 0);

}  // namespace mocu
