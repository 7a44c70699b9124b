#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mocu {

/// One quadratic bowl alpha*(x-gamma)^2 + beta*(y-delta)^2 with nonnegative
/// curvatures.
struct QuadraticObjective {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

/// Two-objective quadratic model.
struct QuadraticModel {
    QuadraticObjective f1;
    QuadraticObjective f2;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

double eval_objective(const QuadraticObjective& obj, double x, double y);

struct Optimum {
    Point2 point;
    double cost = 0.0;
};

/**
 * Minimizer of the combined cost lambda*f1 + (1-lambda)*f2 for one model:
 * x* = (lambda a1 g1 + (1-lambda) a2 g2) / (lambda a1 + (1-lambda) a2), and
 * the beta/delta analogue for y*. A zero effective curvature along an axis
 * makes the combined cost flat there; coordinate 0 is the canonical choice
 * and contributes no cost.
 */
Optimum closed_form_optimum(const QuadraticModel& model, double lambda);

/**
 * Minimizer of the weighted sample-average combined cost over a realized
 * model set, from empirical weighted moments:
 * x* = (lambda mean[a1 g1] + (1-lambda) mean[a2 g2])
 *      / (lambda mean[a1] + (1-lambda) mean[a2]), analogously for y*.
 * Degenerate denominators fall back to coordinate 0 as above.
 */
Point2 closed_form_robust(std::span<const QuadraticModel> models,
                          std::span<const double> weights, double lambda);

/**
 * Benchmark sweep configuration. Grids used per case:
 *  - case 1: c_grid x delta_grid; gamma2, delta2 ~ U[0, delta], all
 *    curvatures fixed at c, first objective centered at the origin.
 *  - case 2: d_grid x delta_grid; all four curvatures ~ U[0, delta],
 *    second objective centered at (d, d).
 *  - case 3: c_grid x d_grid; curvatures ~ U[0, c], second objective's
 *    center coordinates ~ U[0, d].
 */
struct CaseConfig {
    int case_id = 1;
    std::vector<double> c_grid;
    std::vector<double> d_grid;
    std::vector<double> delta_grid;
    int theta_samples = 10000;
    int lambda_grid = 100;  // trapezoid intervals M; M+1 nodes
    std::uint64_t seed = 0;
};

struct CaseRow {
    double coord1 = 0.0;
    double coord2 = 0.0;
    double eta_multi = 0.0;
    int theta_samples = 0;
    int lambda_grid = 0;
    std::uint64_t seed = 0;  // per-grid-point derived seed
};

struct CaseTable {
    int case_id = 0;
    std::string coord1_name;  // "c" (cases 1, 3) or "d" (case 2)
    std::string coord2_name;  // "delta" (cases 1, 2) or "d" (case 3)
    std::vector<CaseRow> rows;
};

/**
 * Sweep a case's parameter grid; each grid point evaluates the two-objective
 * MOCU by trapezoid quadrature over lambda with `theta_samples` models drawn
 * from a stream seeded by (master seed, grid index). Row order follows the
 * grid, coord1-major.
 */
CaseTable run_case(const CaseConfig& config);

struct GCurveSample {
    double lambda = 0.0;
    double x = 0.0;
    double g = 0.0;
};

/// Samples of the combined one-dimensional cost
/// g(x, lambda) = lambda a1 (x-g1)^2 + (1-lambda) a2 (x-g2)^2, lambda-major.
std::vector<GCurveSample> emit_g_curve(double gamma1, double gamma2, double alpha1,
                                       double alpha2, std::span<const double> lambdas,
                                       std::span<const double> x_grid);

}  // namespace mocu
