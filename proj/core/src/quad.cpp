#include "mocu/quad.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "mocu/engine.hpp"
#include "mocu/numeric.hpp"
#include "mocu/rng.hpp"
#include "mocu/uncertainty.hpp"

namespace mocu {

namespace {

void check_objective(const QuadraticObjective& o) {
    if (!(o.alpha >= 0.0) || !(o.beta >= 0.0))
        throw std::invalid_argument("quadratic curvatures must be >= 0");
    if (!std::isfinite(o.alpha) || !std::isfinite(o.beta) || !std::isfinite(o.gamma) ||
        !std::isfinite(o.delta))
        throw std::invalid_argument("quadratic parameters must be finite");
}

void check_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("lambda must lie in [0, 1]");
}

double axis_minimizer(double num, double den) { return den > 0.0 ? num / den : 0.0; }

/// Model sampler for one grid point; uncertain fields are drawn in a fixed
/// order (a1, b1, a2, b2, then g2, d2) so streams are reproducible.
std::function<QuadraticModel(Rng&)> case_sampler(int case_id, double c, double d,
                                                 double delta) {
    switch (case_id) {
        case 1:
            return [c, delta](Rng& rng) {
                QuadraticModel m;
                m.f1 = {c, c, 0.0, 0.0};
                m.f2 = {c, c, rng.uniform(0.0, delta), rng.uniform(0.0, delta)};
                return m;
            };
        case 2:
            return [d, delta](Rng& rng) {
                QuadraticModel m;
                m.f1.alpha = rng.uniform(0.0, delta);
                m.f1.beta = rng.uniform(0.0, delta);
                m.f2.alpha = rng.uniform(0.0, delta);
                m.f2.beta = rng.uniform(0.0, delta);
                m.f2.gamma = d;
                m.f2.delta = d;
                return m;
            };
        case 3:
            return [c, d](Rng& rng) {
                QuadraticModel m;
                m.f1.alpha = rng.uniform(0.0, c);
                m.f1.beta = rng.uniform(0.0, c);
                m.f2.alpha = rng.uniform(0.0, c);
                m.f2.beta = rng.uniform(0.0, c);
                m.f2.gamma = rng.uniform(0.0, d);
                m.f2.delta = rng.uniform(0.0, d);
                return m;
            };
        default:
            throw std::invalid_argument("case_id must be 1, 2, or 3");
    }
}

void check_grid(const std::vector<double>& grid, const char* name) {
    if (grid.empty())
        throw std::invalid_argument(std::string(name) + " grid must be nonempty");
    for (double v : grid)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(name) +
                                        " grid values must be finite and >= 0");
}

}  // namespace

double eval_objective(const QuadraticObjective& obj, double x, double y) {
    const double dx = x - obj.gamma;
    const double dy = y - obj.delta;
    return obj.alpha * dx * dx + obj.beta * dy * dy;
}

Optimum closed_form_optimum(const QuadraticModel& model, double lambda) {
    check_objective(model.f1);
    check_objective(model.f2);
    check_lambda(lambda);
    const double mu = 1.0 - lambda;
    const Point2 p{
        axis_minimizer(lambda * model.f1.alpha * model.f1.gamma +
                           mu * model.f2.alpha * model.f2.gamma,
                       lambda * model.f1.alpha + mu * model.f2.alpha),
        axis_minimizer(lambda * model.f1.beta * model.f1.delta +
                           mu * model.f2.beta * model.f2.delta,
                       lambda * model.f1.beta + mu * model.f2.beta)};
    const double cost = lambda * eval_objective(model.f1, p.x, p.y) +
                        mu * eval_objective(model.f2, p.x, p.y);
    return {p, cost};
}

Point2 closed_form_robust(std::span<const QuadraticModel> models,
                          std::span<const double> weights, double lambda) {
    if (models.empty() || models.size() != weights.size())
        throw std::invalid_argument("robust minimizer needs matching nonempty spans");
    check_lambda(lambda);
    KahanSum a1g1, a1, a2g2, a2, b1d1, b1, b2d2, b2;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const double w = weights[i];
        const auto& m = models[i];
        a1g1.add(w * m.f1.alpha * m.f1.gamma);
        a1.add(w * m.f1.alpha);
        a2g2.add(w * m.f2.alpha * m.f2.gamma);
        a2.add(w * m.f2.alpha);
        b1d1.add(w * m.f1.beta * m.f1.delta);
        b1.add(w * m.f1.beta);
        b2d2.add(w * m.f2.beta * m.f2.delta);
        b2.add(w * m.f2.beta);
    }
    const double mu = 1.0 - lambda;
    return {axis_minimizer(lambda * a1g1.value() + mu * a2g2.value(),
                           lambda * a1.value() + mu * a2.value()),
            axis_minimizer(lambda * b1d1.value() + mu * b2d2.value(),
                           lambda * b1.value() + mu * b2.value())};
}

CaseTable run_case(const CaseConfig& config) {
    if (config.theta_samples < 1)
        throw std::invalid_argument("theta_samples must be >= 1");
    if (config.lambda_grid < 1)
        throw std::invalid_argument("lambda_grid must be >= 1");

    CaseTable table;
    table.case_id = config.case_id;
    const std::vector<double>* grid1 = nullptr;
    const std::vector<double>* grid2 = nullptr;
    switch (config.case_id) {
        case 1:
            check_grid(config.c_grid, "c");
            check_grid(config.delta_grid, "delta");
            grid1 = &config.c_grid;
            grid2 = &config.delta_grid;
            table.coord1_name = "c";
            table.coord2_name = "delta";
            break;
        case 2:
            check_grid(config.d_grid, "d");
            check_grid(config.delta_grid, "delta");
            grid1 = &config.d_grid;
            grid2 = &config.delta_grid;
            table.coord1_name = "d";
            table.coord2_name = "delta";
            break;
        case 3:
            check_grid(config.c_grid, "c");
            check_grid(config.d_grid, "d");
            grid1 = &config.c_grid;
            grid2 = &config.d_grid;
            table.coord1_name = "c";
            table.coord2_name = "d";
            break;
        default:
            throw std::invalid_argument("case_id must be 1, 2, or 3");
    }

    using Ops = OperatorClass<QuadraticModel, Point2>;
    const Ops ops = Ops::analytic(
        [](const QuadraticModel& m, const WeightVector& lambda) {
            return closed_form_optimum(m, lambda[0]).point;
        },
        [](std::span<const QuadraticModel> models, std::span<const double> weights,
           const WeightVector& lambda) {
            return closed_form_robust(models, weights, lambda[0]);
        });
    const CostFunctionSet<QuadraticModel, Point2> costs{
        {[](const QuadraticModel& m, const Point2& p) {
             return eval_objective(m.f1, p.x, p.y);
         },
         [](const QuadraticModel& m, const Point2& p) {
             return eval_objective(m.f2, p.x, p.y);
         }}};
    const auto dist = WeightDistribution::uniform_grid2(config.lambda_grid + 1);

    table.rows.reserve(grid1->size() * grid2->size());
    for (std::size_t i1 = 0; i1 < grid1->size(); ++i1) {
        for (std::size_t i2 = 0; i2 < grid2->size(); ++i2) {
            const double v1 = (*grid1)[i1];
            const double v2 = (*grid2)[i2];
            const double c = config.case_id == 2 ? 0.0 : v1;
            const double d = config.case_id == 1 ? 0.0
                             : config.case_id == 2 ? v1
                                                   : v2;
            const double delta = config.case_id == 3 ? 0.0 : v2;
            const std::uint64_t grid_index = i1 * grid2->size() + i2;
            const std::uint64_t point_seed = mix_seed(config.seed, grid_index);

            const auto cls = UncertaintyClass<QuadraticModel>::sampled(
                case_sampler(config.case_id, c, d, delta), config.theta_samples);
            Rng rng(point_seed);
            const auto report = multi_objective_mocu(cls, dist, ops, costs, rng);
            table.rows.push_back({v1, v2, report.eta_multi, config.theta_samples,
                                  config.lambda_grid, point_seed});
        }
    }
    return table;
}

std::vector<GCurveSample> emit_g_curve(double gamma1, double gamma2, double alpha1,
                                       double alpha2, std::span<const double> lambdas,
                                       std::span<const double> x_grid) {
    if (!std::isfinite(gamma1) || !std::isfinite(gamma2) || !std::isfinite(alpha1) ||
        !std::isfinite(alpha2))
        throw std::invalid_argument("g-curve parameters must be finite");
    std::vector<GCurveSample> out;
    out.reserve(lambdas.size() * x_grid.size());
    for (double lambda : lambdas) {
        check_lambda(lambda);
        for (double x : x_grid) {
            const double d1 = x - gamma1;
            const double d2 = x - gamma2;
            const double g =
                lambda * alpha1 * d1 * d1 + (1.0 - lambda) * alpha2 * d2 * d2;
            out.push_back({lambda, x, g});
        }
    }
    return out;
}

}  // namespace mocu
