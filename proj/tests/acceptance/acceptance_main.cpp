// Acceptance gate: nine end-to-end criteria covering the scalarized-MOCU
// engine, the quadratic benchmark sweeps, the network solvers, and the
// cell-cycle experiment. Each criterion prints one [PASS]/[FAIL] line; the
// exit code is the number of failures. `--only N` runs a single criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mocu/bnp.hpp"
#include "mocu/cellcycle.hpp"
#include "mocu/engine.hpp"
#include "mocu/io.hpp"
#include "mocu/quad.hpp"
#include "mocu/rng.hpp"
#include "mocu/version.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kNetworkPath =
    std::string(MOCU_DATA_DIR) + "/mammalian_cell_cycle.json";

fs::path out_dir() {
    static const fs::path dir = [] {
        auto d = fs::current_path() / "acceptance_out";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------------------
// Criterion 1: randomized finite classes. Raw eta stays above -1e-12 at
// sampled weight vectors, and the single-objective entry point equals the
// unit-vector evaluation bit for bit.

bool criterion1(std::ostream& log) {
    mocu::Rng rng(mocu::mix_seed(mocu::kDefaultSeed, 101));
    double min_eta = std::numeric_limits<double>::infinity();

    for (int trial = 0; trial < 200; ++trial) {
        const int n_models = 2 + static_cast<int>(rng.bounded(7));  // 2..8
        const int n_ops = 2 + static_cast<int>(rng.bounded(9));     // 2..10
        const int n_obj = 2 + static_cast<int>(rng.bounded(3));     // 2..4

        auto tables = std::make_shared<std::vector<std::vector<double>>>();
        tables->assign(static_cast<std::size_t>(n_obj),
                       std::vector<double>(static_cast<std::size_t>(n_models * n_ops)));
        for (auto& t : *tables)
            for (auto& v : t) v = rng.uniform();

        std::vector<int> models(static_cast<std::size_t>(n_models));
        std::iota(models.begin(), models.end(), 0);
        std::vector<int> op_list(static_cast<std::size_t>(n_ops));
        std::iota(op_list.begin(), op_list.end(), 0);

        std::vector<double> weights(static_cast<std::size_t>(n_models));
        double total = 0.0;
        for (auto& w : weights) {
            w = 0.05 + rng.uniform();
            total += w;
        }
        for (auto& w : weights) w /= total;

        const auto cls = mocu::UncertaintyClass<int>::finite(models, weights);
        const auto ops = mocu::OperatorClass<int, int>::finite(op_list);
        mocu::CostFunctionSet<int, int> costs;
        for (int j = 0; j < n_obj; ++j)
            costs.costs.push_back(
                [tables, j, n_ops](const int& m, const int& o) {
                    return (*tables)[static_cast<std::size_t>(j)]
                                    [static_cast<std::size_t>(m * n_ops + o)];
                });

        for (int s = 0; s < 50; ++s) {
            const auto lambda = mocu::sample_flat_dirichlet(n_obj, rng);
            mocu::Rng eval_rng(rng.next_u64());
            const double eta = mocu::mocu_at_lambda(cls, lambda, ops, costs, eval_rng);
            min_eta = std::min(min_eta, eta);
            if (eta < -1e-12) {
                log << "trial " << trial << ": eta " << eta << " below -1e-12";
                return false;
            }
        }

        for (int k = 1; k <= n_obj; ++k) {
            mocu::Rng r1(7), r2(7);
            const double direct = mocu::single_objective_mocu(
                cls, static_cast<std::size_t>(k), ops, costs, r1);
            const double via_unit = mocu::mocu_at_lambda(
                cls,
                mocu::WeightVector::unit(static_cast<std::size_t>(n_obj),
                                         static_cast<std::size_t>(k - 1)),
                ops, costs, r2);
            if (direct != via_unit) {
                log << "trial " << trial << ": objective " << k
                    << " differs from its unit-vector evaluation";
                return false;
            }
            if (direct < -1e-12) {
                log << "trial " << trial << ": single-objective eta " << direct;
                return false;
            }
        }
    }
    log << "200 classes, min raw eta " << min_eta;
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 2: benchmark case 2 with coincident centers (d = 0) has zero
// multi-objective MOCU for every interval width.

bool criterion2(std::ostream& log) {
    mocu::CaseConfig config;
    config.case_id = 2;
    config.c_grid = {1.0};
    config.d_grid = {0.0};
    config.delta_grid = {1.0, 2.0, 3.0};
    config.theta_samples = 2000;
    config.lambda_grid = 50;
    config.seed = mocu::kDefaultSeed;
    const auto table = mocu::run_case(config);

    double worst = 0.0;
    for (const auto& row : table.rows) worst = std::max(worst, std::abs(row.eta_multi));
    log << "max |eta| over delta {1,2,3}: " << worst;
    return table.rows.size() == 3 && worst <= 1e-10;
}

// ---------------------------------------------------------------------------
// Criterion 3: benchmark case 1 trends. eta_multi is nondecreasing in delta
// for each curvature (2% Monte Carlo slack) and increases with curvature.

mocu::CaseConfig criterion3_config() {
    mocu::CaseConfig config;
    config.case_id = 1;
    config.c_grid = {1.0, 3.0, 5.0};
    config.d_grid = {0.0};
    config.delta_grid = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    config.theta_samples = 10000;
    config.lambda_grid = 100;
    config.seed = mocu::kDefaultSeed;
    return config;
}

std::string criterion3_config_json() {
    return json{{"subcommand", "quad"}, {"case", 1},          {"c", "1,3,5"},
                {"d", "0"},             {"delta", "0:3:0.5"}, {"theta_samples", 10000},
                {"lambda_grid", 100},   {"seed", mocu::kDefaultSeed}}
        .dump();
}

bool check_trend_rows(std::span<const mocu::CaseRow> rows, std::ostream& log,
                      const char* label) {
    double peak = 0.0;
    for (const auto& row : rows) peak = std::max(peak, row.eta_multi);
    const double slack = 0.02 * peak + 1e-12;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (rows[i + 1].eta_multi < rows[i].eta_multi - slack) {
            log << label << ": eta drops from " << rows[i].eta_multi << " to "
                << rows[i + 1].eta_multi << " (slack " << slack << ")";
            return false;
        }
    }
    return true;
}

bool criterion3(std::ostream& log) {
    const auto table = mocu::run_case(criterion3_config());
    const std::size_t n_delta = 7;
    if (table.rows.size() != 3 * n_delta) {
        log << "unexpected row count " << table.rows.size();
        return false;
    }
    for (std::size_t ci = 0; ci < 3; ++ci) {
        const std::span<const mocu::CaseRow> rows(table.rows.data() + ci * n_delta,
                                                  n_delta);
        std::ostringstream label;
        label << "c=" << rows[0].coord1;
        if (!check_trend_rows(rows, log, label.str().c_str())) return false;
    }
    const double low_c = table.rows[0 * n_delta + 4].eta_multi;   // c=1, delta=2
    const double high_c = table.rows[2 * n_delta + 4].eta_multi;  // c=5, delta=2
    if (!(high_c > low_c)) {
        log << "eta(c=5, delta=2) = " << high_c << " not above eta(c=1, delta=2) = "
            << low_c;
        return false;
    }
    mocu::write_case_csv((out_dir() / "case1_sweep.csv").string(), table,
                         criterion3_config_json());
    log << "eta(c=1, delta=2) = " << low_c << ", eta(c=5, delta=2) = " << high_c;
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 4: benchmark case 3. Zero center spread means zero MOCU, and the
// sweep is nondecreasing in the spread at fixed curvature scale.

bool criterion4(std::ostream& log) {
    mocu::CaseConfig config;
    config.case_id = 3;
    config.c_grid = {1.0, 3.0, 5.0};
    config.d_grid = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    config.delta_grid = {0.0};
    config.theta_samples = 10000;
    config.lambda_grid = 100;
    config.seed = mocu::kDefaultSeed;
    const auto table = mocu::run_case(config);

    const std::size_t n_d = 6;
    if (table.rows.size() != 3 * n_d) {
        log << "unexpected row count " << table.rows.size();
        return false;
    }
    for (std::size_t ci = 0; ci < 3; ++ci) {
        const std::span<const mocu::CaseRow> rows(table.rows.data() + ci * n_d, n_d);
        if (std::abs(rows[0].eta_multi) > 1e-3) {
            log << "c=" << rows[0].coord1 << ": eta at d=0 is " << rows[0].eta_multi;
            return false;
        }
        std::ostringstream label;
        label << "c=" << rows[0].coord1;
        if (!check_trend_rows(rows, log, label.str().c_str())) return false;
    }
    log << "eta(c=5, d=5) = " << table.rows[2 * n_d + 5].eta_multi;
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 5: closed-form minimizers against golden-section search, per axis,
// for single models and for weighted model sets.

bool criterion5(std::ostream& log) {
    mocu::Rng rng(mocu::mix_seed(mocu::kDefaultSeed, 105));
    const auto random_objective = [&rng] {
        mocu::QuadraticObjective f;
        f.alpha = rng.uniform(0.1, 5.0);
        f.beta = rng.uniform(0.1, 5.0);
        f.gamma = rng.uniform(-5.0, 5.0);
        f.delta = rng.uniform(-5.0, 5.0);
        return f;
    };
    const auto random_model = [&] {
        return mocu::QuadraticModel{random_objective(), random_objective()};
    };

    double worst_opt = 0.0;
    double worst_robust = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double lambda = rng.uniform();

        const auto model = random_model();
        const auto opt = mocu::closed_form_optimum(model, lambda);
        const double gx = oracle::golden_section(
            [&](double x) {
                return lambda * model.f1.alpha * (x - model.f1.gamma) *
                           (x - model.f1.gamma) +
                       (1.0 - lambda) * model.f2.alpha * (x - model.f2.gamma) *
                           (x - model.f2.gamma);
            },
            -30.0, 30.0);
        const double gy = oracle::golden_section(
            [&](double y) {
                return lambda * model.f1.beta * (y - model.f1.delta) *
                           (y - model.f1.delta) +
                       (1.0 - lambda) * model.f2.beta * (y - model.f2.delta) *
                           (y - model.f2.delta);
            },
            -30.0, 30.0);
        worst_opt = std::max({worst_opt, std::abs(opt.point.x - gx),
                              std::abs(opt.point.y - gy)});

        const std::size_t count = 1 + rng.bounded(8);
        std::vector<mocu::QuadraticModel> set(count);
        std::vector<double> weights(count);
        double total = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            set[i] = random_model();
            weights[i] = 0.05 + rng.uniform();
            total += weights[i];
        }
        for (auto& w : weights) w /= total;

        const auto robust = mocu::closed_form_robust(set, weights, lambda);
        const auto mean_cost_x = [&](double x) {
            double s = 0.0;
            for (std::size_t i = 0; i < count; ++i)
                s += weights[i] * (lambda * set[i].f1.alpha * (x - set[i].f1.gamma) *
                                       (x - set[i].f1.gamma) +
                                   (1.0 - lambda) * set[i].f2.alpha *
                                       (x - set[i].f2.gamma) * (x - set[i].f2.gamma));
            return s;
        };
        const auto mean_cost_y = [&](double y) {
            double s = 0.0;
            for (std::size_t i = 0; i < count; ++i)
                s += weights[i] * (lambda * set[i].f1.beta * (y - set[i].f1.delta) *
                                       (y - set[i].f1.delta) +
                                   (1.0 - lambda) * set[i].f2.beta *
                                       (y - set[i].f2.delta) * (y - set[i].f2.delta));
            return s;
        };
        const double rx = oracle::golden_section(mean_cost_x, -30.0, 30.0);
        const double ry = oracle::golden_section(mean_cost_y, -30.0, 30.0);
        worst_robust = std::max(
            {worst_robust, std::abs(robust.x - rx), std::abs(robust.y - ry)});
    }
    log << "max |optimum - search| " << worst_opt << ", max |robust - search| "
        << worst_robust;
    return worst_opt <= 1e-6 && worst_robust <= 1e-6;
}

// ---------------------------------------------------------------------------
// Criterion 6: random small networks. Dense kernel rows are stochastic, the
// two solvers agree, and the power residual meets its tolerance.

mocu::GeneNetwork random_signed_network(int n, mocu::Rng& rng) {
    mocu::GeneNetwork net;
    for (int g = 0; g < n; ++g) net.genes.push_back("g" + std::to_string(g));
    std::vector<int> sources(static_cast<std::size_t>(n));
    std::iota(sources.begin(), sources.end(), 0);
    for (int target = 0; target < n; ++target) {
        const std::size_t degree = 1 + rng.bounded(3);
        for (std::size_t i = 0; i < degree; ++i) {
            const std::size_t j = i + rng.bounded(sources.size() - i);
            std::swap(sources[i], sources[j]);
            mocu::Edge edge;
            edge.source = sources[i];
            edge.target = target;
            edge.sign = rng.bounded(2) == 0 ? mocu::EdgeSign::Activating
                                            : mocu::EdgeSign::Suppressing;
            net.edges.push_back(edge);
        }
    }
    return net;
}

bool criterion6(std::ostream& log) {
    mocu::Rng rng(mocu::mix_seed(mocu::kDefaultSeed, 106));
    const double ps[] = {0.001, 0.01, 0.1};
    double worst_row = 0.0, worst_l1 = 0.0, worst_residual = 0.0;

    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng.bounded(3));
        const double p = ps[rng.bounded(3)];
        const auto net = random_signed_network(n, rng);
        const auto table = mocu::build_truth_table(net);

        const auto kernel = mocu::dense_transition_matrix(table, p);
        const auto size = std::size_t{1} << n;
        for (std::size_t row = 0; row < size; ++row) {
            double sum = 0.0;
            for (std::size_t col = 0; col < size; ++col) sum += kernel[row * size + col];
            worst_row = std::max(worst_row, std::abs(sum - 1.0));
        }

        mocu::SolverConfig power;
        power.method = mocu::SteadyMethod::StructuredPower;
        const auto ss_power = mocu::steady_state(table, p, power);
        mocu::SolverConfig dense;
        dense.method = mocu::SteadyMethod::DenseSolve;
        const auto ss_dense = mocu::steady_state(table, p, dense);

        double l1 = 0.0;
        for (std::size_t i = 0; i < size; ++i)
            l1 += std::abs(ss_power.pi[i] - ss_dense.pi[i]);
        worst_l1 = std::max(worst_l1, l1);
        worst_residual = std::max(worst_residual, ss_power.residual);
    }
    log << "max |row sum - 1| " << worst_row << ", max L1 gap " << worst_l1
        << ", max power residual " << worst_residual;
    return worst_row <= 1e-12 && worst_l1 <= 1e-9 && worst_residual <= 1e-11;
}

// ---------------------------------------------------------------------------
// Criterion 7: cell-cycle class evaluations against an independent brute-force
// recombination of the same steady-state solves.

bool criterion7(std::ostream& log) {
    const auto file = mocu::load_network({kNetworkPath});
    mocu::Rng rng(mocu::mix_seed(mocu::kDefaultSeed, 107));
    const int intervals = 100;

    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 1 + static_cast<int>(rng.bounded(3));
        std::vector<int> all(file.network.edges.size());
        std::iota(all.begin(), all.end(), 0);
        std::vector<int> unknown;
        for (int i = 0; i < k; ++i) {
            const std::size_t j = static_cast<std::size_t>(i) +
                                  rng.bounded(all.size() - static_cast<std::size_t>(i));
            std::swap(all[static_cast<std::size_t>(i)], all[j]);
            unknown.push_back(all[static_cast<std::size_t>(i)]);
        }
        std::sort(unknown.begin(), unknown.end());
        const bool allow_null = rng.bounded(2) == 1;

        mocu::NetworkUncertaintyClass cls{file.network, unknown};
        mocu::ClassEvalOptions opts;
        opts.perturbation = file.perturbation;
        opts.allow_null_intervention = allow_null;
        mocu::SteadyStateCache cache;
        const auto report = mocu::mocu_for_class(
            cls, mocu::WeightDistribution::uniform_grid2(intervals + 1), opts, &cache);

        const double reference = oracle::brute_force_eta_multi(
            file.network, unknown, file.perturbation, intervals, allow_null,
            opts.solver);
        const double gap = std::abs(report.eta_multi - reference);
        worst = std::max(worst, gap);
        if (gap > 1e-10) {
            log << "trial " << trial << " (k=" << k << ", null=" << allow_null
                << "): |" << report.eta_multi << " - " << reference << "| = " << gap;
            return false;
        }
    }
    log << "20 classes, max |engine - brute force| " << worst;
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 8: the experiment's mean MOCU is nondecreasing in the number of
// unknown edges. A one-sided bootstrap over run resamples flags only
// statistically significant decreases; medians stay at or below means.

mocu::ExperimentConfig criterion8_config() {
    mocu::ExperimentConfig config;
    config.ks = {1, 2, 3, 4};
    config.runs = 50;
    config.lambda_intervals = 100;
    config.seed = mocu::kDefaultSeed;
    config.workers = 1;
    config.eval.perturbation = 0.01;
    return config;
}

std::string criterion8_config_json() {
    return json{{"subcommand", "grn"},   {"network", "mammalian_cell_cycle.json"},
                {"k", "1-4"},            {"runs", 50},
                {"lambda_grid", 100},    {"seed", mocu::kDefaultSeed},
                {"perturbation", 0.01},  {"method", "power"},
                {"tol", 1e-12},          {"max_iter", 1000000},
                {"allow_null_intervention", false},
                {"k_cap", 12}}
        .dump();
}

mocu::RunStats run_criterion8_experiment() {
    const auto file = mocu::load_network({kNetworkPath});
    mocu::SteadyStateCache cache;
    return mocu::run_experiment(file.network, criterion8_config(), &cache);
}

void write_criterion8_csvs(const mocu::RunStats& stats, const std::string& suffix) {
    const auto config = criterion8_config_json();
    mocu::write_runs_csv((out_dir() / ("grn_runs" + suffix + ".csv")).string(),
                         stats.records, config);
    mocu::write_summary_csv((out_dir() / ("grn_summary" + suffix + ".csv")).string(),
                            stats.summaries, config);
}

bool criterion8(std::ostream& log) {
    const auto stats = run_criterion8_experiment();
    const auto config = criterion8_config();
    const std::size_t runs = static_cast<std::size_t>(config.runs);

    std::vector<std::vector<double>> eta_by_k;
    for (std::size_t ki = 0; ki < config.ks.size(); ++ki) {
        std::vector<double> etas(runs);
        for (std::size_t r = 0; r < runs; ++r)
            etas[r] = stats.records[ki * runs + r].eta_multi;
        eta_by_k.push_back(std::move(etas));
    }

    for (const auto& summary : stats.summaries) {
        if (summary.median > summary.mean + 1e-12) {
            log << "k=" << summary.k << ": median " << summary.median
                << " above mean " << summary.mean;
            return false;
        }
    }

    // Bootstrap the adjacent mean differences; fail only when the 95th
    // percentile of mean(k+1) - mean(k) is still negative.
    mocu::Rng boot(mocu::mix_seed(mocu::kDefaultSeed, 108));
    const int B = 2000;
    std::ostringstream means;
    for (std::size_t ki = 0; ki + 1 < eta_by_k.size(); ++ki) {
        std::vector<double> diffs(B);
        for (int b = 0; b < B; ++b) {
            double lo = 0.0, hi = 0.0;
            for (std::size_t r = 0; r < runs; ++r) {
                lo += eta_by_k[ki][boot.bounded(runs)];
                hi += eta_by_k[ki + 1][boot.bounded(runs)];
            }
            diffs[static_cast<std::size_t>(b)] =
                (hi - lo) / static_cast<double>(runs);
        }
        std::sort(diffs.begin(), diffs.end());
        const double q95 = diffs[static_cast<std::size_t>(0.95 * B)];
        if (q95 < 0.0) {
            log << "k=" << config.ks[ki] << " -> " << config.ks[ki + 1]
                << ": significant decrease, bootstrap q95 " << q95;
            return false;
        }
    }
    for (const auto& summary : stats.summaries)
        means << " mean(k=" << summary.k << ")=" << summary.mean;

    write_criterion8_csvs(stats, "");
    log << "runs=50, ks 1-4:" << means.str();
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 9: identical seeds reproduce the criterion 3 and criterion 8 CSVs
// byte for byte, recomputed from scratch with fresh caches.

bool criterion9(std::ostream& log) {
    const auto case_path = out_dir() / "case1_sweep.csv";
    if (!fs::exists(case_path))
        mocu::write_case_csv(case_path.string(), mocu::run_case(criterion3_config()),
                             criterion3_config_json());
    const auto case_rerun = out_dir() / "case1_sweep_rerun.csv";
    mocu::write_case_csv(case_rerun.string(), mocu::run_case(criterion3_config()),
                         criterion3_config_json());
    if (slurp(case_path) != slurp(case_rerun)) {
        log << "case 1 sweep CSVs differ";
        return false;
    }

    const auto runs_path = out_dir() / "grn_runs.csv";
    if (!fs::exists(runs_path)) write_criterion8_csvs(run_criterion8_experiment(), "");
    write_criterion8_csvs(run_criterion8_experiment(), "_rerun");
    if (slurp(runs_path) != slurp(out_dir() / "grn_runs_rerun.csv")) {
        log << "experiment run CSVs differ";
        return false;
    }
    if (slurp(out_dir() / "grn_summary.csv") !=
        slurp(out_dir() / "grn_summary_rerun.csv")) {
        log << "experiment summary CSVs differ";
        return false;
    }
    log << "sweep and experiment CSVs reproduced byte for byte";
    return true;
}

struct Criterion {
    int id;
    const char* title;
    double time_limit;  // seconds; 0 = no explicit bound
    std::function<bool(std::ostream&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--only N]\n";
            return 64;
        }
    }

    const std::vector<Criterion> criteria = {
        {1, "randomized finite classes: nonnegative eta, exact unit-vector match",
         10.0, criterion1},
        {2, "case 2 with coincident centers has zero MOCU", 5.0, criterion2},
        {3, "case 1 sweep: nondecreasing in delta, increasing in curvature", 60.0,
         criterion3},
        {4, "case 3 sweep: zero at d=0, nondecreasing in d", 120.0, criterion4},
        {5, "closed-form minimizers match golden-section search", 30.0, criterion5},
        {6, "network solvers: stochastic rows, power/dense agreement", 60.0,
         criterion6},
        {7, "cell-cycle classes match brute-force recombination", 600.0, criterion7},
        {8, "experiment means nondecreasing in k (bootstrap)", 0.0, criterion8},
        {9, "identical seeds reproduce CSVs byte for byte", 0.0, criterion9},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (only != 0 && criterion.id != only) continue;
        std::ostringstream detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail << "exception: " << e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (ok && criterion.time_limit > 0.0 && seconds > criterion.time_limit) {
            detail << (detail.str().empty() ? "" : "; ") << "exceeded "
                   << criterion.time_limit << "s budget";
            ok = false;
        }
        if (!ok) ++failures;
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id
                  << ": " << criterion.title << " (" << std::fixed
                  << std::setprecision(1) << seconds << "s)" << std::defaultfloat
                  << "\n";
        if (!detail.str().empty()) std::cout << "       " << detail.str() << "\n";
        std::cout.flush();
    }
    return failures;
}
