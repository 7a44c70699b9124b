#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mocu/bnp.hpp"
#include "mocu/cellcycle.hpp"
#include "mocu/io.hpp"
#include "mocu/quad.hpp"
#include "mocu/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitCompute = 3;

struct QuadArgs {
    int case_id = 1;
    std::string c = "1";
    std::string d = "0";
    std::string delta = "1";
    int theta_samples = 10000;
    int lambda_grid = 100;
    std::uint64_t seed = mocu::kDefaultSeed;
    std::string out;
    std::string out_dir = ".";
    bool g_curve = false;
    double gamma1 = 2.0, gamma2 = 7.0, alpha1 = 1.0, alpha2 = 3.0;
    std::string lambdas = "0:1:0.25";
    std::string x_grid = "0:10:0.1";
};

struct GrnArgs {
    std::string network;
    std::string k = "1-8";
    int runs = 500;
    int lambda_grid = 100;
    std::uint64_t seed = mocu::kDefaultSeed;
    int workers = 0;
    int k_cap = 12;
    std::string method = "power";
    double tol = 1e-12;
    std::int64_t max_iter = 1'000'000;
    bool allow_null = false;
    bool no_cache = false;
    bool fresh = false;
    std::string out;  // path prefix
    std::string out_dir = ".";
};

struct SteadyArgs {
    std::string network;
    std::string block_edge;  // empty -> the unintervened network
    std::string method = "power";
    double tol = 1e-12;
    std::int64_t max_iter = 1'000'000;
    double p = -1.0;  // < 0 -> use the file's perturbation
    std::string out;
    std::string out_dir = ".";
};

std::string resolve_out(const std::string& out, const std::string& out_dir,
                        const std::string& fallback) {
    if (!out.empty()) return out;
    return (std::filesystem::path(out_dir) / fallback).string();
}

mocu::SolverConfig make_solver(const std::string& method, double tol,
                               std::int64_t max_iter) {
    mocu::SolverConfig solver;
    solver.method = method == "dense" ? mocu::SteadyMethod::DenseSolve
                                      : mocu::SteadyMethod::StructuredPower;
    solver.tol = tol;
    solver.max_iter = max_iter;
    return solver;
}

int run_quad(const QuadArgs& args) {
    if (args.g_curve) {
        const auto lambdas = mocu::parse_grid(args.lambdas);
        const auto xs = mocu::parse_grid(args.x_grid);
        const auto samples = mocu::emit_g_curve(args.gamma1, args.gamma2, args.alpha1,
                                                args.alpha2, lambdas, xs);
        const json config = {{"subcommand", "quad"},   {"mode", "g-curve"},
                             {"gamma1", args.gamma1},  {"gamma2", args.gamma2},
                             {"alpha1", args.alpha1},  {"alpha2", args.alpha2},
                             {"lambdas", args.lambdas}, {"x_grid", args.x_grid}};
        const auto path = resolve_out(args.out, args.out_dir, "quad_g_curve.csv");
        mocu::write_g_curve_csv(path, samples, config.dump());
        std::cout << path << "\n";
        return 0;
    }

    mocu::CaseConfig config;
    config.case_id = args.case_id;
    config.c_grid = mocu::parse_grid(args.c);
    config.d_grid = mocu::parse_grid(args.d);
    config.delta_grid = mocu::parse_grid(args.delta);
    config.theta_samples = args.theta_samples;
    config.lambda_grid = args.lambda_grid;
    config.seed = args.seed;
    const auto table = mocu::run_case(config);

    const json meta = {{"subcommand", "quad"},
                       {"case", args.case_id},
                       {"c", args.c},
                       {"d", args.d},
                       {"delta", args.delta},
                       {"theta_samples", args.theta_samples},
                       {"lambda_grid", args.lambda_grid},
                       {"seed", args.seed}};
    const auto path = resolve_out(
        args.out, args.out_dir, "quad_case" + std::to_string(args.case_id) + ".csv");
    mocu::write_case_csv(path, table, meta.dump());
    std::cout << path << "\n";
    return 0;
}

int run_grn(const GrnArgs& args) {
    const mocu::NetworkFile file = mocu::load_network({args.network});

    mocu::ExperimentConfig config;
    config.ks = mocu::parse_int_list(args.k);
    config.runs = args.runs;
    config.lambda_intervals = args.lambda_grid;
    config.seed = args.seed;
    config.workers = args.workers;
    config.eval.perturbation = file.perturbation;
    config.eval.solver = make_solver(args.method, args.tol, args.max_iter);
    config.eval.allow_null_intervention = args.allow_null;
    config.eval.k_cap = args.k_cap;

    const json meta = {{"subcommand", "grn"},
                       {"network", args.network},
                       {"k", args.k},
                       {"runs", args.runs},
                       {"lambda_grid", args.lambda_grid},
                       {"seed", args.seed},
                       {"perturbation", file.perturbation},
                       {"method", args.method},
                       {"tol", args.tol},
                       {"max_iter", args.max_iter},
                       {"allow_null_intervention", args.allow_null},
                       {"k_cap", args.k_cap}};
    const std::string config_json = meta.dump();

    const auto prefix = resolve_out(args.out, args.out_dir, "grn");
    const std::string checkpoint_path = prefix + "_checkpoint.jsonl";

    std::vector<mocu::RunRecord> resume;
    bool resuming = false;
    if (!args.fresh) {
        const auto cp = mocu::load_checkpoint(checkpoint_path);
        if (cp.config_json == config_json) {
            resume = cp.records;
            resuming = !resume.empty();
        } else if (!cp.config_json.empty()) {
            std::cerr << "checkpoint " << checkpoint_path
                      << " was written for a different configuration; starting fresh\n";
        }
    }
    mocu::CheckpointWriter writer(checkpoint_path, config_json, resuming);

    mocu::SteadyStateCache cache;
    const auto stats = mocu::run_experiment(
        file.network, config, args.no_cache ? nullptr : &cache,
        [&writer](const mocu::RunRecord& r) { writer.append(r); }, resume);

    mocu::write_runs_csv(prefix + "_runs.csv", stats.records, config_json);
    mocu::write_summary_csv(prefix + "_summary.csv", stats.summaries, config_json);

    mocu::GrnReport report;
    report.config_json = config_json;
    report.summaries = stats.summaries;
    report.cache = cache.stats();
    report.lambda_method = "trapezoid";
    report.lambda_nodes = static_cast<std::size_t>(args.lambda_grid) + 1;
    report.solver_method = args.method;
    report.solver_tol = args.tol;
    mocu::write_grn_report_json(prefix + "_report.json", report);

    std::cout << prefix + "_runs.csv" << "\n"
              << prefix + "_summary.csv" << "\n"
              << prefix + "_report.json" << "\n";
    return 0;
}

int run_steady(const SteadyArgs& args) {
    const mocu::NetworkFile file = mocu::load_network_file(args.network);
    const auto& net = file.network;
    if (!net.fully_signed())
        throw std::invalid_argument("steady-state analysis needs a fully signed network");
    const double p = args.p >= 0.0 ? args.p : file.perturbation;
    const auto solver = make_solver(args.method, args.tol, args.max_iter);

    std::vector<mocu::Intervention> interventions;
    if (args.block_edge.empty()) {
        interventions.push_back(mocu::Intervention::none());
    } else {
        for (int e : mocu::parse_int_list(args.block_edge))
            interventions.push_back(mocu::Intervention::block_edge(e));
    }

    const auto u_set = mocu::undesirable_states(net.gene_count());
    const auto p_set = mocu::constrained_states(net.gene_count());

    std::vector<mocu::SteadyRow> rows;
    rows.reserve(interventions.size());
    for (const auto& iv : interventions) {
        const mocu::BnpModel model{mocu::apply_intervention(net, iv), p};
        const auto ss = mocu::steady_state(model, solver);
        mocu::SteadyRow row;
        if (iv.kind == mocu::Intervention::Kind::BlockEdge) {
            row.intervention = "block-edge";
            row.edge = iv.edge;
            row.source = net.genes[net.edges[iv.edge].source];
            row.target = net.genes[net.edges[iv.edge].target];
        } else {
            row.intervention = "none";
        }
        row.pi_u = mocu::state_mass(ss, u_set);
        row.pi_p = mocu::state_mass(ss, p_set);
        row.residual = ss.residual;
        row.iterations = ss.iterations;
        row.method = ss.method == mocu::SteadyMethod::DenseSolve ? "dense" : "power";
        rows.push_back(row);
    }

    const json meta = {{"subcommand", "steady"},
                       {"network", args.network},
                       {"block_edge", args.block_edge},
                       {"method", args.method},
                       {"tol", args.tol},
                       {"max_iter", args.max_iter},
                       {"perturbation", p}};
    const auto path = resolve_out(args.out, args.out_dir, "steady.csv");
    mocu::write_steady_csv(path, rows, meta.dump());
    std::cout << path << "\n";
    return 0;
}

void add_out_options(CLI::App* cmd, std::string& out, std::string& out_dir,
                     const char* out_help) {
    cmd->add_option("--out", out, out_help);
    cmd->add_option("--out-dir", out_dir,
                    "Directory for default output files (env MOCU_OUT_DIR)")
        ->envname("MOCU_OUT_DIR");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Objective-based uncertainty quantification toolkit"};
    app.set_version_flag("--version", std::string(mocu::kVersion));
    app.require_subcommand(1);

    QuadArgs quad;
    auto* quad_cmd = app.add_subcommand(
        "quad", "Two-objective quadratic benchmark sweeps and g-curve samples");
    quad_cmd->add_option("--case", quad.case_id, "Benchmark case (1, 2, or 3)")
        ->required()
        ->check(CLI::Range(1, 3));
    quad_cmd->add_option("--c", quad.c, "Curvature grid (cases 1, 3)");
    quad_cmd->add_option("--d", quad.d, "Center offset grid (cases 2, 3)");
    quad_cmd->add_option("--delta", quad.delta, "Interval width grid (cases 1, 2)");
    quad_cmd->add_option("--theta-samples", quad.theta_samples,
                         "Model samples per grid point")
        ->check(CLI::PositiveNumber);
    quad_cmd->add_option("--lambda-grid", quad.lambda_grid,
                         "Trapezoid intervals over lambda")
        ->check(CLI::PositiveNumber);
    quad_cmd->add_option("--seed", quad.seed, "Master seed");
    quad_cmd->add_flag("--g-curve", quad.g_curve,
                       "Emit combined-cost curve samples instead of a sweep");
    quad_cmd->add_option("--gamma1", quad.gamma1, "g-curve: first center");
    quad_cmd->add_option("--gamma2", quad.gamma2, "g-curve: second center");
    quad_cmd->add_option("--alpha1", quad.alpha1, "g-curve: first curvature");
    quad_cmd->add_option("--alpha2", quad.alpha2, "g-curve: second curvature");
    quad_cmd->add_option("--lambdas", quad.lambdas, "g-curve: lambda grid");
    quad_cmd->add_option("--x-grid", quad.x_grid, "g-curve: x grid");
    add_out_options(quad_cmd, quad.out, quad.out_dir, "Output CSV path");

    GrnArgs grn;
    auto* grn_cmd = app.add_subcommand(
        "grn", "Cell-cycle intervention experiment over random uncertainty classes");
    grn_cmd->add_option("--network", grn.network, "Network definition JSON")
        ->required();
    grn_cmd->add_option("--k", grn.k, "Unknown-edge counts (list or lo-hi range)");
    grn_cmd->add_option("--runs", grn.runs, "Uncertainty classes per k")
        ->check(CLI::PositiveNumber);
    grn_cmd->add_option("--lambda-grid", grn.lambda_grid,
                        "Trapezoid intervals over lambda")
        ->check(CLI::PositiveNumber);
    grn_cmd->add_option("--seed", grn.seed, "Master seed");
    grn_cmd->add_option("--workers", grn.workers,
                        "Worker threads (0 = hardware concurrency)");
    grn_cmd->add_option("--k-cap", grn.k_cap, "Enumeration cap on k");
    grn_cmd->add_option("--method", grn.method, "Steady-state solver")
        ->check(CLI::IsMember({"power", "dense"}));
    grn_cmd->add_option("--tol", grn.tol, "Solver tolerance");
    grn_cmd->add_option("--max-iter", grn.max_iter, "Power iteration cap");
    grn_cmd->add_flag("--allow-null-intervention", grn.allow_null,
                      "Add the do-nothing intervention to the operator class");
    grn_cmd->add_flag("--no-cache", grn.no_cache, "Disable the steady-state cache");
    grn_cmd->add_flag("--fresh", grn.fresh, "Ignore any existing checkpoint");
    add_out_options(grn_cmd, grn.out, grn.out_dir,
                    "Output path prefix (default <out-dir>/grn)");

    SteadyArgs steady;
    auto* steady_cmd = app.add_subcommand(
        "steady", "Steady-state masses for one network and interventions");
    steady_cmd->add_option("--network", steady.network, "Network definition JSON")
        ->required();
    steady_cmd->add_option("--block-edge", steady.block_edge,
                           "Edge indices to block, one row each (list or lo-hi)");
    steady_cmd->add_option("--method", steady.method, "Steady-state solver")
        ->check(CLI::IsMember({"power", "dense"}));
    steady_cmd->add_option("--tol", steady.tol, "Solver tolerance");
    steady_cmd->add_option("--max-iter", steady.max_iter, "Power iteration cap");
    steady_cmd->add_option("--p", steady.p, "Override the file's perturbation")
        ->check(CLI::Range(0.0, 1.0));
    add_out_options(steady_cmd, steady.out, steady.out_dir, "Output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (quad_cmd->parsed()) return run_quad(quad);
        if (grn_cmd->parsed()) return run_grn(grn);
        return run_steady(steady);
    } catch (const mocu::LoadError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompute;
    }
}
