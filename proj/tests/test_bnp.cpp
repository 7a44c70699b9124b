#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mocu/bnp.hpp"
#include "mocu/numeric.hpp"
#include "mocu/rng.hpp"
#include "oracles.hpp"

using mocu::BnpModel;
using mocu::Edge;
using mocu::EdgeSign;
using mocu::GeneNetwork;
using mocu::Rng;
using mocu::State;
using mocu::TruthTable;

namespace {

GeneNetwork two_gene() {
    GeneNetwork net;
    net.genes = {"A", "B"};
    net.edges = {{0, 1, EdgeSign::Activating}, {1, 0, EdgeSign::Suppressing}};
    return net;
}

GeneNetwork random_network(int n, Rng& rng) {
    GeneNetwork net;
    for (int i = 0; i < n; ++i) net.genes.push_back("g" + std::to_string(i));
    for (int target = 0; target < n; ++target) {
        const int regulators = 1 + static_cast<int>(rng.bounded(3));
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int j = 0; j < regulators && j < n; ++j) {
            const auto pick = j + static_cast<int>(rng.bounded(pool.size() - j));
            std::swap(pool[j], pool[pick]);
            net.edges.push_back({pool[j], target,
                                 rng.bounded(2) ? EdgeSign::Activating
                                                : EdgeSign::Suppressing});
        }
    }
    return net;
}

double l1_diff(std::span<const double> a, std::span<const double> b) {
    REQUIRE(a.size() == b.size());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

}  // namespace

TEST_CASE("majority vote follows the sign of the expressed regulators") {
    const auto net = two_gene();
    // (A=1, B=0): A holds (its suppressor is silent), B activates.
    CHECK(mocu::next_state(net, 0b01) == 0b11);
    // (A=1, B=1): B suppresses A, A activates B.
    CHECK(mocu::next_state(net, 0b11) == 0b10);
    // (A=0, B=0): no expressed regulators, both hold.
    CHECK(mocu::next_state(net, 0b00) == 0b00);

    CHECK_THROWS_AS(mocu::next_state(net, 4), std::invalid_argument);
}

TEST_CASE("a tied vote holds the current value") {
    GeneNetwork net;
    net.genes = {"A", "B", "C"};
    net.edges = {{0, 1, EdgeSign::Activating}, {2, 1, EdgeSign::Suppressing}};
    // A and C both expressed: B's vote cancels, so B keeps its value.
    CHECK(((mocu::next_state(net, 0b101) >> 1) & 1u) == 0);
    CHECK(((mocu::next_state(net, 0b111) >> 1) & 1u) == 1);
}

TEST_CASE("truth tables match the edge-list oracle on random networks") {
    Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3 + static_cast<int>(rng.bounded(3));
        const auto net = random_network(n, rng);
        const auto table = mocu::build_truth_table(net);
        const auto expect = oracle::majority_table(n, net.edges);
        CHECK(table.n == n);
        CHECK(table.next == expect);
    }
}

TEST_CASE("unsigned edges are rejected by simulation") {
    auto net = two_gene();
    net.edges[1].sign = EdgeSign::Unknown;
    CHECK_FALSE(net.fully_signed());
    CHECK_THROWS_AS(mocu::next_state(net, 0), std::invalid_argument);
    CHECK_THROWS_AS(mocu::build_truth_table(net), std::invalid_argument);
}

TEST_CASE("blocking an edge removes it from the vote") {
    const auto net = two_gene();
    const auto blocked = mocu::apply_intervention(net, mocu::Intervention::block_edge(0));
    REQUIRE(blocked.edges.size() == 1);

    // B lost its only regulator, so it holds everywhere.
    for (State s = 0; s < 4; ++s)
        CHECK(((mocu::next_state(blocked, s) >> 1) & 1u) == ((s >> 1) & 1u));

    const auto same = mocu::apply_intervention(net, mocu::Intervention::none());
    CHECK(same.edges.size() == net.edges.size());

    CHECK_THROWS_AS(mocu::apply_intervention(net, mocu::Intervention::block_edge(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(mocu::apply_intervention(net, mocu::Intervention::block_edge(-1)),
                    std::invalid_argument);

    // Table of the blocked network equals the oracle on the reduced edge list.
    std::vector<Edge> reduced{net.edges[1]};
    CHECK(mocu::build_truth_table(blocked).next ==
          oracle::majority_table(2, reduced));
}

TEST_CASE("structured transition matches the dense kernel row by row") {
    Rng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng.bounded(3));
        const auto net = random_network(n, rng);
        const auto table = mocu::build_truth_table(net);
        const double p = 0.001 * std::pow(10.0, static_cast<double>(rng.bounded(3)));

        const auto kernel = mocu::dense_transition_matrix(table, p);
        const std::size_t count = std::size_t{1} << n;
        const mocu::TransitionOperator op(table, p);

        std::vector<double> in(count, 0.0), out(count);
        for (std::size_t x = 0; x < count; ++x) {
            in[x] = 1.0;
            op.apply(in, out);
            in[x] = 0.0;
            for (std::size_t y = 0; y < count; ++y)
                CHECK(out[y] == doctest::Approx(kernel[x * count + y]).epsilon(1e-13));
        }
    }
}

TEST_CASE("dense kernel rows are stochastic") {
    Rng rng(44);
    const auto net = random_network(4, rng);
    const auto table = mocu::build_truth_table(net);
    for (double p : {0.0, 0.001, 0.1, 0.5}) {
        const auto kernel = mocu::dense_transition_matrix(table, p);
        const std::size_t count = 16;
        for (std::size_t x = 0; x < count; ++x) {
            mocu::KahanSum row;
            for (std::size_t y = 0; y < count; ++y) {
                REQUIRE(kernel[x * count + y] >= 0.0);
                row.add(kernel[x * count + y]);
            }
            CHECK(std::abs(row.value() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("p = 0 reduces the dense kernel to the deterministic indicator") {
    Rng rng(45);
    const auto net = random_network(3, rng);
    const auto table = mocu::build_truth_table(net);
    const auto kernel = mocu::dense_transition_matrix(table, 0.0);
    for (std::size_t x = 0; x < 8; ++x)
        for (std::size_t y = 0; y < 8; ++y)
            CHECK(kernel[x * 8 + y] == (table.next[x] == y ? 1.0 : 0.0));
}

TEST_CASE("single gene with identity update flips with probability p") {
    GeneNetwork net;
    net.genes = {"A"};
    net.edges = {{0, 0, EdgeSign::Activating}};
    const BnpModel model{net, 0.01};

    const std::vector<double> point{1.0, 0.0};
    const auto stepped = mocu::transition_apply(model, point);
    CHECK(stepped[0] == doctest::Approx(0.99).epsilon(1e-15));
    CHECK(stepped[1] == doctest::Approx(0.01).epsilon(1e-15));

    // Symmetric flips make the stationary distribution uniform.
    const auto steady = mocu::steady_state(model);
    CHECK(steady.pi[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(steady.pi[1] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("identity update keeps the uniform distribution stationary") {
    const int n = 3;
    TruthTable table;
    table.n = n;
    table.next.resize(8);
    for (State x = 0; x < 8; ++x) table.next[x] = x;
    const auto steady = mocu::steady_state(table, 0.05);
    for (double v : steady.pi) CHECK(v == doctest::Approx(0.125).epsilon(1e-10));
}

TEST_CASE("power iteration, dense solve and the oracle agree") {
    Rng rng(46);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 3 + static_cast<int>(rng.bounded(3));
        const auto net = random_network(n, rng);
        const auto table = mocu::build_truth_table(net);
        const double p = (trial % 3 == 0) ? 0.001 : (trial % 3 == 1) ? 0.01 : 0.1;

        const auto power = mocu::steady_state(table, p);
        const auto dense = mocu::dense_steady_state(table, p);
        const auto reference = oracle::dense_stationary(n, table.next, p);

        CHECK(power.method == mocu::SteadyMethod::StructuredPower);
        CHECK(dense.method == mocu::SteadyMethod::DenseSolve);
        CHECK(power.iterations > 0);
        CHECK(dense.iterations == 0);
        CHECK(power.residual <= 1e-11);
        CHECK(dense.residual <= 1e-11);
        CHECK(l1_diff(power.pi, dense.pi) <= 1e-9);
        CHECK(l1_diff(power.pi, reference) <= 1e-9);

        mocu::KahanSum mass;
        for (double v : power.pi) {
            REQUIRE(v >= 0.0);
            mass.add(v);
        }
        CHECK(std::abs(mass.value() - 1.0) < 1e-12);
    }
}

TEST_CASE("the stationary limit does not depend on the starting point") {
    Rng rng(47);
    const auto net = random_network(4, rng);
    const BnpModel model{net, 0.01};
    const auto from_uniform = mocu::steady_state(model);

    std::vector<double> init(16, 0.0);
    init[5] = 1.0;
    const auto from_point = mocu::steady_state_from(model, init);
    CHECK(l1_diff(from_uniform.pi, from_point.pi) < 1e-10);

    std::vector<double> random_init(16);
    double total = 0.0;
    for (auto& v : random_init) {
        v = rng.uniform();
        total += v;
    }
    for (auto& v : random_init) v /= total;
    const auto from_random = mocu::steady_state_from(model, random_init);
    CHECK(l1_diff(from_uniform.pi, from_random.pi) < 1e-10);
}

TEST_CASE("the power method reports non-convergence") {
    Rng rng(48);
    const auto net = random_network(4, rng);
    mocu::SolverConfig config;
    config.tol = 1e-15;
    config.max_iter = 3;
    try {
        mocu::steady_state(BnpModel{net, 0.01}, config);
        FAIL("expected ConvergenceError");
    } catch (const mocu::ConvergenceError& e) {
        CHECK(e.iterations() == 3);
        CHECK(e.residual() > 0.0);
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }

    config.max_iter = 0;
    CHECK_THROWS_AS(mocu::steady_state(BnpModel{net, 0.01}, config),
                    std::invalid_argument);
    config.max_iter = 10;
    config.tol = 0.0;
    CHECK_THROWS_AS(mocu::steady_state(BnpModel{net, 0.01}, config),
                    std::invalid_argument);
}

TEST_CASE("perturbation probability is validated") {
    const auto net = two_gene();
    CHECK_THROWS_AS(mocu::steady_state(BnpModel{net, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(mocu::steady_state(BnpModel{net, 1.0}), std::invalid_argument);
    const auto table = mocu::build_truth_table(net);
    CHECK_THROWS_AS(mocu::dense_steady_state(table, 0.0), std::invalid_argument);
    CHECK_NOTHROW(mocu::dense_transition_matrix(table, 0.0));
    CHECK_THROWS_AS(mocu::dense_transition_matrix(table, 1.0), std::invalid_argument);
}

TEST_CASE("dense solves are limited to 12 genes") {
    TruthTable table;
    table.n = 13;
    table.next.assign(std::size_t{1} << 13, 0);
    CHECK_THROWS_AS(mocu::dense_steady_state(table, 0.01), std::invalid_argument);
}

TEST_CASE("distribution arguments are validated") {
    const auto net = two_gene();
    const BnpModel model{net, 0.01};
    CHECK_THROWS_AS(mocu::transition_apply(model, std::vector<double>{0.5, 0.5}),
                    std::invalid_argument);  // wrong length
    CHECK_THROWS_AS(
        mocu::transition_apply(model, std::vector<double>{0.5, 0.5, 0.5, 0.5}),
        std::invalid_argument);  // not a distribution
    CHECK_THROWS_AS(
        mocu::transition_apply(model, std::vector<double>{-0.5, 0.5, 0.5, 0.5}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        mocu::steady_state_from(model, std::vector<double>{2.0, -1.0, 0.0, 0.0}),
        std::invalid_argument);

    const auto table = mocu::build_truth_table(net);
    const mocu::TransitionOperator op(table, 0.01);
    std::vector<double> buf(4, 0.25);
    CHECK_THROWS_AS(op.apply(buf, buf), std::invalid_argument);  // aliasing
}

TEST_CASE("state sets count members and weigh stationary mass") {
    const auto evens = mocu::StateSet::from_predicate(3, [](State s) {
        return (s & 1u) == 0;
    });
    CHECK(evens.count() == 4);

    mocu::SteadyState uniform;
    uniform.pi.assign(8, 0.125);
    CHECK(mocu::state_mass(uniform, evens) == doctest::Approx(0.5).epsilon(1e-15));

    mocu::SteadyState wrong;
    wrong.pi.assign(4, 0.25);
    CHECK_THROWS_AS(mocu::state_mass(wrong, evens), std::invalid_argument);

    CHECK_THROWS_AS(mocu::StateSet::from_predicate(0, [](State) { return true; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(mocu::StateSet::from_predicate(21, [](State) { return true; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(mocu::StateSet::from_predicate(3, nullptr),
                    std::invalid_argument);
}

TEST_CASE("network validation catches structural errors") {
    GeneNetwork dup = two_gene();
    dup.edges.push_back({0, 1, EdgeSign::Suppressing});
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

    GeneNetwork twice = two_gene();
    twice.genes[1] = "A";
    CHECK_THROWS_AS(twice.validate(), std::invalid_argument);

    GeneNetwork oob = two_gene();
    oob.edges[0].target = 5;
    CHECK_THROWS_AS(oob.validate(), std::invalid_argument);

    GeneNetwork empty;
    CHECK_THROWS_AS(empty.validate(), std::invalid_argument);

    GeneNetwork big;
    for (int i = 0; i < 21; ++i) big.genes.push_back("g" + std::to_string(i));
    CHECK_THROWS_AS(big.validate(), std::invalid_argument);
}
