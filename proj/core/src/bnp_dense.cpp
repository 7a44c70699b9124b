#include <bit>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mocu/bnp.hpp"
#include "mocu/numeric.hpp"

namespace mocu {

std::vector<double> dense_transition_matrix(const TruthTable& table, double p) {
    if (table.n < 1 || table.n > 12)
        throw std::invalid_argument("dense kernel limited to 12 genes");
    const std::size_t size = std::size_t{1} << table.n;
    if (table.next.size() != size)
        throw std::invalid_argument("truth table size must be 2^n");
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("dense kernel needs p in [0, 1)");

    std::vector<double> powp(table.n + 1), powq(table.n + 1);
    powp[0] = powq[0] = 1.0;
    for (int h = 1; h <= table.n; ++h) {
        powp[h] = powp[h - 1] * p;
        powq[h] = powq[h - 1] * (1.0 - p);
    }

    std::vector<double> kernel(size * size);
    for (std::size_t x = 0; x < size; ++x) {
        if (table.next[x] >= size)
            throw std::invalid_argument("truth table entry out of range");
        double* row = &kernel[x * size];
        for (std::size_t y = 0; y < size; ++y) {
            const int h = std::popcount(static_cast<State>(x) ^ static_cast<State>(y));
            row[y] = h > 0 ? powp[h] * powq[table.n - h] : 0.0;
        }
        row[table.next[x]] += powq[table.n];
    }
    return kernel;
}

SteadyState dense_steady_state(const TruthTable& table, double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("perturbation probability must lie in (0, 1)");
    const std::vector<double> kernel = dense_transition_matrix(table, p);
    const std::size_t count = std::size_t{1} << table.n;
    const auto size = static_cast<Eigen::Index>(count);

    // Stationarity pi P = pi as (P^T - I) pi = 0, with the last equation
    // replaced by the normalization sum(pi) = 1.
    Eigen::MatrixXd a(size, size);
    for (Eigen::Index r = 0; r < size; ++r)
        for (Eigen::Index c = 0; c < size; ++c)
            a(r, c) = kernel[static_cast<std::size_t>(c) * count +
                             static_cast<std::size_t>(r)] -
                      (r == c ? 1.0 : 0.0);
    for (Eigen::Index c = 0; c < size; ++c) a(size - 1, c) = 1.0;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(size);
    b(size - 1) = 1.0;
    const Eigen::VectorXd x = a.partialPivLu().solve(b);

    std::vector<double> pi(static_cast<std::size_t>(size));
    for (Eigen::Index i = 0; i < size; ++i) pi[i] = std::max(0.0, x(i));
    const double total = kahan_total(pi);
    if (!(total > 0.0))
        throw std::runtime_error("dense steady-state solve produced a zero vector");
    for (double& v : pi) v /= total;

    KahanSum residual;
    for (std::size_t y = 0; y < pi.size(); ++y) {
        KahanSum out;
        for (std::size_t xx = 0; xx < pi.size(); ++xx)
            out.add(pi[xx] * kernel[xx * pi.size() + y]);
        residual.add(std::abs(out.value() - pi[y]));
    }
    return {std::move(pi), residual.value(), 0, SteadyMethod::DenseSolve};
}

}  // namespace mocu
