#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace mocu {

/// Kahan compensated accumulator. Summation order is the caller's
/// responsibility; all engine reductions add in index order.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

inline double kahan_total(std::span<const double> xs) {
    KahanSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

struct SampleStats {
    double min = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double stddev = 0.0;  // sample stddev (n-1); 0 for a single value
};

/// Order statistics and moments of a nonempty sample.
SampleStats sample_stats(std::span<const double> xs);

}  // namespace mocu
