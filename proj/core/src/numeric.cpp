#include "mocu/numeric.hpp"

#include <algorithm>
#include <stdexcept>

namespace mocu {

SampleStats sample_stats(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("sample_stats needs a nonempty sample");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    SampleStats s;
    s.min = sorted.front();
    s.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    KahanSum total;
    for (double x : xs) total.add(x);
    s.mean = total.value() / static_cast<double>(n);
    if (n > 1) {
        KahanSum sq;
        for (double x : xs) {
            const double d = x - s.mean;
            sq.add(d * d);
        }
        s.stddev = std::sqrt(sq.value() / static_cast<double>(n - 1));
    }
    return s;
}

}  // namespace mocu
