#include "densekit/quality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace densekit {

QualityScore dataset_quality(const DensityVector& densities, double threshold) {
    if (densities.method != DensityMethod::mean_normalized)
        throw DataError("quality", "quality is defined over mean-normalized densities");
    const std::size_t n = densities.values.size();
    if (n < 2)
        throw DataError("quality", "fewer than 2 classes");

    double mean = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& [cls, d] : densities.values) {
        mean += d;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    mean /= static_cast<double>(n);

    double var = 0.0;
    for (const auto& [cls, d] : densities.values)
        var += (d - mean) * (d - mean);
    var /= static_cast<double>(n);  // population convention

    QualityScore score;
    score.sigma_d = std::sqrt(var);
    score.range = hi - lo;
    if (score.range == 0.0) {
        score.q = std::numeric_limits<double>::infinity();
        score.candidate = true;
        score.degenerate = true;
        return score;
    }
    score.q = 1.0 / (score.sigma_d * score.range);
    score.candidate = score.q > threshold;
    return score;
}

} // namespace densekit
