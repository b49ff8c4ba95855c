#pragma once

#include "densekit/density.hpp"

namespace densekit {

// Reduction-candidate threshold demonstrated across the studied datasets.
inline constexpr double kDefaultQualityThreshold = 10.0;

struct QualityScore {
    double sigma_d = 0.0;    // population standard deviation of class densities
    double range = 0.0;      // max(d) - min(d)
    double q = 0.0;          // 1 / (sigma_d * range)
    bool candidate = false;  // q > threshold
    bool degenerate = false; // all densities identical; q is unbounded
};

// Scores a dataset from its mean-normalized class densities: the greater the
// variance among them, the lower the quality. Requires >= 2 classes.
QualityScore dataset_quality(const DensityVector& densities,
                             double threshold = kDefaultQualityThreshold);

} // namespace densekit
