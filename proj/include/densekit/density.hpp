#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "densekit/types.hpp"

namespace densekit {

enum class DensityMethod { min, max, mean, mean_normalized };

const char* to_string(DensityMethod method);
DensityMethod density_method_from_string(const std::string& name);

// Per-class summary over one embedding set. sigma is the population standard
// deviation (divisor c_i) of each embedding dimension across the class.
struct ClassStats {
    int class_id = 0;
    std::size_t count = 0;          // c_i
    std::vector<double> sigma;      // one entry per embedding dimension
    double mean_sigma = 0.0;        // (1/m) * sum_k sigma_k
    std::vector<double> centroid;   // per-dimension mean
    bool zero_spread = false;       // sigma vanishes in every dimension
};

// Requires every class to have >= 2 samples; a classwide zero sigma is
// permitted but flagged (density over it is undefined downstream).
std::vector<ClassStats> class_stats(const EmbeddingSet& set);

// One density per class under a single calculation method.
struct DensityVector {
    DensityMethod method = DensityMethod::mean;
    std::map<int, double> values;
};

// d_i = n * c_i / (sum_j c_j) / min(sigma_i); errors on any zero dimension.
DensityVector density_min(const std::vector<ClassStats>& stats);
// As density_min with max(sigma_i).
DensityVector density_max(const std::vector<ClassStats>& stats);
// d_i = n * c_i / (sum_j c_j) / mean_sigma_i. The leading terms bias
// unbalanced datasets; for balanced ones they compute to 1.
DensityVector density_mean(const std::vector<ClassStats>& stats);
// d_i = (1/n) * sum_j mean_sigma_j / mean_sigma_i. No imbalance bias terms;
// dimensionless and invariant to embedding scale.
DensityVector density_mean_normalized(const std::vector<ClassStats>& stats);

DensityVector density_by_method(const std::vector<ClassStats>& stats, DensityMethod method);

// Density CSV interchange: header `class,density`, 9 decimal places.
std::string density_to_csv(const DensityVector& densities);
DensityVector parse_density_csv(std::istream& in, DensityMethod method);
DensityVector parse_density_csv_file(const std::string& path, DensityMethod method);

} // namespace densekit
