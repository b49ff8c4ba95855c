#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "densekit/density.hpp"

namespace densekit {

// Central-Exclusion solve parameters. The margin (a fraction of the class's
// sample count) is the binding stop criterion; max_iterations optionally caps
// the bisection probes before the margin is reached.
struct ReductionRequest {
    DensityMethod method = DensityMethod::mean;   // mean or mean_normalized
    double target = 1.0;
    double margin_fraction = 0.0005;              // in (0, 0.01]
    std::optional<int> max_iterations;            // unset: run until the margin
};

struct DistanceEntry {
    std::int64_t id = 0;
    double distance = 0.0;
};

// Per class: (sample id, Euclidean distance to the class centroid), sorted
// ascending by distance with ties broken by ascending id.
std::vector<std::vector<DistanceEntry>> centroid_distances(const EmbeddingSet& set,
                                                           const std::vector<ClassStats>& stats);

// Ids surviving after the k samples nearest the original class centroid are
// removed. The centroid is never recomputed mid-exclusion. 0 <= k <= c_i - 2.
std::vector<std::int64_t> central_exclusion(const EmbeddingSet& set,
                                            const std::vector<ClassStats>& stats, int class_id,
                                            std::size_t k);

struct ClassReduction {
    int class_id = 0;
    double initial_density = 0.0;
    double target = 0.0;
    double achieved_density = 0.0;      // recomputed on the fully reduced set
    double threshold_distance = 0.0;    // distance of the nearest included sample
    int iterations_used = 0;            // density probes spent on this class
    bool saturated = false;             // target unreachable even at maximal exclusion
    std::vector<std::int64_t> excluded_ids;  // ascending by centroid distance, ties by id
};

struct ReductionManifest {
    DensityMethod method = DensityMethod::mean;
    double target = 0.0;
    double margin_fraction = 0.0;
    std::optional<int> max_iterations;
    double total_included_fraction = 1.0;
    std::vector<ClassReduction> classes;  // sorted by class id

    std::vector<std::int64_t> all_excluded_ids() const;
};

// For each class whose density exceeds the target, binary-searches the
// exclusion count over the centroid-distance ordering until the recomputed
// density drops to the target (or the class saturates at c_i - 2 removals).
// Classes are solved independently against pre-reduction cross-class
// statistics; per-class work may run in parallel.
ReductionManifest solve_target_density(const EmbeddingSet& set,
                                       const std::vector<ClassStats>& stats,
                                       const ReductionRequest& req);

// Serialization. The CSV form spans two documents (summary + exclusion
// rows); the JSON form is a single self-describing document.
std::string manifest_to_csv(const ReductionManifest& manifest);
std::string exclusions_to_csv(const ReductionManifest& manifest);
std::string manifest_to_json(const ReductionManifest& manifest);
ReductionManifest manifest_from_json(const std::string& text);
ReductionManifest manifest_from_json_file(const std::string& path);

} // namespace densekit
