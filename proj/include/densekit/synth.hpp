#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "densekit/types.hpp"

namespace densekit {

struct ClassSpec {
    std::size_t count = 0;          // total samples; split 80/20 into train/test
    std::vector<double> sigma;      // per-dimension spread
    std::vector<double> centroid;   // per-dimension mean
};

struct SynthSpec {
    int dims = 3;
    std::uint64_t seed = 0;
    std::vector<ClassSpec> classes;
};

struct GeneratedData {
    EmbeddingSet train;
    EmbeddingSet test;
};

// Draws each class from an axis-aligned Gaussian. Generation is fully
// determined by the seed: mt19937_64 drives an explicit Box-Muller transform
// so fixtures are stable across platforms. Requires >= 4 samples per class.
GeneratedData generate(const SynthSpec& spec);

struct ClassifierResult {
    double accuracy = 0.0;
    AccuracyTable per_class;
};

// Assigns each test sample to the class of the nearest train centroid;
// distance ties go to the lower class id.
ClassifierResult nearest_centroid_accuracy(const EmbeddingSet& train, const EmbeddingSet& test);

// Spec JSON: {"dims": m, "seed": s, "classes": [{"count": c, "sigma": [...],
// "centroid": [...]}, ...]}. A missing seed defaults to 0.
SynthSpec synth_spec_from_json(const std::string& text);
SynthSpec synth_spec_from_json_file(const std::string& path);

} // namespace densekit
