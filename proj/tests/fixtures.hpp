#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "densekit/types.hpp"
#include "oracles.hpp"

namespace fixtures {

struct Row {
    std::int64_t id;
    int label;
    std::vector<double> coords;
};

inline densekit::EmbeddingSet make_set(int dims, const std::vector<Row>& rows) {
    std::vector<densekit::EmbeddedSample> samples;
    for (const auto& r : rows)
        samples.push_back({r.id, r.label, r.coords});
    return densekit::EmbeddingSet::create(dims, std::move(samples));
}

// Axis-aligned Gaussian blobs, one sigma per class; deterministic by seed.
// (Independent of the library's own generator: plain Box-Muller over test
// uniforms.)
inline densekit::EmbeddingSet gaussian_set(std::uint64_t seed, const std::vector<double>& sigmas,
                                           std::size_t per_class, int dims,
                                           double separation = 0.0) {
    const std::size_t total = sigmas.size() * per_class * dims;
    const auto u1 = oracles::uniform_doubles(seed, total, 1e-12, 1.0);
    const auto u2 = oracles::uniform_doubles(seed + 1, total, 0.0, 1.0);
    std::vector<densekit::EmbeddedSample> samples;
    std::size_t cursor = 0;
    std::int64_t id = 0;
    for (std::size_t cls = 0; cls < sigmas.size(); ++cls) {
        for (std::size_t i = 0; i < per_class; ++i) {
            densekit::EmbeddedSample s;
            s.id = id++;
            s.label = static_cast<int>(cls);
            for (int k = 0; k < dims; ++k) {
                const double z = std::sqrt(-2.0 * std::log(u1[cursor])) *
                                 std::cos(2.0 * 3.14159265358979323846 * u2[cursor]);
                ++cursor;
                s.coords.push_back(separation * static_cast<double>(cls) + sigmas[cls] * z);
            }
            samples.push_back(std::move(s));
        }
    }
    return densekit::EmbeddingSet::create(dims, std::move(samples));
}

// Uniform box noise around per-class offsets; deterministic by seed.
inline densekit::EmbeddingSet random_set(std::uint64_t seed, int n_classes, std::size_t per_class,
                                         int dims, double spread = 1.0, double separation = 0.0) {
    const auto noise =
        oracles::uniform_doubles(seed, static_cast<std::size_t>(n_classes) * per_class * dims,
                                 -spread, spread);
    std::vector<densekit::EmbeddedSample> samples;
    std::size_t cursor = 0;
    std::int64_t id = 0;
    for (int cls = 0; cls < n_classes; ++cls) {
        for (std::size_t i = 0; i < per_class; ++i) {
            densekit::EmbeddedSample s;
            s.id = id++;
            s.label = cls;
            for (int k = 0; k < dims; ++k)
                s.coords.push_back(noise[cursor++] + separation * cls);
            samples.push_back(std::move(s));
        }
    }
    return densekit::EmbeddingSet::create(dims, std::move(samples));
}

} // namespace fixtures
