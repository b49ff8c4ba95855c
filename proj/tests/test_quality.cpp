#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "densekit/quality.hpp"
#include "oracles.hpp"
#include "reference_data.hpp"

using namespace densekit;

#define CHECK_NEAR(a, b, tol) CHECK(std::fabs((a) - (b)) <= (tol))

namespace {

DensityVector normalized(const std::vector<double>& values) {
    DensityVector d;
    d.method = DensityMethod::mean_normalized;
    for (std::size_t i = 0; i < values.size(); ++i)
        d.values[static_cast<int>(i)] = values[i];
    return d;
}

} // namespace

TEST_CASE("dataset_quality reproduces the reference quality table") {
    for (const auto& study : refdata::kQualityStudies) {
        CAPTURE(study.name);
        const auto score = dataset_quality(normalized(study.normalized_density));
        CHECK_NEAR(score.sigma_d, study.sigma_d, 1e-6);
        CHECK_NEAR(score.range, study.range, 1e-6);
        CHECK_NEAR(score.q, study.quality, 1e-3);
        CHECK(score.candidate == study.candidate);
        CHECK_FALSE(score.degenerate);
        // Cross-check against the test-side population std.
        CHECK_NEAR(score.sigma_d, oracles::population_std(study.normalized_density), 1e-12);
        CHECK_NEAR(score.q * score.sigma_d * score.range, 1.0, 1e-9);
    }
}

TEST_CASE("dataset_quality: two nearly-identical densities") {
    const double eps = 0.01;
    const auto score = dataset_quality(normalized({1.0, 1.0 + eps}));
    // Two-point population std is eps/2, range eps, so q = 2/eps^2.
    CHECK_NEAR(score.q, 2.0 / (eps * eps), 1e-6);
    CHECK(score.candidate);
}

TEST_CASE("dataset_quality: identical densities degenerate to an unbounded score") {
    const auto score = dataset_quality(normalized({1.0, 1.0, 1.0}));
    CHECK(score.degenerate);
    CHECK(score.candidate);
    CHECK(std::isinf(score.q));
    CHECK(score.sigma_d == 0.0);
    CHECK(score.range == 0.0);
}

TEST_CASE("dataset_quality: translation invariance and 1/s^2 scaling") {
    const auto base = oracles::uniform_doubles(9, 12, 0.5, 1.5);
    const auto s0 = dataset_quality(normalized(base));

    std::vector<double> shifted = base, scaled = base;
    for (auto& v : shifted)
        v += 4.25;
    const double s = 2.5;
    for (auto& v : scaled)
        v *= s;
    const auto s1 = dataset_quality(normalized(shifted));
    const auto s2 = dataset_quality(normalized(scaled));
    CHECK_NEAR(s1.q, s0.q, std::fabs(s0.q) * 1e-9);
    CHECK_NEAR(s2.q, s0.q / (s * s), std::fabs(s0.q) * 1e-9);
}

TEST_CASE("dataset_quality: candidate flag is a pure threshold") {
    const auto low = dataset_quality(normalized({0.5, 1.0, 1.5}));
    CHECK(low.q < 10.0);
    CHECK_FALSE(low.candidate);
    const auto high = dataset_quality(normalized({0.99, 1.0, 1.01}), 10.0);
    CHECK(high.q > 10.0);
    CHECK(high.candidate);
    // Same score, stricter threshold.
    const auto strict = dataset_quality(normalized({0.99, 1.0, 1.01}), high.q + 1.0);
    CHECK_FALSE(strict.candidate);
}

TEST_CASE("dataset_quality: preconditions") {
    DensityVector wrong;
    wrong.method = DensityMethod::mean;
    wrong.values = {{0, 1.0}, {1, 2.0}};
    CHECK_THROWS_AS(dataset_quality(wrong), DataError);
    CHECK_THROWS_AS(dataset_quality(normalized({1.0})), DataError);
}
