#pragma once

#include <optional>
#include <string>
#include <vector>

#include "densekit/quality.hpp"
#include "densekit/reduction.hpp"
#include "densekit/types.hpp"

namespace densekit {

enum class ReportFormat { markdown, csv };

// Everything a run report can draw on. Manifests are required (one row per
// target); trial summaries add accuracy/spread/p-value columns; quality and
// densities add their own sections.
struct ReportInputs {
    std::vector<ReductionManifest> manifests;
    std::optional<TrialSummary> baseline;
    std::vector<std::pair<double, TrialSummary>> trials;  // keyed by target
    std::optional<QualityScore> quality;
    std::optional<DensityVector> densities;
};

// Renders the reduction summary in the familiar layout: target density,
// included fraction (one decimal), accuracy (three decimals), population
// std. dev. and the one-tailed p-value against the baseline.
std::string render_report(const ReportInputs& inputs, ReportFormat format);

} // namespace densekit
