#include "densekit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "densekit/stats.hpp"

namespace densekit {
namespace {

constexpr const char* kModule = "report";

[[noreturn]] void fail(const std::string& message) {
    throw DataError(kModule, message);
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string included_percent(double fraction) {
    return fmt("%.1f", fraction * 100.0) + "%";
}

std::string accuracy_percent(double accuracy) {
    return fmt("%.3f", accuracy * 100.0) + "%";
}

std::string p_value_text(const SignificanceResult& sig) {
    if (!sig.p_one_tailed)
        return "N/A";
    return fmt("%.9f", *sig.p_one_tailed);
}

std::string target_text(double target) {
    std::string text = fmt("%g", target);
    if (text.find('.') == std::string::npos && text.find('e') == std::string::npos)
        text += ".0";
    return text;
}

struct Row {
    std::string target;
    std::string included;
    std::string accuracy;
    std::string stddev;
    std::string p_value;
};

std::vector<Row> build_rows(const ReportInputs& inputs, bool with_trials) {
    std::vector<Row> rows;
    if (with_trials) {
        Row base;
        base.target = "N/A";
        base.included = "100.0%";
        base.accuracy = accuracy_percent(inputs.baseline->mean);
        base.stddev = fmt("%.9f", inputs.baseline->std_pop);
        base.p_value = "---";
        rows.push_back(std::move(base));
    }
    for (const auto& manifest : inputs.manifests) {
        Row row;
        row.target = target_text(manifest.target);
        row.included = included_percent(manifest.total_included_fraction);
        if (with_trials) {
            auto it = std::find_if(inputs.trials.begin(), inputs.trials.end(),
                                   [&](const auto& t) { return t.first == manifest.target; });
            if (it == inputs.trials.end())
                fail("no trial summary for target " + row.target);
            row.accuracy = accuracy_percent(it->second.mean);
            row.stddev = fmt("%.9f", it->second.std_pop);
            row.p_value = p_value_text(pooled_t_test(*inputs.baseline, it->second));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string render_report(const ReportInputs& inputs, ReportFormat format) {
    if (inputs.manifests.empty())
        fail("no manifests supplied");
    const int n_classes = static_cast<int>(inputs.manifests.front().classes.size());
    for (const auto& manifest : inputs.manifests) {
        if (static_cast<int>(manifest.classes.size()) != n_classes)
            fail("inconsistent class sets across manifests");
        if (manifest.method != inputs.manifests.front().method)
            fail("inconsistent density methods across manifests");
    }
    if (inputs.densities && static_cast<int>(inputs.densities->values.size()) != n_classes)
        fail("inconsistent class sets between manifests and densities");
    const bool with_trials = inputs.baseline.has_value();
    if (!inputs.trials.empty() && !with_trials)
        fail("trial summaries supplied without a baseline");

    std::vector<ReductionManifest> ordered = inputs.manifests;
    std::sort(ordered.begin(), ordered.end(),
              [](const ReductionManifest& a, const ReductionManifest& b) { return a.target > b.target; });
    ReportInputs sorted = inputs;
    sorted.manifests = std::move(ordered);
    const auto rows = build_rows(sorted, with_trials);

    std::ostringstream out;
    if (format == ReportFormat::csv) {
        out << "target_density,samples_included";
        if (with_trials)
            out << ",accuracy,std_dev,p_value";
        out << '\n';
        for (const auto& row : rows) {
            out << row.target << ',' << row.included;
            if (with_trials)
                out << ',' << row.accuracy << ',' << row.stddev << ',' << row.p_value;
            out << '\n';
        }
        return out.str();
    }

    out << "# Reduction Report\n\n";
    out << "Method: " << to_string(sorted.manifests.front().method) << "\n\n";
    if (inputs.quality) {
        out << "Dataset quality: sigma_d=" << fmt("%.9f", inputs.quality->sigma_d)
            << " range=" << fmt("%.9f", inputs.quality->range);
        if (inputs.quality->degenerate)
            out << " quality=unbounded";
        else
            out << " quality=" << fmt("%.6f", inputs.quality->q);
        out << " candidate=" << (inputs.quality->candidate ? "yes" : "no") << "\n\n";
    }
    out << "## Accuracies at Target Densities\n\n";
    if (with_trials) {
        out << "| Target Density | # Samples Included | Accuracy | Std. Dev. | p-value |\n";
        out << "| --- | --- | --- | --- | --- |\n";
        for (const auto& row : rows)
            out << "| " << row.target << " | " << row.included << " | " << row.accuracy << " | "
                << row.stddev << " | " << row.p_value << " |\n";
    } else {
        out << "| Target Density | # Samples Included |\n";
        out << "| --- | --- |\n";
        for (const auto& row : rows)
            out << "| " << row.target << " | " << row.included << " |\n";
    }
    if (inputs.densities) {
        out << "\n## Class Densities (" << to_string(inputs.densities->method) << ")\n\n";
        out << "| Class | Density |\n| --- | --- |\n";
        for (const auto& [cls, value] : inputs.densities->values)
            out << "| " << cls << " | " << fmt("%.9f", value) << " |\n";
    }
    return out.str();
}

} // namespace densekit
