#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "densekit/density.hpp"
#include "densekit/embed.hpp"
#include "densekit/ingest.hpp"
#include "densekit/io.hpp"
#include "densekit/quality.hpp"
#include "densekit/reduction.hpp"
#include "densekit/report.hpp"
#include "densekit/stats.hpp"
#include "densekit/synth.hpp"
#include "densekit/types.hpp"

namespace {

using densekit::DataError;

// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

void emit(const std::optional<std::string>& out_path, const std::string& content) {
    if (out_path)
        densekit::write_file_atomic(*out_path, content);
    else
        std::cout << content;
}

struct EmbedArgs {
    std::string images, labels, embeddings, out;
    int dims = 3;
    bool no_center = false;
};

int run_embed(const EmbedArgs& args) {
    if (args.embeddings.empty() == (args.images.empty() || args.labels.empty())) {
        std::cerr << "embed: supply either --embeddings or both --images and --labels\n";
        return kExitUsage;
    }
    densekit::EmbeddingSet set = [&] {
        if (!args.embeddings.empty())
            return densekit::load_external(densekit::parse_embedding_csv_file(args.embeddings));
        densekit::ReducerConfig cfg;
        cfg.target_dims = args.dims;
        cfg.center = !args.no_center;
        return densekit::pca_reduce(densekit::parse_idx_files(args.images, args.labels), cfg);
    }();
    densekit::write_file_atomic(args.out, densekit::embedding_set_to_csv(set));
    return kExitOk;
}

struct DensityArgs {
    std::string method, embeddings, out;
};

int run_density(const DensityArgs& args) {
    const auto method = densekit::density_method_from_string(args.method);
    const auto set = densekit::parse_embedding_csv_file(args.embeddings);
    const auto densities = densekit::density_by_method(densekit::class_stats(set), method);
    densekit::write_file_atomic(args.out, densekit::density_to_csv(densities));
    return kExitOk;
}

struct QualityArgs {
    std::string embeddings, densities;
    std::optional<std::string> out;
    double threshold = densekit::kDefaultQualityThreshold;
};

int run_quality(const QualityArgs& args) {
    if (args.embeddings.empty() == args.densities.empty()) {
        std::cerr << "quality: supply exactly one of --embeddings or --densities\n";
        return kExitUsage;
    }
    densekit::DensityVector densities;
    if (!args.embeddings.empty()) {
        const auto set = densekit::parse_embedding_csv_file(args.embeddings);
        densities = densekit::density_mean_normalized(densekit::class_stats(set));
    } else {
        densities = densekit::parse_density_csv_file(args.densities,
                                                     densekit::DensityMethod::mean_normalized);
    }
    const auto score = densekit::dataset_quality(densities, args.threshold);
    std::ostringstream out;
    out << "sigma_d,range,quality,candidate\n"
        << fmt("%.9f", score.sigma_d) << ',' << fmt("%.9f", score.range) << ','
        << (score.degenerate ? "inf" : fmt("%.6f", score.q)) << ',' << (score.candidate ? 1 : 0)
        << '\n';
    emit(args.out, out.str());
    return kExitOk;
}

struct ReduceArgs {
    std::string method, embeddings, out;
    std::optional<std::string> out_embeddings;
    double target = 1.0;
    double margin = 0.0005;
    std::optional<int> max_iters;
};

int run_reduce(const ReduceArgs& args) {
    densekit::ReductionRequest req;
    req.method = densekit::density_method_from_string(args.method);
    req.target = args.target;
    req.margin_fraction = args.margin;
    req.max_iterations = args.max_iters;

    const auto set = densekit::parse_embedding_csv_file(args.embeddings);
    const auto manifest = densekit::solve_target_density(set, densekit::class_stats(set), req);

    const std::filesystem::path out_path(args.out);
    if (out_path.extension() == ".json") {
        densekit::write_file_atomic(args.out, densekit::manifest_to_json(manifest));
    } else {
        densekit::write_file_atomic(args.out, densekit::manifest_to_csv(manifest));
        const auto companion =
            out_path.parent_path() /
            (out_path.stem().string() + "_exclusions" + out_path.extension().string());
        densekit::write_file_atomic(companion.string(), densekit::exclusions_to_csv(manifest));
    }
    if (args.out_embeddings) {
        const auto reduced = set.without_ids(manifest.all_excluded_ids());
        densekit::write_file_atomic(*args.out_embeddings, densekit::embedding_set_to_csv(reduced));
    }
    return kExitOk;
}

struct CorrelateArgs {
    std::string densities, accuracies;
    std::optional<std::string> out;
};

int run_correlate(const CorrelateArgs& args) {
    const auto densities =
        densekit::parse_density_csv_file(args.densities, densekit::DensityMethod::mean);
    const auto accuracies = densekit::parse_accuracy_table_file(args.accuracies);
    const auto result = densekit::density_accuracy_study(densities, accuracies);
    std::ostringstream out;
    out << "r,n_pairs\n" << fmt("%.9f", result.r) << ',' << result.n_pairs << '\n';
    emit(args.out, out.str());
    return kExitOk;
}

struct TtestArgs {
    std::string baseline, candidate;
    std::optional<std::string> out;
};

int run_ttest(const TtestArgs& args) {
    const auto baseline = densekit::parse_trial_summary(args.baseline);
    const auto candidate = densekit::parse_trial_summary(args.candidate);
    const auto result = densekit::pooled_t_test(baseline, candidate);
    std::ostringstream out;
    out << "t_stat,dof,p_one_tailed,direction\n"
        << fmt("%.6f", result.t_stat) << ',' << result.dof << ','
        << (result.p_one_tailed ? fmt("%.9f", *result.p_one_tailed) : std::string("N/A")) << ','
        << result.direction << '\n';
    emit(args.out, out.str());
    return kExitOk;
}

struct SynthArgs {
    std::string spec, out_train, out_test;
    std::optional<std::uint64_t> seed;
};

int run_synth(const SynthArgs& args) {
    auto spec = densekit::synth_spec_from_json_file(args.spec);
    if (args.seed)
        spec.seed = *args.seed;
    const auto data = densekit::generate(spec);
    densekit::write_file_atomic(args.out_train, densekit::embedding_set_to_csv(data.train));
    densekit::write_file_atomic(args.out_test, densekit::embedding_set_to_csv(data.test));
    return kExitOk;
}

struct ReportArgs {
    std::vector<std::string> manifests;
    std::string trials, embeddings, format = "markdown";
    std::optional<std::string> out;
};

int run_report(const ReportArgs& args) {
    densekit::ReportInputs inputs;
    for (const auto& path : args.manifests)
        inputs.manifests.push_back(densekit::manifest_from_json_file(path));
    if (!args.trials.empty()) {
        const auto table = densekit::parse_trials_csv_file(args.trials);
        if (!table.baseline)
            throw DataError("report", "trials file has no baseline row");
        inputs.baseline = table.baseline;
        inputs.trials.assign(table.by_target.begin(), table.by_target.end());
    }
    if (!args.embeddings.empty()) {
        const auto set = densekit::parse_embedding_csv_file(args.embeddings);
        inputs.densities = densekit::density_mean_normalized(densekit::class_stats(set));
        inputs.quality = densekit::dataset_quality(*inputs.densities);
    }
    const auto format = args.format == "csv" ? densekit::ReportFormat::csv
                                             : densekit::ReportFormat::markdown;
    emit(args.out, densekit::render_report(inputs, format));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"densekit: class-density measurement, dataset-quality scoring and "
                 "central-exclusion reduction for labeled low-dimensional embeddings"};
    app.require_subcommand(1);

    EmbedArgs embed_args;
    auto* embed = app.add_subcommand("embed", "Reduce raw IDX vectors with PCA, or validate an "
                                              "existing embedding CSV");
    embed->add_option("--images", embed_args.images, "IDX image file");
    embed->add_option("--labels", embed_args.labels, "IDX label file");
    embed->add_option("--embeddings", embed_args.embeddings, "Embedding CSV to validate and rewrite");
    embed->add_option("--dims", embed_args.dims, "Output dimensionality")->capture_default_str();
    embed->add_flag("--no-center", embed_args.no_center, "Project about the origin instead of the mean");
    embed->add_option("--out", embed_args.out, "Output embedding CSV")->required();

    DensityArgs density_args;
    auto* density = app.add_subcommand("density", "Compute per-class densities from an embedding CSV");
    density->add_option("--method", density_args.method, "min, max, mean or mean-normalized")->required();
    density->add_option("--embeddings", density_args.embeddings, "Embedding CSV")->required();
    density->add_option("--out", density_args.out, "Output density CSV")->required();

    QualityArgs quality_args;
    auto* quality = app.add_subcommand("quality", "Score dataset quality from mean-normalized densities");
    quality->add_option("--embeddings", quality_args.embeddings, "Embedding CSV");
    quality->add_option("--densities", quality_args.densities, "Mean-normalized density CSV");
    quality->add_option("--threshold", quality_args.threshold, "Reduction-candidate threshold")
        ->capture_default_str();
    quality->add_option("--out", quality_args.out, "Output CSV (stdout when omitted)");

    ReduceArgs reduce_args;
    auto* reduce = app.add_subcommand("reduce", "Solve central-exclusion reductions to a target density");
    reduce->add_option("--method", reduce_args.method, "mean or mean-normalized")->required();
    reduce->add_option("--target", reduce_args.target, "Target density")->required();
    reduce->add_option("--margin", reduce_args.margin, "Stop margin as a fraction of class size")
        ->capture_default_str();
    reduce->add_option("--max-iters", reduce_args.max_iters,
                       "Cap on bisection probes per class (default: run until the margin)");
    reduce->add_option("--embeddings", reduce_args.embeddings, "Embedding CSV")->required();
    reduce->add_option("--out", reduce_args.out,
                       "Manifest output; .json writes one document, otherwise CSV plus a "
                       "*_exclusions companion")
        ->required();
    reduce->add_option("--out-embeddings", reduce_args.out_embeddings,
                       "Also write the surviving samples as an embedding CSV");

    CorrelateArgs correlate_args;
    auto* correlate = app.add_subcommand("correlate", "Pearson correlation of class densities "
                                                      "against class accuracies");
    correlate->add_option("--densities", correlate_args.densities, "Density CSV")->required();
    correlate->add_option("--accuracies", correlate_args.accuracies, "Accuracy CSV")->required();
    correlate->add_option("--out", correlate_args.out, "Output CSV (stdout when omitted)");

    TtestArgs ttest_args;
    auto* ttest = app.add_subcommand("ttest", "Pooled one-tailed t-test from trial summaries");
    ttest->add_option("--baseline", ttest_args.baseline, "Baseline summary as mean,std,n")->required();
    ttest->add_option("--candidate", ttest_args.candidate, "Candidate summary as mean,std,n")->required();
    ttest->add_option("--out", ttest_args.out, "Output CSV (stdout when omitted)");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a seeded Gaussian-mixture train/test pair");
    synth->add_option("--spec", synth_args.spec, "Mixture spec JSON")->required();
    synth->add_option("--seed", synth_args.seed, "Seed override");
    synth->add_option("--out-train", synth_args.out_train, "Training embedding CSV")->required();
    synth->add_option("--out-test", synth_args.out_test, "Test embedding CSV")->required();

    ReportArgs report_args;
    auto* report = app.add_subcommand("report", "Render a reduction run as markdown or CSV");
    report->add_option("--manifest", report_args.manifests, "Manifest JSON (repeatable)")
        ->required()
        ->take_all();
    report->add_option("--trials", report_args.trials, "Trial summary CSV with a baseline row");
    report->add_option("--embeddings", report_args.embeddings,
                       "Embedding CSV for the quality and density sections");
    report->add_option("--format", report_args.format, "markdown or csv")
        ->check(CLI::IsMember({"markdown", "csv"}))
        ->capture_default_str();
    report->add_option("--out", report_args.out, "Output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (embed->parsed())
            return run_embed(embed_args);
        if (density->parsed())
            return run_density(density_args);
        if (quality->parsed())
            return run_quality(quality_args);
        if (reduce->parsed())
            return run_reduce(reduce_args);
        if (correlate->parsed())
            return run_correlate(correlate_args);
        if (ttest->parsed())
            return run_ttest(ttest_args);
        if (synth->parsed())
            return run_synth(synth_args);
        if (report->parsed())
            return run_report(report_args);
        std::cerr << "no subcommand selected\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
