#include "densekit/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "densekit/parallel.hpp"

namespace densekit {
namespace {

constexpr const char* kModule = "reduction";

[[noreturn]] void fail(const std::string& message) {
    throw DataError(kModule, message);
}

// Mean over dimensions of the per-dimension population standard deviation of
// the rows in [first, rows.size()).
double survivor_mean_sigma(const EmbeddingSet& set, const std::vector<std::size_t>& rows,
                           std::size_t first) {
    const int m = set.dims();
    const double n = static_cast<double>(rows.size() - first);
    std::vector<double> mean(static_cast<std::size_t>(m), 0.0);
    for (std::size_t i = first; i < rows.size(); ++i) {
        const auto& coords = set.samples()[rows[i]].coords;
        for (int k = 0; k < m; ++k)
            mean[static_cast<std::size_t>(k)] += coords[static_cast<std::size_t>(k)];
    }
    for (double& v : mean)
        v /= n;
    std::vector<double> var(static_cast<std::size_t>(m), 0.0);
    for (std::size_t i = first; i < rows.size(); ++i) {
        const auto& coords = set.samples()[rows[i]].coords;
        for (int k = 0; k < m; ++k) {
            const double d = coords[static_cast<std::size_t>(k)] - mean[static_cast<std::size_t>(k)];
            var[static_cast<std::size_t>(k)] += d * d;
        }
    }
    double sigma_sum = 0.0;
    for (double v : var)
        sigma_sum += std::sqrt(v / n);
    return sigma_sum / static_cast<double>(m);
}

std::string format_double(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

} // namespace

std::vector<std::vector<DistanceEntry>> centroid_distances(const EmbeddingSet& set,
                                                           const std::vector<ClassStats>& stats) {
    if (static_cast<int>(stats.size()) != set.num_classes())
        fail("stats do not correspond to the embedding set");
    const int m = set.dims();
    std::vector<std::vector<DistanceEntry>> out(stats.size());
    for (const auto& s : stats) {
        if (static_cast<int>(s.centroid.size()) != m)
            fail("stats do not correspond to the embedding set");
        auto& entries = out[static_cast<std::size_t>(s.class_id)];
        for (std::size_t row : set.class_rows(s.class_id)) {
            const auto& sample = set.samples()[row];
            double sq = 0.0;
            for (int k = 0; k < m; ++k) {
                const double d = sample.coords[static_cast<std::size_t>(k)] -
                                 s.centroid[static_cast<std::size_t>(k)];
                sq += d * d;
            }
            entries.push_back({sample.id, std::sqrt(sq)});
        }
        std::sort(entries.begin(), entries.end(), [](const DistanceEntry& a, const DistanceEntry& b) {
            if (a.distance != b.distance)
                return a.distance < b.distance;
            return a.id < b.id;
        });
    }
    return out;
}

std::vector<std::int64_t> central_exclusion(const EmbeddingSet& set,
                                            const std::vector<ClassStats>& stats, int class_id,
                                            std::size_t k) {
    if (class_id < 0 || class_id >= set.num_classes())
        fail("unknown class id " + std::to_string(class_id));
    const auto distances = centroid_distances(set, stats);
    const auto& order = distances[static_cast<std::size_t>(class_id)];
    if (order.size() < 2 || k > order.size() - 2)
        fail("exclusion count " + std::to_string(k) + " too large for class of " +
             std::to_string(order.size()));
    std::vector<std::int64_t> survivors;
    survivors.reserve(order.size() - k);
    for (std::size_t i = k; i < order.size(); ++i)
        survivors.push_back(order[i].id);
    return survivors;
}

ReductionManifest solve_target_density(const EmbeddingSet& set,
                                       const std::vector<ClassStats>& stats,
                                       const ReductionRequest& req) {
    if (req.method != DensityMethod::mean && req.method != DensityMethod::mean_normalized)
        fail("reduction solves mean or mean-normalized densities only");
    if (!(req.target > 0.0))
        fail("target must be positive");
    if (!(req.margin_fraction > 0.0 && req.margin_fraction <= 0.01))
        fail("margin fraction outside (0, 0.01]");
    if (req.max_iterations && *req.max_iterations < 1)
        fail("max iterations must be positive");

    const DensityVector initial = density_by_method(stats, req.method);
    const auto distance_order = centroid_distances(set, stats);

    std::size_t total = 0;
    double sigma_numerator = 0.0;  // (1/n) sum_j mean_sigma_j, frozen pre-reduction
    for (const auto& s : stats) {
        total += s.count;
        sigma_numerator += s.mean_sigma;
    }
    sigma_numerator /= static_cast<double>(stats.size());
    const double n_classes = static_cast<double>(stats.size());

    ReductionManifest manifest;
    manifest.method = req.method;
    manifest.target = req.target;
    manifest.margin_fraction = req.margin_fraction;
    manifest.max_iterations = req.max_iterations;
    manifest.classes.resize(stats.size());

    // Per-class solves touch only frozen cross-class statistics, so they are
    // independent; results land in id-indexed slots to keep assembly order
    // deterministic.
    parallel_for(stats.size(), [&](std::size_t idx) {
        const ClassStats& cls = stats[idx];
        const auto& order = distance_order[static_cast<std::size_t>(cls.class_id)];
        ClassReduction result;
        result.class_id = cls.class_id;
        result.initial_density = initial.values.at(cls.class_id);
        result.target = req.target;

        if (result.initial_density <= req.target) {
            manifest.classes[idx] = std::move(result);
            return;
        }

        // Density of this class after removing its k most-central samples,
        // with every other class untouched. The mean method re-evaluates the
        // bias term with the shrunken counts; the normalized method keeps the
        // pre-reduction numerator.
        std::vector<std::size_t> rows_by_distance;
        rows_by_distance.reserve(order.size());
        {
            // order holds ids; map back to rows once for the probe loop.
            std::map<std::int64_t, std::size_t> row_of;
            for (std::size_t row : set.class_rows(cls.class_id))
                row_of[set.samples()[row].id] = row;
            for (const auto& entry : order)
                rows_by_distance.push_back(row_of.at(entry.id));
        }
        int probes = 0;
        auto probe = [&](std::size_t k) {
            ++probes;
            const double ms = survivor_mean_sigma(set, rows_by_distance, k);
            if (req.method == DensityMethod::mean)
                return n_classes * static_cast<double>(cls.count - k) /
                       static_cast<double>(total - k) / ms;
            return sigma_numerator / ms;
        };

        const std::size_t k_max = cls.count - 2;
        const std::size_t margin = std::max<std::size_t>(
            1, static_cast<std::size_t>(req.margin_fraction * static_cast<double>(cls.count)));

        // Bisection on the predicate probe(k) <= target. lo is always a known
        // failing count; hi becomes the smallest known succeeding count once
        // any probe succeeds. The k_max endpoint is consulted only if no
        // interior probe succeeds: with two survivors its spread is too
        // erratic to trust as the first feasibility witness.
        std::size_t lo = 0, hi = k_max;
        bool found_feasible = false;
        int bisection_probes = 0;
        while (hi - lo > margin && (!req.max_iterations || bisection_probes < *req.max_iterations)) {
            const std::size_t mid = lo + (hi - lo) / 2;
            ++bisection_probes;
            if (probe(mid) <= req.target) {
                hi = mid;
                found_feasible = true;
            } else {
                lo = mid;
            }
        }

        std::size_t chosen;
        if (found_feasible) {
            chosen = hi;
        } else if (probe(k_max) <= req.target) {
            chosen = k_max;  // reachable only at maximal exclusion
        } else {
            result.saturated = true;
            chosen = k_max;
        }

        result.iterations_used = probes;
        result.threshold_distance = order[chosen].distance;
        result.excluded_ids.reserve(chosen);
        for (std::size_t i = 0; i < chosen; ++i)
            result.excluded_ids.push_back(order[i].id);
        manifest.classes[idx] = std::move(result);
    });

    std::sort(manifest.classes.begin(), manifest.classes.end(),
              [](const ClassReduction& a, const ClassReduction& b) { return a.class_id < b.class_id; });

    // Achieved densities describe the actual end state: re-apply every
    // exclusion and recompute, so manifests stay consistent under replay.
    const auto excluded = manifest.all_excluded_ids();
    if (excluded.empty()) {
        for (auto& cls : manifest.classes)
            cls.achieved_density = cls.initial_density;
    } else {
        const EmbeddingSet reduced = set.without_ids(excluded, kModule);
        const DensityVector achieved = density_by_method(class_stats(reduced), req.method);
        for (auto& cls : manifest.classes)
            cls.achieved_density = achieved.values.at(cls.class_id);
        manifest.total_included_fraction =
            static_cast<double>(reduced.size()) / static_cast<double>(set.size());
    }
    return manifest;
}

std::vector<std::int64_t> ReductionManifest::all_excluded_ids() const {
    std::vector<std::int64_t> ids;
    for (const auto& cls : classes)
        ids.insert(ids.end(), cls.excluded_ids.begin(), cls.excluded_ids.end());
    return ids;
}

std::string manifest_to_csv(const ReductionManifest& manifest) {
    std::ostringstream out;
    out << "class,initial_density,target,achieved_density,threshold_distance,iterations,saturated\n";
    for (const auto& cls : manifest.classes) {
        out << cls.class_id << ',' << format_double(cls.initial_density, 9) << ','
            << format_double(cls.target, 9) << ',' << format_double(cls.achieved_density, 9) << ','
            << format_double(cls.threshold_distance, 9) << ',' << cls.iterations_used << ','
            << (cls.saturated ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string exclusions_to_csv(const ReductionManifest& manifest) {
    std::ostringstream out;
    out << "class,excluded_id\n";
    for (const auto& cls : manifest.classes)
        for (std::int64_t id : cls.excluded_ids)
            out << cls.class_id << ',' << id << '\n';
    return out.str();
}

std::string manifest_to_json(const ReductionManifest& manifest) {
    nlohmann::ordered_json doc;
    doc["method"] = to_string(manifest.method);
    doc["target"] = manifest.target;
    doc["margin_fraction"] = manifest.margin_fraction;
    if (manifest.max_iterations)
        doc["max_iterations"] = *manifest.max_iterations;
    else
        doc["max_iterations"] = nullptr;
    doc["total_included_fraction"] = manifest.total_included_fraction;
    doc["classes"] = nlohmann::ordered_json::array();
    for (const auto& cls : manifest.classes) {
        nlohmann::ordered_json c;
        c["class"] = cls.class_id;
        c["initial_density"] = cls.initial_density;
        c["target"] = cls.target;
        c["achieved_density"] = cls.achieved_density;
        c["threshold_distance"] = cls.threshold_distance;
        c["iterations"] = cls.iterations_used;
        c["saturated"] = cls.saturated;
        c["excluded_ids"] = cls.excluded_ids;
        doc["classes"].push_back(std::move(c));
    }
    return doc.dump(2) + "\n";
}

ReductionManifest manifest_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("malformed manifest JSON: ") + e.what());
    }
    try {
        ReductionManifest manifest;
        manifest.method = density_method_from_string(doc.at("method").get<std::string>());
        manifest.target = doc.at("target").get<double>();
        manifest.margin_fraction = doc.at("margin_fraction").get<double>();
        if (!doc.at("max_iterations").is_null())
            manifest.max_iterations = doc.at("max_iterations").get<int>();
        manifest.total_included_fraction = doc.at("total_included_fraction").get<double>();
        for (const auto& c : doc.at("classes")) {
            ClassReduction cls;
            cls.class_id = c.at("class").get<int>();
            cls.initial_density = c.at("initial_density").get<double>();
            cls.target = c.at("target").get<double>();
            cls.achieved_density = c.at("achieved_density").get<double>();
            cls.threshold_distance = c.at("threshold_distance").get<double>();
            cls.iterations_used = c.at("iterations").get<int>();
            cls.saturated = c.at("saturated").get<bool>();
            cls.excluded_ids = c.at("excluded_ids").get<std::vector<std::int64_t>>();
            manifest.classes.push_back(std::move(cls));
        }
        return manifest;
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("manifest JSON missing fields: ") + e.what());
    }
}

ReductionManifest manifest_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return manifest_from_json(buf.str());
}

} // namespace densekit
