#include "densekit/types.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace densekit {

EmbeddingSet EmbeddingSet::create(int dims, std::vector<EmbeddedSample> samples,
                                  const std::string& module) {
    if (dims < 1)
        throw DataError(module, "dimensionality must be >= 1");
    if (samples.empty())
        throw DataError(module, "empty sample set");

    std::unordered_set<std::int64_t> seen_ids;
    seen_ids.reserve(samples.size());
    int max_label = -1;
    for (const auto& s : samples) {
        if (s.id < 0)
            throw DataError(module, "negative sample id " + std::to_string(s.id));
        if (!seen_ids.insert(s.id).second)
            throw DataError(module, "duplicate sample id " + std::to_string(s.id));
        if (s.label < 0)
            throw DataError(module, "negative class label");
        if (static_cast<int>(s.coords.size()) != dims)
            throw DataError(module, "sample " + std::to_string(s.id) + " has " +
                                        std::to_string(s.coords.size()) + " coordinates, expected " +
                                        std::to_string(dims));
        for (double c : s.coords)
            if (!std::isfinite(c))
                throw DataError(module, "non-finite coordinate in sample " + std::to_string(s.id));
        max_label = std::max(max_label, s.label);
    }

    const int n = max_label + 1;
    std::vector<std::vector<std::size_t>> rows(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < samples.size(); ++i)
        rows[static_cast<std::size_t>(samples[i].label)].push_back(i);

    // Labels must be the compact range 0..n-1 so class-keyed tables and
    // manifests line up without a relabeling step.
    for (int c = 0; c < n; ++c)
        if (rows[static_cast<std::size_t>(c)].empty())
            throw DataError(module, "non-contiguous class labels: class " + std::to_string(c) +
                                        " has no samples");
    if (n < 2)
        throw DataError(module, "fewer than 2 classes");

    EmbeddingSet set;
    set.dims_ = dims;
    set.num_classes_ = n;
    set.samples_ = std::move(samples);
    set.class_rows_ = std::move(rows);
    return set;
}

const std::vector<std::size_t>& EmbeddingSet::class_rows(int class_id) const {
    if (class_id < 0 || class_id >= num_classes_)
        throw DataError("ingest", "unknown class id " + std::to_string(class_id));
    return class_rows_[static_cast<std::size_t>(class_id)];
}

std::vector<std::int64_t> EmbeddingSet::class_member_ids(int class_id) const {
    std::vector<std::int64_t> ids;
    for (std::size_t row : class_rows(class_id))
        ids.push_back(samples_[row].id);
    return ids;
}

EmbeddingSet EmbeddingSet::without_ids(const std::vector<std::int64_t>& excluded,
                                       const std::string& module) const {
    std::unordered_set<std::int64_t> drop(excluded.begin(), excluded.end());
    std::vector<EmbeddedSample> kept;
    kept.reserve(samples_.size());
    for (const auto& s : samples_) {
        auto it = drop.find(s.id);
        if (it == drop.end())
            kept.push_back(s);
        else
            drop.erase(it);
    }
    if (!drop.empty())
        throw DataError(module, "excluded id " + std::to_string(*drop.begin()) +
                                    " not present in the set");
    return create(dims_, std::move(kept), module);
}

} // namespace densekit
