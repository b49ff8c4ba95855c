#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace densekit {

// Error for malformed or contract-violating data. The originating module's
// name is prefixed onto the message so CLI diagnostics identify the stage
// that rejected the input ("ingest: fewer than 2 classes").
class DataError : public std::runtime_error {
public:
    DataError(std::string module, const std::string& message)
        : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

struct EmbeddedSample {
    std::int64_t id = 0;
    int label = 0;
    std::vector<double> coords;
};

// Labeled points in m-dimensional reduced space. Class labels are compact:
// the n observed classes are exactly 0..n-1, each with at least one member,
// and sample ids are unique.
class EmbeddingSet {
public:
    // Validates all invariants; throws DataError tagged with `module`.
    static EmbeddingSet create(int dims, std::vector<EmbeddedSample> samples,
                               const std::string& module = "ingest");

    int dims() const noexcept { return dims_; }
    int num_classes() const noexcept { return num_classes_; }
    std::size_t size() const noexcept { return samples_.size(); }
    const std::vector<EmbeddedSample>& samples() const noexcept { return samples_; }

    // Row indices (positions in samples()) of one class, in input order.
    const std::vector<std::size_t>& class_rows(int class_id) const;
    std::vector<std::int64_t> class_member_ids(int class_id) const;

    // Copy with every sample whose id is listed removed. Unknown ids are an
    // error; the survivors must still form a valid set.
    EmbeddingSet without_ids(const std::vector<std::int64_t>& excluded,
                             const std::string& module = "reduction") const;

private:
    EmbeddingSet() = default;

    int dims_ = 0;
    int num_classes_ = 0;
    std::vector<EmbeddedSample> samples_;
    std::vector<std::vector<std::size_t>> class_rows_;
};

// Flattened raw vectors (e.g. decoded IDX images); values scaled to [0,1].
struct RawVectorSet {
    std::vector<std::int64_t> ids;
    std::vector<int> labels;
    std::vector<std::vector<double>> vectors;
    std::size_t dim = 0;
};

// Per-class accuracy in [0,1], keyed by class id.
struct AccuracyTable {
    std::map<int, double> rows;
};

// Mean/spread/count summary of repeated accuracy trials. std_pop is the
// population standard deviation (divisor n); zero is legal.
struct TrialSummary {
    double mean = 0.0;
    double std_pop = 0.0;
    int n_trials = 0;
};

} // namespace densekit
