#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "densekit/types.hpp"

namespace densekit {

// Embedding CSV: UTF-8, '\n' line ends, header `id,label,d0,...,d{m-1}`.
// Dimensionality is inferred from the header; ids are caller-supplied so
// exclusion manifests survive re-ordering.
EmbeddingSet parse_embedding_csv(std::istream& in);
EmbeddingSet parse_embedding_csv_file(const std::string& path);
std::string embedding_set_to_csv(const EmbeddingSet& set);

// IDX (MNIST distribution layout): big-endian, magic 0x00000803 for image
// files, 0x00000801 for label files. Pixel bytes are scaled to [0,1]; ids
// are positional. Image and label counts must agree.
RawVectorSet parse_idx(std::istream& images, std::istream& labels);
RawVectorSet parse_idx_files(const std::string& image_path, const std::string& label_path);

// Inverse of parse_idx: values are quantized back to bytes via round(v*255).
// Streams produced here re-parse to bit-identical vectors.
void write_idx(const RawVectorSet& set, std::ostream& images, std::ostream& labels);

// Accuracy CSV: header `class,accuracy`; accuracy is a fraction or, with a
// '%' suffix, a percentage. Exactly one row per class, values in [0,1].
AccuracyTable parse_accuracy_table(std::istream& in);
AccuracyTable parse_accuracy_table_file(const std::string& path);

// Trial-summary CSV: header `target,mean,std_pop,n_trials`; the row whose
// target column is the word `baseline` supplies the baseline summary.
struct TrialTable {
    std::optional<TrialSummary> baseline;
    std::map<double, TrialSummary> by_target;
};
TrialTable parse_trials_csv(std::istream& in);
TrialTable parse_trials_csv_file(const std::string& path);

// Parses "mean,std,n" as used by `ttest --baseline`/`--candidate`.
TrialSummary parse_trial_summary(const std::string& text);

} // namespace densekit
