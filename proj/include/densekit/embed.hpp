#pragma once

#include "densekit/types.hpp"

namespace densekit {

struct ReducerConfig {
    int target_dims = 3;
    bool center = true;
};

// Projects raw vectors onto their top-m principal directions, ordered by
// descending explained variance. Deterministic given a fixed input order:
// each direction is oriented so its largest-magnitude loading is positive.
EmbeddingSet pca_reduce(const RawVectorSet& vectors, const ReducerConfig& cfg);

// Pass-through for embeddings produced elsewhere; surfaces invariant
// violations eagerly and returns the set unchanged.
EmbeddingSet load_external(EmbeddingSet set);

// Per-dimension population variance of the output coordinates, in output
// order (non-increasing for PCA results).
std::vector<double> coordinate_variances(const EmbeddingSet& set);

} // namespace densekit
