#include "densekit/embed.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace densekit {
namespace {

constexpr const char* kModule = "embed";

[[noreturn]] void fail(const std::string& message) {
    throw DataError(kModule, message);
}

} // namespace

EmbeddingSet pca_reduce(const RawVectorSet& vectors, const ReducerConfig& cfg) {
    const std::size_t count = vectors.vectors.size();
    if (count < 2)
        fail("need at least 2 vectors");
    if (vectors.labels.size() != count || vectors.ids.size() != count)
        fail("inconsistent raw vector set");
    const std::size_t dim = vectors.dim;
    if (dim == 0)
        fail("zero input dimensionality");
    for (std::size_t i = 0; i < count; ++i)
        if (vectors.vectors[i].size() != dim)
            fail("uniform input dimensionality required");
    if (cfg.target_dims < 1)
        fail("target dimensionality must be >= 1");
    if (static_cast<std::size_t>(cfg.target_dims) > dim)
        fail("target dimensionality " + std::to_string(cfg.target_dims) +
             " exceeds input dimensionality " + std::to_string(dim));

    Eigen::MatrixXd data(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t k = 0; k < dim; ++k)
            data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                vectors.vectors[i][k];

    if (cfg.center) {
        const Eigen::RowVectorXd mean = data.colwise().mean();
        data.rowwise() -= mean;
    }

    // Population second-moment matrix; divisor choice does not affect the
    // directions, only the eigenvalue scale reported as explained variance.
    const Eigen::MatrixXd cov = data.transpose() * data / static_cast<double>(count);
    if (cov.diagonal().maxCoeff() <= 0.0)
        fail("no variance in input");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success)
        fail("eigendecomposition failed");

    // Eigen orders eigenvalues ascending; take the trailing target_dims
    // columns in reverse for descending explained variance.
    const int m = cfg.target_dims;
    Eigen::MatrixXd basis(static_cast<Eigen::Index>(dim), m);
    for (int k = 0; k < m; ++k) {
        Eigen::VectorXd direction =
            solver.eigenvectors().col(static_cast<Eigen::Index>(dim) - 1 - k);
        // Sign convention: the largest-magnitude loading is positive.
        Eigen::Index pivot = 0;
        direction.cwiseAbs().maxCoeff(&pivot);
        if (direction(pivot) < 0.0)
            direction = -direction;
        basis.col(k) = direction;
    }

    const Eigen::MatrixXd projected = data * basis;
    std::vector<EmbeddedSample> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        EmbeddedSample s;
        s.id = vectors.ids[i];
        s.label = vectors.labels[i];
        s.coords.resize(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k)
            s.coords[static_cast<std::size_t>(k)] = projected(static_cast<Eigen::Index>(i), k);
        samples.push_back(std::move(s));
    }
    return EmbeddingSet::create(m, std::move(samples), kModule);
}

EmbeddingSet load_external(EmbeddingSet set) {
    // Construction already validated the invariants; revalidate here so a
    // set assembled by other means is checked at the module boundary.
    std::vector<EmbeddedSample> samples = set.samples();
    return EmbeddingSet::create(set.dims(), std::move(samples), kModule);
}

std::vector<double> coordinate_variances(const EmbeddingSet& set) {
    const int m = set.dims();
    const double n = static_cast<double>(set.size());
    std::vector<double> mean(static_cast<std::size_t>(m), 0.0);
    for (const auto& s : set.samples())
        for (int k = 0; k < m; ++k)
            mean[static_cast<std::size_t>(k)] += s.coords[static_cast<std::size_t>(k)];
    for (double& v : mean)
        v /= n;
    std::vector<double> var(static_cast<std::size_t>(m), 0.0);
    for (const auto& s : set.samples())
        for (int k = 0; k < m; ++k) {
            const double d = s.coords[static_cast<std::size_t>(k)] - mean[static_cast<std::size_t>(k)];
            var[static_cast<std::size_t>(k)] += d * d;
        }
    for (double& v : var)
        v /= n;
    return var;
}

} // namespace densekit
