#include "densekit/synth.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace densekit {
namespace {

constexpr const char* kModule = "synth";

[[noreturn]] void fail(const std::string& message) {
    throw DataError(kModule, message);
}

// Standard normal draws from mt19937_64 via Box-Muller. std::normal_distribution
// is not specified bit-for-bit across standard libraries; this transform is,
// which keeps seeded fixtures portable.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

    double next() {
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;          // [0, 1)
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace

GeneratedData generate(const SynthSpec& spec) {
    if (spec.dims < 1)
        fail("degenerate spec: dims must be >= 1");
    if (spec.classes.size() < 2)
        fail("degenerate spec: need >= 2 classes");
    for (std::size_t c = 0; c < spec.classes.size(); ++c) {
        const auto& cls = spec.classes[c];
        if (cls.count < 4)
            fail("degenerate spec: class " + std::to_string(c) + " has fewer than 4 samples");
        if (cls.sigma.size() != static_cast<std::size_t>(spec.dims) ||
            cls.centroid.size() != static_cast<std::size_t>(spec.dims))
            fail("degenerate spec: class " + std::to_string(c) + " sigma/centroid arity mismatch");
        for (double s : cls.sigma)
            if (!(s >= 0.0) || !std::isfinite(s))
                fail("degenerate spec: negative or non-finite sigma");
        for (double v : cls.centroid)
            if (!std::isfinite(v))
                fail("degenerate spec: non-finite centroid");
    }

    NormalSource normals(spec.seed);
    std::vector<EmbeddedSample> train, test;
    std::int64_t next_id = 0;
    for (std::size_t c = 0; c < spec.classes.size(); ++c) {
        const auto& cls = spec.classes[c];
        const std::size_t n_train = cls.count * 4 / 5;  // 80/20 split
        for (std::size_t i = 0; i < cls.count; ++i) {
            EmbeddedSample s;
            s.id = next_id++;
            s.label = static_cast<int>(c);
            s.coords.resize(static_cast<std::size_t>(spec.dims));
            for (int k = 0; k < spec.dims; ++k)
                s.coords[static_cast<std::size_t>(k)] =
                    cls.centroid[static_cast<std::size_t>(k)] +
                    cls.sigma[static_cast<std::size_t>(k)] * normals.next();
            (i < n_train ? train : test).push_back(std::move(s));
        }
    }

    GeneratedData data{EmbeddingSet::create(spec.dims, std::move(train), kModule),
                       EmbeddingSet::create(spec.dims, std::move(test), kModule)};
    return data;
}

ClassifierResult nearest_centroid_accuracy(const EmbeddingSet& train, const EmbeddingSet& test) {
    if (train.dims() != test.dims())
        fail("train/test dimensionality mismatch");
    if (train.num_classes() != test.num_classes())
        fail("train/test class set mismatch");

    const int m = train.dims();
    const int n = train.num_classes();
    std::vector<std::vector<double>> centroids(static_cast<std::size_t>(n));
    for (int cls = 0; cls < n; ++cls) {
        auto& centroid = centroids[static_cast<std::size_t>(cls)];
        centroid.assign(static_cast<std::size_t>(m), 0.0);
        const auto& rows = train.class_rows(cls);
        for (std::size_t row : rows) {
            const auto& coords = train.samples()[row].coords;
            for (int k = 0; k < m; ++k)
                centroid[static_cast<std::size_t>(k)] += coords[static_cast<std::size_t>(k)];
        }
        for (double& v : centroid)
            v /= static_cast<double>(rows.size());
    }

    std::vector<std::size_t> correct(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> seen(static_cast<std::size_t>(n), 0);
    for (const auto& sample : test.samples()) {
        int best = 0;
        double best_sq = std::numeric_limits<double>::infinity();
        for (int cls = 0; cls < n; ++cls) {
            double sq = 0.0;
            for (int k = 0; k < m; ++k) {
                const double d = sample.coords[static_cast<std::size_t>(k)] -
                                 centroids[static_cast<std::size_t>(cls)][static_cast<std::size_t>(k)];
                sq += d * d;
            }
            if (sq < best_sq) {  // strict: ties stay with the lower class id
                best_sq = sq;
                best = cls;
            }
        }
        ++seen[static_cast<std::size_t>(sample.label)];
        if (best == sample.label)
            ++correct[static_cast<std::size_t>(sample.label)];
    }

    ClassifierResult result;
    std::size_t total_correct = 0;
    for (int cls = 0; cls < n; ++cls) {
        total_correct += correct[static_cast<std::size_t>(cls)];
        result.per_class.rows[cls] = static_cast<double>(correct[static_cast<std::size_t>(cls)]) /
                                     static_cast<double>(seen[static_cast<std::size_t>(cls)]);
    }
    result.accuracy = static_cast<double>(total_correct) / static_cast<double>(test.size());
    return result;
}

SynthSpec synth_spec_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("malformed spec JSON: ") + e.what());
    }
    try {
        SynthSpec spec;
        spec.dims = doc.at("dims").get<int>();
        spec.seed = doc.value("seed", std::uint64_t{0});
        for (const auto& c : doc.at("classes")) {
            ClassSpec cls;
            cls.count = c.at("count").get<std::size_t>();
            cls.sigma = c.at("sigma").get<std::vector<double>>();
            cls.centroid = c.at("centroid").get<std::vector<double>>();
            spec.classes.push_back(std::move(cls));
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("spec JSON missing fields: ") + e.what());
    }
}

SynthSpec synth_spec_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return synth_spec_from_json(buf.str());
}

} // namespace densekit
