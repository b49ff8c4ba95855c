#include "densekit/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace densekit {
namespace {

constexpr const char* kModule = "density";

[[noreturn]] void fail(const std::string& message) {
    throw DataError(kModule, message);
}

std::size_t total_count(const std::vector<ClassStats>& stats) {
    std::size_t total = 0;
    for (const auto& s : stats)
        total += s.count;
    return total;
}

// n * c_i / sum_j c_j — the imbalance bias shared by the min/max/mean forms.
double bias_term(const ClassStats& s, std::size_t n, std::size_t total) {
    return static_cast<double>(n) * static_cast<double>(s.count) / static_cast<double>(total);
}

} // namespace

const char* to_string(DensityMethod method) {
    switch (method) {
        case DensityMethod::min: return "min";
        case DensityMethod::max: return "max";
        case DensityMethod::mean: return "mean";
        case DensityMethod::mean_normalized: return "mean-normalized";
    }
    return "unknown";
}

DensityMethod density_method_from_string(const std::string& name) {
    if (name == "min") return DensityMethod::min;
    if (name == "max") return DensityMethod::max;
    if (name == "mean") return DensityMethod::mean;
    if (name == "mean-normalized" || name == "mean_normalized")
        return DensityMethod::mean_normalized;
    fail("unknown density method '" + name + "'");
}

std::vector<ClassStats> class_stats(const EmbeddingSet& set) {
    const int m = set.dims();
    std::vector<ClassStats> stats;
    stats.reserve(static_cast<std::size_t>(set.num_classes()));

    for (int cls = 0; cls < set.num_classes(); ++cls) {
        const auto& rows = set.class_rows(cls);
        if (rows.size() < 2)
            fail("degenerate class " + std::to_string(cls) + " with a single sample");

        ClassStats s;
        s.class_id = cls;
        s.count = rows.size();
        s.centroid.assign(static_cast<std::size_t>(m), 0.0);
        for (std::size_t row : rows) {
            const auto& coords = set.samples()[row].coords;
            for (int k = 0; k < m; ++k)
                s.centroid[static_cast<std::size_t>(k)] += coords[static_cast<std::size_t>(k)];
        }
        for (double& c : s.centroid)
            c /= static_cast<double>(s.count);

        s.sigma.assign(static_cast<std::size_t>(m), 0.0);
        for (std::size_t row : rows) {
            const auto& coords = set.samples()[row].coords;
            for (int k = 0; k < m; ++k) {
                const double d = coords[static_cast<std::size_t>(k)] -
                                 s.centroid[static_cast<std::size_t>(k)];
                s.sigma[static_cast<std::size_t>(k)] += d * d;
            }
        }
        double sigma_sum = 0.0;
        for (double& v : s.sigma) {
            v = std::sqrt(v / static_cast<double>(s.count));
            sigma_sum += v;
        }
        s.mean_sigma = sigma_sum / static_cast<double>(m);
        s.zero_spread = (s.mean_sigma == 0.0);
        stats.push_back(std::move(s));
    }
    return stats;
}

DensityVector density_min(const std::vector<ClassStats>& stats) {
    const std::size_t n = stats.size();
    const std::size_t total = total_count(stats);
    DensityVector out;
    out.method = DensityMethod::min;
    for (const auto& s : stats) {
        const double lo = *std::min_element(s.sigma.begin(), s.sigma.end());
        if (lo <= 0.0)
            fail("zero spread in some dimension of class " + std::to_string(s.class_id));
        out.values[s.class_id] = bias_term(s, n, total) / lo;
    }
    return out;
}

DensityVector density_max(const std::vector<ClassStats>& stats) {
    const std::size_t n = stats.size();
    const std::size_t total = total_count(stats);
    DensityVector out;
    out.method = DensityMethod::max;
    for (const auto& s : stats) {
        const double hi = *std::max_element(s.sigma.begin(), s.sigma.end());
        if (hi <= 0.0)
            fail("zero spread in every dimension of class " + std::to_string(s.class_id));
        out.values[s.class_id] = bias_term(s, n, total) / hi;
    }
    return out;
}

DensityVector density_mean(const std::vector<ClassStats>& stats) {
    const std::size_t n = stats.size();
    const std::size_t total = total_count(stats);
    DensityVector out;
    out.method = DensityMethod::mean;
    for (const auto& s : stats) {
        if (s.mean_sigma <= 0.0)
            fail("zero mean spread in class " + std::to_string(s.class_id));
        out.values[s.class_id] = bias_term(s, n, total) / s.mean_sigma;
    }
    return out;
}

DensityVector density_mean_normalized(const std::vector<ClassStats>& stats) {
    const std::size_t n = stats.size();
    double numerator = 0.0;
    for (const auto& s : stats)
        numerator += s.mean_sigma;
    numerator /= static_cast<double>(n);

    DensityVector out;
    out.method = DensityMethod::mean_normalized;
    for (const auto& s : stats) {
        if (s.mean_sigma <= 0.0)
            fail("zero mean spread in class " + std::to_string(s.class_id));
        out.values[s.class_id] = numerator / s.mean_sigma;
    }
    return out;
}

DensityVector density_by_method(const std::vector<ClassStats>& stats, DensityMethod method) {
    switch (method) {
        case DensityMethod::min: return density_min(stats);
        case DensityMethod::max: return density_max(stats);
        case DensityMethod::mean: return density_mean(stats);
        case DensityMethod::mean_normalized: return density_mean_normalized(stats);
    }
    fail("unknown density method");
}

std::string density_to_csv(const DensityVector& densities) {
    std::ostringstream out;
    out << "class,density\n";
    char buf[48];
    for (const auto& [cls, value] : densities.values) {
        std::snprintf(buf, sizeof(buf), "%.9f", value);
        out << cls << ',' << buf << '\n';
    }
    return out.str();
}

DensityVector parse_density_csv(std::istream& in, DensityMethod method) {
    std::string line;
    if (!std::getline(in, line))
        fail("empty density file");
    if (line == "class,density\r")
        line = "class,density";
    if (line != "class,density")
        fail("malformed header: expected class,density");

    DensityVector out;
    out.method = method;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        std::istringstream row(line);
        std::string cls_field, value_field;
        if (!std::getline(row, cls_field, ',') || !std::getline(row, value_field))
            fail("row arity mismatch on line " + std::to_string(line_no));
        int cls = 0;
        double value = 0.0;
        try {
            cls = std::stoi(cls_field);
            value = std::stod(value_field);
        } catch (const std::exception&) {
            fail("malformed row on line " + std::to_string(line_no));
        }
        if (!(std::isfinite(value) && value > 0.0))
            fail("non-positive density on line " + std::to_string(line_no));
        if (!out.values.emplace(cls, value).second)
            fail("duplicate class row " + std::to_string(cls));
    }
    if (out.values.empty())
        fail("density file has no rows");
    return out;
}

DensityVector parse_density_csv_file(const std::string& path, DensityMethod method) {
    std::ifstream in(path);
    if (!in)
        fail("cannot open " + path);
    return parse_density_csv(in, method);
}

} // namespace densekit
