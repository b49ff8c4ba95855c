#include "densekit/stats.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace densekit {
namespace {

constexpr const char* kModule = "stats";

[[noreturn]] void fail(const std::string& message) {
    throw DataError(kModule, message);
}

// Continued fraction for the incomplete beta function, evaluated with the
// modified Lentz algorithm. Converges quickly for x < (a+1)/(a+b+2).
double incomplete_beta_cf(double x, double a, double b) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-15;   // iterate past the 1e-12 accuracy target
    constexpr int kMaxIter = 500;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny)
        d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny)
            d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny)
            d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps)
            return h;
    }
    fail("incomplete beta continued fraction failed to converge");
}

} // namespace

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0 && b > 0.0))
        fail("incomplete beta requires positive shape parameters");
    if (!(x >= 0.0 && x <= 1.0))
        fail("incomplete beta argument outside [0,1]");
    if (x == 0.0)
        return 0.0;
    if (x == 1.0)
        return 1.0;
    const double log_front = a * std::log(x) + b * std::log1p(-x) -
                             (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    if (x < (a + 1.0) / (a + b + 2.0))
        return std::exp(log_front) * incomplete_beta_cf(x, a, b) / a;
    return 1.0 - std::exp(log_front) * incomplete_beta_cf(1.0 - x, b, a) / b;
}

double student_t_cdf(double x, int dof) {
    if (dof < 1)
        fail("degrees of freedom must be >= 1");
    const double v = static_cast<double>(dof);
    const double tail = regularized_incomplete_beta(v / (x * x + v), 0.5 * v, 0.5) / 2.0;
    return x >= 0.0 ? 1.0 - tail : tail;
}

CorrelationResult pearson_r(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        fail("length mismatch: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
    if (x.size() < 3)
        fail("fewer than 3 pairs");
    const double n = static_cast<double>(x.size());

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= n;
    mean_y /= n;

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        fail("undefined correlation: zero variance");

    CorrelationResult result;
    result.r = sxy / std::sqrt(sxx * syy);
    result.n_pairs = static_cast<int>(x.size());
    return result;
}

SignificanceResult pooled_t_test(const TrialSummary& baseline, const TrialSummary& candidate) {
    if (baseline.n_trials < 2 || candidate.n_trials < 2)
        fail("pooled t-test requires at least 2 trials per summary");

    const double diff = candidate.mean - baseline.mean;
    SignificanceResult result;
    result.dof = baseline.n_trials + candidate.n_trials - 2;
    result.direction = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);

    if (baseline.std_pop == 0.0 && candidate.std_pop == 0.0) {
        result.degenerate = true;
        if (diff == 0.0) {
            result.t_stat = 0.0;
            result.p_one_tailed = std::nullopt;  // no spread, no difference: undefined
        } else {
            result.t_stat = diff > 0.0 ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity();
            result.p_one_tailed = 0.0;
        }
        return result;
    }

    // Population std -> sample sum of squares: (n-1) s^2 = n std_pop^2.
    const double n1 = static_cast<double>(baseline.n_trials);
    const double n2 = static_cast<double>(candidate.n_trials);
    const double pooled_var =
        (n1 * baseline.std_pop * baseline.std_pop + n2 * candidate.std_pop * candidate.std_pop) /
        static_cast<double>(result.dof);
    const double se = std::sqrt(pooled_var * (1.0 / n1 + 1.0 / n2));
    result.t_stat = diff / se;
    result.p_one_tailed = 1.0 - student_t_cdf(std::fabs(result.t_stat), result.dof);
    return result;
}

CorrelationResult density_accuracy_study(const DensityVector& densities,
                                         const AccuracyTable& accuracies) {
    if (densities.values.size() != accuracies.rows.size())
        fail("class-id mismatch: " + std::to_string(densities.values.size()) + " densities vs " +
             std::to_string(accuracies.rows.size()) + " accuracies");
    std::vector<double> d, a;
    d.reserve(densities.values.size());
    a.reserve(densities.values.size());
    for (const auto& [cls, density] : densities.values) {
        auto it = accuracies.rows.find(cls);
        if (it == accuracies.rows.end())
            fail("class-id mismatch: no accuracy for class " + std::to_string(cls));
        d.push_back(density);
        a.push_back(it->second);
    }
    return pearson_r(a, d);
}

} // namespace densekit
