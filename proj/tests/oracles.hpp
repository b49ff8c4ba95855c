// Test-side reference implementations. Everything here recomputes results
// from first principles, independently of the library code paths under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "densekit/types.hpp"

namespace oracles {

// Plain two-pass population standard deviation.
inline double population_std(const std::vector<double>& values) {
    double mean = 0.0;
    for (double v : values)
        mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size()));
}

inline double mean_of(const std::vector<double>& values) {
    double mean = 0.0;
    for (double v : values)
        mean += v;
    return mean / static_cast<double>(values.size());
}

// Direct textbook Pearson formula (sum-of-products form). Both columns are
// shifted by their first element — an exact invariance of r — so the raw
// sums do not cancel catastrophically on near-constant data.
inline double naive_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const long double n = static_cast<long double>(x.size());
    long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long double xi = static_cast<long double>(x[i]) - x[0];
        const long double yi = static_cast<long double>(y[i]) - y[0];
        sx += xi;
        sy += yi;
        sxx += xi * xi;
        syy += yi * yi;
        sxy += xi * yi;
    }
    return static_cast<double>((n * sxy - sx * sy) /
                               std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

// Cyclic Jacobi eigensolver for small symmetric matrices. Returns eigenvalues
// sorted descending.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += a[p][q] * a[p][q];
        if (off < 1e-24)
            break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-300)
                    continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eigenvalues(n);
    for (std::size_t i = 0; i < n; ++i)
        eigenvalues[i] = a[i][i];
    std::sort(eigenvalues.rbegin(), eigenvalues.rend());
    return eigenvalues;
}

// Student-t pdf via lgamma, for the quadrature CDF oracle.
inline double t_pdf(double x, double dof) {
    const double v = dof;
    const double log_norm = std::lgamma((v + 1.0) / 2.0) - std::lgamma(v / 2.0) -
                            0.5 * std::log(v * 3.14159265358979323846);
    return std::exp(log_norm - (v + 1.0) / 2.0 * std::log1p(x * x / v));
}

inline double simpson(double (*f)(double, double), double dof, double a, double b, int steps) {
    const double h = (b - a) / steps;
    double sum = f(a, dof) + f(b, dof);
    for (int i = 1; i < steps; ++i)
        sum += f(a + i * h, dof) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// CDF(x) = 1/2 + integral of the pdf over [0, x], by composite Simpson.
inline double t_cdf_by_quadrature(double x, int dof) {
    if (x < 0.0)
        return 1.0 - t_cdf_by_quadrature(-x, dof);
    return 0.5 + simpson(&t_pdf, static_cast<double>(dof), 0.0, x, 20000);
}

// Smallest exclusion count k in [0, c-2] whose recomputed density reaches the
// target, found by scanning every k. `density_at` recomputes from scratch.
template <typename DensityAt>
inline std::int64_t exhaustive_scan_optimum(std::size_t class_size, double target,
                                            DensityAt&& density_at) {
    for (std::size_t k = 0; k + 2 <= class_size; ++k)
        if (density_at(k) <= target)
            return static_cast<std::int64_t>(k);
    return -1;  // saturated
}

// Deterministic fixture noise.
inline std::vector<double> uniform_doubles(std::uint64_t seed, std::size_t count, double lo,
                                           double hi) {
    std::mt19937_64 engine(seed);
    std::vector<double> out(count);
    for (auto& v : out)
        v = lo + (hi - lo) * (static_cast<double>(engine() >> 11) * 0x1.0p-53);
    return out;
}

} // namespace oracles
