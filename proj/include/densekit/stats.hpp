#pragma once

#include <optional>
#include <span>
#include <vector>

#include "densekit/density.hpp"
#include "densekit/types.hpp"

namespace densekit {

struct CorrelationResult {
    double r = 0.0;
    int n_pairs = 0;
};

// Pearson product-moment correlation. Requires >= 3 pairs and nonzero
// variance in both sequences.
CorrelationResult pearson_r(std::span<const double> x, std::span<const double> y);

struct SignificanceResult {
    double t_stat = 0.0;               // sign follows candidate mean - baseline mean
    int dof = 0;
    std::optional<double> p_one_tailed; // empty when the test is undefined (both spreads zero, means equal)
    int direction = 0;                  // sign of candidate mean - baseline mean
    bool degenerate = false;            // both spreads zero
};

// Pooled equal-variance two-sample t-test from summary statistics, one-tailed
// in the direction of the observed difference. Reported standard deviations
// are population form and are converted to sample variances internally.
SignificanceResult pooled_t_test(const TrialSummary& baseline, const TrialSummary& candidate);

// Pairs densities with accuracies by class id and delegates to pearson_r.
CorrelationResult density_accuracy_study(const DensityVector& densities,
                                         const AccuracyTable& accuracies);

// Student's t CDF at x with `dof` degrees of freedom, computed through the
// regularized incomplete beta function (continued fraction, target 1e-12).
double student_t_cdf(double x, int dof);

// Lower regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double x, double a, double b);

} // namespace densekit
