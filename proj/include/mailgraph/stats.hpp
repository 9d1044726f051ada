#pragma once

#include <span>

namespace mailgraph {

double mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs); // n-1 denominator

struct WelchResult {
    double t = 0.0;
    double df = 0.0; // Welch-Satterthwaite degrees of freedom
    double p = 1.0;  // two-tailed
};

// Welch's unequal-variance two-sample t-test, t = (mean(a) - mean(b)) / se.
// Throws std::invalid_argument when either sample has fewer than two values
// or both samples have zero variance.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// P(T > t) for Student's t with df degrees of freedom.
double student_t_sf(double t, double df);

} // namespace mailgraph
