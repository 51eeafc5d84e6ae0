#pragma once

#include <functional>
#include <string>

namespace glb {

// Inverse-link bundle for a canonical GLM: the mean map mu, its derivative,
// the cumulant b with b' = mu, and the curvature constants used by the
// policies. kappa is the infimum of mu' over the admissible predictor range
// [-radius, radius], l1 the supremum of mu', l2 the supremum of |mu''|.
struct MeanFunction {
    std::string name;
    std::function<double(double)> mu;
    std::function<double(double)> mu_prime;
    std::function<double(double)> cumulant;
    double kappa = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
};

// Minimum of mu' over [-radius, radius]: dense grid scan (step <= 1e-3 * radius)
// followed by golden-section refinement around the best grid cell. Throws
// InvalidArgument when the minimum is not strictly positive.
double kappa_for_radius(const MeanFunction& mf, double radius);

// Logistic link mu(z) = 1 / (1 + exp(-z)); l1 = 1/4, l2 = 1/(6*sqrt(3)),
// kappa from kappa_for_radius over the given admissible radius.
MeanFunction logistic_mean(double admissible_radius = 6.0);

// Identity link, Gaussian rewards. kappa = l1 = 1 for any radius.
MeanFunction linear_mean();

// Numerically stable logistic CDF, exposed for reuse in tests and generators.
double logistic(double z);

}  // namespace glb
