#pragma once

#include <Eigen/Dense>
#include <functional>

#include "glb/mean_function.hpp"

namespace glb {

struct SolverConfig {
    double tol = 1e-8;   // on the Euclidean norm of the score
    int max_iter = 100;
    double armijo_c = 1e-4;

    // Test/diagnostic hook: called after every accepted step with
    // (iteration, penalized objective, score norm).
    std::function<void(int, double, double)> observer;
};

// Score of the ridge-regularized GLM log-likelihood at beta:
//   sum_r {y_r - mu(x_r^T beta)} x_r - lambda * beta.
Eigen::VectorXd glm_score(const Eigen::MatrixXd& contexts, const Eigen::VectorXd& targets,
                          double lambda, const MeanFunction& mf, const Eigen::VectorXd& beta);

// Penalized negative log-likelihood (the convex objective the solver descends):
//   sum_r {b(x_r^T beta) - y_r x_r^T beta} + (lambda/2) ||beta||^2.
double glm_objective(const Eigen::MatrixXd& contexts, const Eigen::VectorXd& targets,
                     double lambda, const MeanFunction& mf, const Eigen::VectorXd& beta);

// Damped Newton on the score equation. contexts has one row per observation;
// targets may be any reals (pseudo-rewards fall outside [0,1]). Returns beta
// with ||score(beta)|| <= cfg.tol. Throws SolverError on non-convergence and
// InvalidArgument on malformed input.
Eigen::VectorXd solve_ridge_glm(const Eigen::MatrixXd& contexts, const Eigen::VectorXd& targets,
                                double lambda, const MeanFunction& mf,
                                const Eigen::VectorXd& init, const SolverConfig& cfg = {});

}  // namespace glb
