#pragma once

#include <Eigen/Dense>

#include "glb/context.hpp"

namespace glb {

// Symmetric positive-definite weighted Gram matrix with ridge floor lambda.
// Weights are mu' evaluations, so every eigenvalue stays >= lambda.
struct GramMatrix {
    Eigen::MatrixXd matrix;
    double ridge = 0.0;

    static GramMatrix identity(int dim, double lambda);

    int dim() const { return static_cast<int>(matrix.rows()); }

    // Checks symmetry (1e-12 relative) and the eigenvalue floor. O(d^3);
    // meant for tests and debugging, not the per-round path.
    void validate() const;
};

// g + sum_i weights[i] * x_i x_i^T. Weights must be nonnegative.
GramMatrix gram_update(const GramMatrix& g, const ContextSet& contexts,
                       const Eigen::VectorXd& weights);

// Builds lambda * I + X^T diag(weights) X from a flat stack of contexts
// (rows of X). This is the exact-recomputation path of the weighted Gram.
GramMatrix weighted_gram(const Eigen::MatrixXd& context_rows,
                         const Eigen::VectorXd& weights, double lambda);

}  // namespace glb
