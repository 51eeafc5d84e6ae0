#include "glb/gram.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "glb/errors.hpp"

namespace glb {

GramMatrix GramMatrix::identity(int dim, double lambda) {
    if (dim < 1) throw InvalidArgument("GramMatrix: dim must be >= 1");
    if (!(lambda > 0.0)) throw InvalidArgument("GramMatrix: ridge must be positive");
    return GramMatrix{lambda * Eigen::MatrixXd::Identity(dim, dim), lambda};
}

void GramMatrix::validate() const {
    const double scale = matrix.cwiseAbs().maxCoeff();
    const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, scale)) {
        throw InvalidArgument("GramMatrix: not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < ridge - 1e-9 * std::max(1.0, scale)) {
        throw InvalidArgument("GramMatrix: minimum eigenvalue " + std::to_string(min_eig) +
                              " below ridge " + std::to_string(ridge));
    }
}

GramMatrix gram_update(const GramMatrix& g, const ContextSet& contexts,
                       const Eigen::VectorXd& weights) {
    if (weights.size() != contexts.n_arms()) {
        throw InvalidArgument("gram_update: weights size must match the number of arms");
    }
    if (contexts.dim() != g.dim()) {
        throw InvalidArgument("gram_update: context dimension mismatch");
    }
    GramMatrix out = g;
    for (int i = 0; i < contexts.n_arms(); ++i) {
        const double w = weights[i];
        if (w < 0.0) throw InvalidArgument("gram_update: negative weight");
        if (w == 0.0) continue;
        const Eigen::VectorXd x = contexts.arm(i).transpose();
        out.matrix.noalias() += w * (x * x.transpose());
    }
    return out;
}

GramMatrix weighted_gram(const Eigen::MatrixXd& context_rows,
                         const Eigen::VectorXd& weights, double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("weighted_gram: ridge must be positive");
    if (weights.size() != context_rows.rows()) {
        throw InvalidArgument("weighted_gram: one weight per context row required");
    }
    if (weights.size() > 0 && weights.minCoeff() < 0.0) {
        throw InvalidArgument("weighted_gram: negative weight");
    }
    const int d = static_cast<int>(context_rows.cols());
    GramMatrix out{lambda * Eigen::MatrixXd::Identity(d, d), lambda};
    if (context_rows.rows() > 0) {
        const Eigen::MatrixXd scaled = context_rows.array().colwise() * weights.array();
        out.matrix.noalias() += scaled.transpose() * context_rows;
        // exact symmetry survives the GEMM only up to rounding
        out.matrix = ((out.matrix + out.matrix.transpose()) * 0.5).eval();
    }
    return out;
}

}  // namespace glb
