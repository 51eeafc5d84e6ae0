#include "glb/solver.hpp"

#include <cmath>
#include <string>

#include "glb/errors.hpp"

namespace glb {

namespace {

Eigen::ArrayXd apply(const std::function<double(double)>& f, const Eigen::ArrayXd& z) {
    Eigen::ArrayXd out(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = f(z[i]);
    return out;
}

}  // namespace

Eigen::VectorXd glm_score(const Eigen::MatrixXd& contexts, const Eigen::VectorXd& targets,
                          double lambda, const MeanFunction& mf, const Eigen::VectorXd& beta) {
    Eigen::VectorXd score = -lambda * beta;
    if (contexts.rows() > 0) {
        const Eigen::ArrayXd z = (contexts * beta).array();
        const Eigen::ArrayXd resid = targets.array() - apply(mf.mu, z);
        score.noalias() += contexts.transpose() * resid.matrix();
    }
    return score;
}

double glm_objective(const Eigen::MatrixXd& contexts, const Eigen::VectorXd& targets,
                     double lambda, const MeanFunction& mf, const Eigen::VectorXd& beta) {
    double obj = 0.5 * lambda * beta.squaredNorm();
    if (contexts.rows() > 0) {
        const Eigen::ArrayXd z = (contexts * beta).array();
        obj += (apply(mf.cumulant, z) - targets.array() * z).sum();
    }
    return obj;
}

Eigen::VectorXd solve_ridge_glm(const Eigen::MatrixXd& contexts, const Eigen::VectorXd& targets,
                                double lambda, const MeanFunction& mf,
                                const Eigen::VectorXd& init, const SolverConfig& cfg) {
    const Eigen::Index n = contexts.rows();
    const Eigen::Index d = contexts.cols();
    if (targets.size() != n) {
        throw InvalidArgument("solve_ridge_glm: one target per context row required");
    }
    if (lambda < 0.0 || !std::isfinite(lambda)) {
        throw InvalidArgument("solve_ridge_glm: ridge must be finite and nonnegative");
    }
    if (!contexts.allFinite() || !targets.allFinite() || !init.allFinite()) {
        throw InvalidArgument("solve_ridge_glm: non-finite input");
    }
    if (init.size() != d) {
        throw InvalidArgument("solve_ridge_glm: init dimension mismatch");
    }

    Eigen::VectorXd beta = init;
    Eigen::VectorXd score = glm_score(contexts, targets, lambda, mf, beta);
    double obj = glm_objective(contexts, targets, lambda, mf, beta);

    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        if (score.norm() <= cfg.tol) return beta;

        Eigen::MatrixXd hess = lambda * Eigen::MatrixXd::Identity(d, d);
        if (n > 0) {
            const Eigen::ArrayXd w = apply(mf.mu_prime, (contexts * beta).array());
            const Eigen::MatrixXd scaled = contexts.array().colwise() * w;
            hess.noalias() += scaled.transpose() * contexts;
        }

        Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
        Eigen::VectorXd dir = ldlt.solve(score);
        if (ldlt.info() != Eigen::Success || !dir.allFinite()) {
            throw SolverError("solve_ridge_glm: singular Hessian (lambda = " +
                                  std::to_string(lambda) + ")",
                              score.norm(), iter);
        }

        // grad f = -score, so the directional derivative along dir is -score.dir
        const double slope = -score.dot(dir);
        double step = 1.0;
        double next_obj = glm_objective(contexts, targets, lambda, mf, beta + step * dir);
        while (!(next_obj <= obj + cfg.armijo_c * step * slope) && step > 1e-14) {
            step *= 0.5;
            next_obj = glm_objective(contexts, targets, lambda, mf, beta + step * dir);
        }
        if (!(next_obj <= obj)) {
            throw SolverError("solve_ridge_glm: line search failed to decrease the objective",
                              score.norm(), iter);
        }
        beta += step * dir;
        obj = next_obj;
        score = glm_score(contexts, targets, lambda, mf, beta);
        if (cfg.observer) cfg.observer(iter + 1, obj, score.norm());
    }

    const double resid = score.norm();
    if (resid <= cfg.tol) return beta;
    throw SolverError("solve_ridge_glm: no convergence after " + std::to_string(cfg.max_iter) +
                          " iterations (score norm " + std::to_string(resid) + ")",
                      resid, cfg.max_iter);
}

}  // namespace glb
