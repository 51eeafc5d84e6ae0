#include "glb/estimators.hpp"

#include <cmath>
#include <string>

#include "glb/errors.hpp"

namespace glb {

double pseudo_reward(const RoundRecord& record, int arm, const Eigen::VectorXd& imputer,
                     const MeanFunction& mf) {
    if (arm < 0 || arm >= record.context_set.n_arms()) {
        throw InvalidArgument("pseudo_reward: arm out of range");
    }
    const double predicted = mf.mu(record.context_set.arm(arm).dot(imputer));
    if (record.chosen_arm != arm) return predicted;
    if (record.selection_probs.size() == 0) {
        throw InvalidArgument("pseudo_reward: round carries no selection probabilities");
    }
    const double pi = record.selection_probs[arm];
    if (!(pi > 0.0)) {
        throw InvalidArgument("pseudo_reward: zero selection probability for the chosen arm");
    }
    return predicted + (record.reward - predicted) / pi;
}

Eigen::VectorXd pseudo_reward_targets(const History& history, const Eigen::VectorXd& imputer,
                                      const MeanFunction& mf) {
    const long t = history.rounds();
    const int n = history.n_arms();
    Eigen::VectorXd targets(t * n);
    const Eigen::ArrayXd predictors = (history.all_context_rows() * imputer).array();
    for (long r = 0; r < t * n; ++r) targets[r] = mf.mu(predictors[r]);
    for (long tau = 0; tau < t; ++tau) {
        const RoundRecord& rec = history.record(tau);
        const long row = tau * n + rec.chosen_arm;
        if (rec.selection_probs.size() == 0) {
            throw InvalidArgument("pseudo_reward_targets: round " + std::to_string(tau + 1) +
                                  " carries no selection probabilities");
        }
        const double pi = rec.selection_probs[rec.chosen_arm];
        if (!(pi > 0.0)) {
            throw InvalidArgument("pseudo_reward_targets: zero selection probability at round " +
                                  std::to_string(tau + 1));
        }
        targets[row] += (rec.reward - targets[row]) / pi;
    }
    return targets;
}

Eigen::VectorXd bounded_mle(const History& history, double s_bound, const MeanFunction& mf,
                            const SolverConfig& cfg, const Eigen::VectorXd* warm_start) {
    if (history.empty()) throw InvalidArgument("bounded_mle: history is empty");
    if (!(s_bound > 0.0)) throw InvalidArgument("bounded_mle: S must be positive");

    const Eigen::MatrixXd contexts = history.chosen_context_rows();
    const Eigen::VectorXd targets = history.rewards();
    const Eigen::VectorXd init =
        warm_start != nullptr ? *warm_start : Eigen::VectorXd::Zero(history.dim());
    Eigen::VectorXd beta;
    try {
        beta = solve_ridge_glm(contexts, targets, kMleFallbackRidge, mf, init, cfg);
    } catch (const SolverError& e) {
        throw SolverError("bounded_mle at round " + std::to_string(history.rounds()) + ": " +
                              e.what(),
                          e.residual_norm, e.iterations);
    }
    const double norm = beta.norm();
    if (norm > s_bound) beta *= s_bound / norm;
    return beta;
}

namespace {

Eigen::VectorXd solve_on_pseudo_rewards(const History& history, const Eigen::VectorXd& imputer,
                                        double lambda, const MeanFunction& mf,
                                        const SolverConfig& cfg,
                                        const Eigen::VectorXd* warm_start, const char* who) {
    if (history.empty()) throw InvalidArgument(std::string(who) + ": history is empty");
    const Eigen::VectorXd targets = pseudo_reward_targets(history, imputer, mf);
    const Eigen::VectorXd init =
        warm_start != nullptr ? *warm_start : Eigen::VectorXd::Zero(history.dim());
    try {
        return solve_ridge_glm(history.all_context_rows(), targets, lambda, mf, init, cfg);
    } catch (const SolverError& e) {
        throw SolverError(std::string(who) + " at round " + std::to_string(history.rounds()) +
                              ": " + e.what(),
                          e.residual_norm, e.iterations);
    }
}

}  // namespace

Eigen::VectorXd imputation_estimator(const History& history, const Eigen::VectorXd& nmle,
                                     double lambda, const MeanFunction& mf,
                                     const SolverConfig& cfg, const Eigen::VectorXd* warm_start) {
    return solve_on_pseudo_rewards(history, nmle, lambda, mf, cfg, warm_start,
                                   "imputation_estimator");
}

Eigen::VectorXd ddr_estimator(const History& history, const Eigen::VectorXd& imputer,
                              double lambda, const MeanFunction& mf, const SolverConfig& cfg,
                              const Eigen::VectorXd* warm_start) {
    return solve_on_pseudo_rewards(history, imputer, lambda, mf, cfg, warm_start, "ddr_estimator");
}

DdrEstimatorChain::DdrEstimatorChain(int dim, MeanFunction mf, ChainConfig cfg)
    : mf_(std::move(mf)), cfg_(cfg), history_(cfg.reward_bound) {
    if (dim < 1) throw InvalidArgument("DdrEstimatorChain: dimension must be >= 1");
    if (!(cfg_.lambda > 0.0)) throw InvalidArgument("DdrEstimatorChain: lambda must be positive");
    if (!(cfg_.s_bound > 0.0)) throw InvalidArgument("DdrEstimatorChain: S must be positive");
    if (cfg_.update_every < 1) throw InvalidArgument("DdrEstimatorChain: update cadence >= 1");
    state_.bounded_mle = Eigen::VectorXd::Zero(dim);
    state_.imputation = Eigen::VectorXd::Zero(dim);
    state_.ddr = Eigen::VectorXd::Zero(dim);
    state_.gram = GramMatrix::identity(dim, cfg_.lambda);
    state_.bound_s = cfg_.s_bound;
    state_.ridge = cfg_.lambda;
}

bool DdrEstimatorChain::update_due(long t) const {
    // With a sparse cadence the first rounds still update every time, so a
    // long-horizon run does not start blind.
    return t <= 20 || (t % cfg_.update_every) == 0;
}

void DdrEstimatorChain::observe(ContextSet context_set, int chosen_arm, double reward,
                                Eigen::VectorXd selection_probs) {
    if (cfg_.gram_mode == GramMode::kFrozen) {
        // weights use the latest DDR estimate available at insertion time
        Eigen::VectorXd weights(context_set.n_arms());
        for (int i = 0; i < context_set.n_arms(); ++i) {
            weights[i] = mf_.mu_prime(context_set.arm(i).dot(state_.ddr));
        }
        state_.gram = gram_update(state_.gram, context_set, weights);
    }
    history_.append(std::move(context_set), chosen_arm, reward, std::move(selection_probs));
    if (update_due(history_.rounds())) refresh();
}

void DdrEstimatorChain::refresh() {
    if (cfg_.gram_mode == GramMode::kExact) {
        const auto rows = history_.all_context_rows();
        Eigen::VectorXd weights((history_.rounds()) * history_.n_arms());
        const Eigen::ArrayXd predictors = (rows * state_.ddr).array();
        for (Eigen::Index r = 0; r < weights.size(); ++r) {
            weights[r] = mf_.mu_prime(predictors[r]);
        }
        state_.gram = weighted_gram(rows, weights, cfg_.lambda);
    }
    state_.bounded_mle =
        bounded_mle(history_, cfg_.s_bound, mf_, cfg_.solver, &state_.bounded_mle);
    state_.imputation = imputation_estimator(history_, state_.bounded_mle, cfg_.lambda, mf_,
                                             cfg_.solver, &state_.imputation);
    state_.ddr =
        ddr_estimator(history_, state_.imputation, cfg_.lambda, mf_, cfg_.solver, &state_.ddr);
}

}  // namespace glb
