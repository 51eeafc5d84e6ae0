#pragma once

#include <Eigen/Dense>

#include "glb/gram.hpp"
#include "glb/history.hpp"
#include "glb/mean_function.hpp"
#include "glb/solver.hpp"

namespace glb {

// Ridge used to make the selected-arm MLE well defined before projection;
// with binary rewards the unregularized score equation can have no root.
inline constexpr double kMleFallbackRidge = 1e-6;

// Inverse-propensity pseudo-reward for one (round, arm) pair:
//   {1 - 1(a_t = arm)/pi_arm} mu(x_arm^T imputer) + 1(a_t = arm)/pi_arm * Y_t.
// The record's probability enters only when the arm was the chosen one.
double pseudo_reward(const RoundRecord& record, int arm, const Eigen::VectorXd& imputer,
                     const MeanFunction& mf);

// Flat vector of pseudo-rewards for every arm of every round, in the same
// row order as History::all_context_rows().
Eigen::VectorXd pseudo_reward_targets(const History& history, const Eigen::VectorXd& imputer,
                                      const MeanFunction& mf);

// Selected-arm MLE radially projected onto the ball of radius s_bound.
Eigen::VectorXd bounded_mle(const History& history, double s_bound, const MeanFunction& mf,
                            const SolverConfig& cfg = {},
                            const Eigen::VectorXd* warm_start = nullptr);

// Ridge-GLM fit on pseudo-rewards built from the bounded MLE.
Eigen::VectorXd imputation_estimator(const History& history, const Eigen::VectorXd& nmle,
                                     double lambda, const MeanFunction& mf,
                                     const SolverConfig& cfg = {},
                                     const Eigen::VectorXd* warm_start = nullptr);

// Ridge-GLM fit on pseudo-rewards rebuilt for ALL past rounds with the
// round-t imputation estimator (not each round's own).
Eigen::VectorXd ddr_estimator(const History& history, const Eigen::VectorXd& imputer,
                              double lambda, const MeanFunction& mf,
                              const SolverConfig& cfg = {},
                              const Eigen::VectorXd* warm_start = nullptr);

struct EstimatorState {
    Eigen::VectorXd bounded_mle;
    Eigen::VectorXd imputation;
    Eigen::VectorXd ddr;
    GramMatrix gram;
    double bound_s = 0.0;
    double ridge = 0.0;
};

enum class GramMode {
    kExact,   // reweight every stored context with the latest estimate each update
    kFrozen,  // weight each round once, at insertion time (approximation)
};

struct ChainConfig {
    double lambda = 1.0;
    double s_bound = 1.0;
    SolverConfig solver;
    GramMode gram_mode = GramMode::kExact;
    long update_every = 1;   // recompute cadence; 1 = every round
    double reward_bound = 1.0;
};

// Per-round driver for the estimator chain: appends the played round, then
// (on cadence) refreshes the weighted Gram matrix and the NMLE -> imputation
// -> DDR solves, warm-starting each from the previous round.
class DdrEstimatorChain {
public:
    DdrEstimatorChain(int dim, MeanFunction mf, ChainConfig cfg);

    void observe(ContextSet context_set, int chosen_arm, double reward,
                 Eigen::VectorXd selection_probs);

    const EstimatorState& state() const { return state_; }
    const History& history() const { return history_; }
    const MeanFunction& mean_function() const { return mf_; }
    const ChainConfig& config() const { return cfg_; }

private:
    bool update_due(long t) const;
    void refresh();

    MeanFunction mf_;
    ChainConfig cfg_;
    History history_;
    EstimatorState state_;
};

}  // namespace glb
