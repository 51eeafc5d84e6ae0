#pragma once

#include <Eigen/Dense>
#include <vector>

#include "glb/context.hpp"

namespace glb {

// One played round: all arms' contexts, the chosen arm, the observed reward
// and the (adjusted) selection probabilities the policy logged. Baseline
// policies that never form pseudo-rewards may leave selection_probs empty.
struct RoundRecord {
    ContextSet context_set;
    int chosen_arm = 0;
    double reward = 0.0;
    Eigen::VectorXd selection_probs;
};

// Append-only log of rounds with flat row-major context stacks kept alongside,
// so the estimator chain can rebuild all N*t pseudo-reward targets in one pass.
// The arm count and dimension are fixed by the first append.
class History {
public:
    explicit History(double reward_bound = 1.0) : reward_bound_(reward_bound) {}

    void append(ContextSet context_set, int chosen_arm, double reward,
                Eigen::VectorXd selection_probs);

    long rounds() const { return static_cast<long>(records_.size()); }
    bool empty() const { return records_.empty(); }
    int n_arms() const { return n_arms_; }
    int dim() const { return dim_; }
    double reward_bound() const { return reward_bound_; }

    const RoundRecord& record(long tau) const { return records_[static_cast<size_t>(tau)]; }
    const std::vector<RoundRecord>& records() const { return records_; }

    // Row tau*N + i is arm i's context at round tau; (N*t) x d.
    Eigen::Block<const Eigen::MatrixXd> all_context_rows() const {
        return all_rows_.topRows(rounds() * n_arms_);
    }
    // Row tau is the chosen context at round tau; t x d.
    Eigen::Block<const Eigen::MatrixXd> chosen_context_rows() const {
        return chosen_rows_.topRows(rounds());
    }
    Eigen::VectorBlock<const Eigen::VectorXd> rewards() const {
        return rewards_store_.head(rounds());
    }

private:
    std::vector<RoundRecord> records_;
    Eigen::MatrixXd all_rows_;
    Eigen::MatrixXd chosen_rows_;
    Eigen::VectorXd rewards_store_;
    double reward_bound_;
    int n_arms_ = 0;
    int dim_ = 0;
};

}  // namespace glb
