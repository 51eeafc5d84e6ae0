#include "glb/history.hpp"

#include <cmath>
#include <string>

#include "glb/errors.hpp"

namespace glb {

void History::append(ContextSet context_set, int chosen_arm, double reward,
                     Eigen::VectorXd selection_probs) {
    if (records_.empty()) {
        n_arms_ = context_set.n_arms();
        dim_ = context_set.dim();
    } else if (context_set.n_arms() != n_arms_ || context_set.dim() != dim_) {
        throw InvalidArgument("History: arm count and dimension are fixed after the first round");
    }
    if (chosen_arm < 0 || chosen_arm >= n_arms_) {
        throw InvalidArgument("History: chosen arm out of range");
    }
    if (!std::isfinite(reward) || std::abs(reward) > reward_bound_ + 1e-12) {
        throw InvalidArgument("History: reward " + std::to_string(reward) +
                              " outside the configured bound " + std::to_string(reward_bound_));
    }
    if (selection_probs.size() != 0) {
        if (selection_probs.size() != n_arms_) {
            throw InvalidArgument("History: selection probabilities must cover every arm");
        }
        if (std::abs(selection_probs.sum() - 1.0) > 1e-9) {
            throw InvalidArgument("History: selection probabilities must sum to 1");
        }
        if (selection_probs.minCoeff() <= 0.0) {
            throw InvalidArgument("History: selection probabilities must be strictly positive");
        }
    }

    const long t = rounds();
    if ((t + 1) * n_arms_ > all_rows_.rows()) {
        const long rows = std::max<long>(64, 2 * (t + 1)) * n_arms_;
        all_rows_.conservativeResize(rows, dim_);
        chosen_rows_.conservativeResize(rows / n_arms_, dim_);
        rewards_store_.conservativeResize(rows / n_arms_);
    }
    all_rows_.middleRows(t * n_arms_, n_arms_) = context_set.matrix();
    chosen_rows_.row(t) = context_set.arm(chosen_arm);
    rewards_store_[t] = reward;

    records_.push_back(RoundRecord{std::move(context_set), chosen_arm, reward,
                                   std::move(selection_probs)});
}

}  // namespace glb
