#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "glb/errors.hpp"

namespace glb {

// One round's contexts: row i holds the d-dimensional context of arm i.
// Every row must have Euclidean norm <= 1 and there must be at least two arms.
class ContextSet {
public:
    ContextSet(Eigen::MatrixXd contexts, std::int64_t round_index)
        : contexts_(std::move(contexts)), round_index_(round_index) {
        if (contexts_.rows() < 2) throw InvalidArgument("ContextSet: need at least two arms");
        if (contexts_.cols() < 1) throw InvalidArgument("ContextSet: dimension must be >= 1");
        if (round_index_ < 1) throw InvalidArgument("ContextSet: round index must be positive");
        if (!contexts_.allFinite()) throw InvalidArgument("ContextSet: non-finite context");
        for (Eigen::Index i = 0; i < contexts_.rows(); ++i) {
            if (contexts_.row(i).norm() > 1.0 + 1e-9) {
                throw InvalidArgument("ContextSet: context norm exceeds 1");
            }
        }
    }

    int n_arms() const { return static_cast<int>(contexts_.rows()); }
    int dim() const { return static_cast<int>(contexts_.cols()); }
    std::int64_t round_index() const { return round_index_; }

    const Eigen::MatrixXd& matrix() const { return contexts_; }
    Eigen::RowVectorXd arm(int i) const { return contexts_.row(i); }

private:
    Eigen::MatrixXd contexts_;
    std::int64_t round_index_;
};

}  // namespace glb
