#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>

#include "glb/estimators.hpp"
#include "glb/rng.hpp"

namespace glb {

struct PolicyConfig {
    double v = 1.0;          // exploration scale of the TS covariance
    double lambda = 1.0;     // ridge of the estimator chain
    double gamma = 0.0;      // resampling threshold, in [1/(N+1), 1/N)
    double delta = 0.1;      // confidence level feeding the resampling cap M_t
    double s_bound = 1.0;    // projection radius S of the bounded MLE
    int mc_samples = 1000;   // Monte-Carlo batch for selection probabilities
    SolverConfig solver;
};

// gamma must lie in [1/(N+1), 1/N), half-open.
void validate_gamma(int n_arms, double gamma);

struct HyperParams {
    double v;
    long m_t;
};

// Closed forms v = (kappa/L1) {2 log(N/(1 - gamma N))}^{-1/2} and
// M_t = ceil( log(t^2/delta) / log(1/(1 - gamma)) ).
HyperParams ddrts_hyperparams(int n_arms, double gamma, double delta, long t,
                              const MeanFunction& mf);

struct SelectionProbabilities {
    Eigen::VectorXd raw;       // Monte-Carlo estimates pi~
    Eigen::VectorXd adjusted;  // floored/renormalized pi
    double epsilon_t = 0.0;
};

// Piecewise adjustment: arms with raw > gamma get gamma + eps_t, the rest
// gamma/2, with eps_t the constant restoring sum 1.
SelectionProbabilities adjust_probs(const Eigen::VectorXd& raw, double gamma);

// One coefficient draw beta~ = center + v * L^{-T} z with z ~ N(0, I), where
// llt factors the Gram matrix (so cov(beta~) = v^2 V^{-1}).
Eigen::VectorXd sample_coefficient(const Eigen::VectorXd& center,
                                   const Eigen::LLT<Eigen::MatrixXd>& llt, double v, Rng& rng);

// Resampling budget M_t = ceil( log(t^2/delta) / log(1/(1 - gamma)) ).
long ddrts_resample_cap(double gamma, double delta, long t);

struct CandidateDraw {
    Eigen::VectorXd sampled_rewards;  // mu(x_i^T beta~_i) per arm
    int candidate = 0;                // argmax, ties to the lowest index
};

// One joint draw: N independent coefficient samples, one per arm.
CandidateDraw sample_candidates(const Eigen::VectorXd& estimator, const GramMatrix& gram,
                                const ContextSet& contexts, double v, const MeanFunction& mf,
                                Rng& rng);

// Frequency of each arm winning the joint draw over mc_samples repetitions;
// one shared batch serves all arms.
Eigen::VectorXd estimate_selection_probs(const Eigen::VectorXd& estimator, const GramMatrix& gram,
                                         const ContextSet& contexts, double v, int mc_samples,
                                         Rng& rng);

struct DdrtsChoice {
    int arm = 0;
    SelectionProbabilities probs;  // from the final Monte-Carlo batch
    int resamples = 0;
};

// Resampling loop with injectable draw/estimate steps (unit tests stub them):
// accept the candidate once its estimated probability clears gamma, giving up
// after max_resamples extra attempts and playing the last candidate.
DdrtsChoice ddrts_select_loop(const std::function<int(Rng&)>& draw_candidate,
                              const std::function<Eigen::VectorXd(Rng&)>& estimate_raw_probs,
                              double gamma, long max_resamples, Rng& rng);

// Full DDRTS arm selection for round t >= 2.
DdrtsChoice ddrts_select(const EstimatorState& state, const ContextSet& contexts,
                         const PolicyConfig& cfg, long t, Rng& rng);

// UCB scores mu(x^T beta) + alpha ||x||_{A^{-1}} for a given fit.
Eigen::VectorXd glm_ucb_scores(const Eigen::VectorXd& beta, const Eigen::MatrixXd& gram_a,
                               const ContextSet& contexts, double alpha, const MeanFunction& mf);

// Baselines fit a ridge GLM on the selected-arm data only, Gram with unit
// weights plus identity ridge.
int glm_ucb_select(const History& history, const ContextSet& contexts, double alpha,
                   const MeanFunction& mf, const SolverConfig& cfg,
                   const Eigen::VectorXd* warm_start = nullptr);

int ts_glm_select(const History& history, const ContextSet& contexts, double v,
                  const MeanFunction& mf, const SolverConfig& cfg, Rng& rng,
                  const Eigen::VectorXd* warm_start = nullptr);

int uniform_random_select(int n_arms, Rng& rng);
int uniform_random_select(const ContextSet& contexts, Rng& rng);

int argmax_lowest_index(const Eigen::VectorXd& values);

// ---------------------------------------------------------------------------
// Stateful adapters used by the harness and the replay evaluator.
// ---------------------------------------------------------------------------

struct Selection {
    int arm = 0;
    Eigen::VectorXd probs;  // adjusted probabilities; empty for baselines
    int resamples = 0;
};

class ArmPolicy {
public:
    virtual ~ArmPolicy() = default;
    virtual const std::string& name() const = 0;
    // t is the policy's own 1-based round index; t == 1 plays uniformly.
    virtual Selection select(const ContextSet& contexts, long t, Rng& rng) = 0;
    virtual void observe(const ContextSet& contexts, int arm, double reward,
                         const Eigen::VectorXd& probs) = 0;
};

class DdrtsPolicy : public ArmPolicy {
public:
    DdrtsPolicy(int dim, MeanFunction mf, PolicyConfig cfg, ChainConfig chain_cfg);

    const std::string& name() const override { return name_; }
    Selection select(const ContextSet& contexts, long t, Rng& rng) override;
    void observe(const ContextSet& contexts, int arm, double reward,
                 const Eigen::VectorXd& probs) override;

    const DdrEstimatorChain& chain() const { return chain_; }

private:
    std::string name_ = "ddrts";
    PolicyConfig cfg_;
    DdrEstimatorChain chain_;
};

class GlmUcbPolicy : public ArmPolicy {
public:
    GlmUcbPolicy(int dim, MeanFunction mf, double alpha, SolverConfig solver,
                 double reward_bound = 1.0);

    const std::string& name() const override { return name_; }
    Selection select(const ContextSet& contexts, long t, Rng& rng) override;
    void observe(const ContextSet& contexts, int arm, double reward,
                 const Eigen::VectorXd& probs) override;

private:
    std::string name_ = "glm-ucb";
    MeanFunction mf_;
    double alpha_;
    SolverConfig solver_;
    History history_;
    Eigen::VectorXd warm_;
};

class TsGlmPolicy : public ArmPolicy {
public:
    TsGlmPolicy(int dim, MeanFunction mf, double v, SolverConfig solver,
                double reward_bound = 1.0);

    const std::string& name() const override { return name_; }
    Selection select(const ContextSet& contexts, long t, Rng& rng) override;
    void observe(const ContextSet& contexts, int arm, double reward,
                 const Eigen::VectorXd& probs) override;

private:
    std::string name_ = "ts-glm";
    MeanFunction mf_;
    double v_;
    SolverConfig solver_;
    History history_;
    Eigen::VectorXd warm_;
};

class UniformPolicy : public ArmPolicy {
public:
    UniformPolicy() = default;

    const std::string& name() const override { return name_; }
    Selection select(const ContextSet& contexts, long t, Rng& rng) override;
    void observe(const ContextSet& contexts, int arm, double reward,
                 const Eigen::VectorXd& probs) override;

private:
    std::string name_ = "uniform";
};

}  // namespace glb
