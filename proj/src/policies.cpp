#include "glb/policies.hpp"

#include <cmath>
#include <string>

#include "glb/errors.hpp"

namespace glb {

namespace {

// Ridge used for the baselines' selected-data fit; matches their
// identity-ridge Gram matrix.
constexpr double kBaselineRidge = 1.0;

// Fit on selected data plus the unit-weight Gram A = I + sum x x^T.
struct BaselineFit {
    Eigen::VectorXd beta;
    Eigen::MatrixXd gram_a;
};

BaselineFit fit_selected(const History& history, const ContextSet& contexts,
                         const MeanFunction& mf, const SolverConfig& cfg,
                         const Eigen::VectorXd* warm_start) {
    const int d = contexts.dim();
    BaselineFit fit;
    fit.gram_a = Eigen::MatrixXd::Identity(d, d);
    if (history.empty()) {
        fit.beta = Eigen::VectorXd::Zero(d);
        return fit;
    }
    const Eigen::MatrixXd rows = history.chosen_context_rows();
    fit.gram_a.noalias() += rows.transpose() * rows;
    const Eigen::VectorXd init =
        warm_start != nullptr && warm_start->size() == d ? *warm_start : Eigen::VectorXd::Zero(d);
    fit.beta = solve_ridge_glm(rows, history.rewards(), kBaselineRidge, mf, init, cfg);
    return fit;
}

}  // namespace

int argmax_lowest_index(const Eigen::VectorXd& values) {
    int best = 0;
    for (int i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

void validate_gamma(int n_arms, double gamma) {
    const double lo = 1.0 / (n_arms + 1.0);
    const double hi = 1.0 / n_arms;
    if (!(gamma >= lo) || !(gamma < hi)) {
        throw InvalidArgument("gamma = " + std::to_string(gamma) + " outside [1/(N+1), 1/N) for N = " +
                              std::to_string(n_arms));
    }
}

long ddrts_resample_cap(double gamma, double delta, long t) {
    if (!(delta > 0.0) || !(delta < 1.0)) {
        throw InvalidArgument("ddrts_resample_cap: delta must lie in (0, 1)");
    }
    if (t < 1) throw InvalidArgument("ddrts_resample_cap: t must be >= 1");
    const double td = static_cast<double>(t);
    return static_cast<long>(
        std::ceil(std::log(td * td / delta) / std::log(1.0 / (1.0 - gamma))));
}

HyperParams ddrts_hyperparams(int n_arms, double gamma, double delta, long t,
                              const MeanFunction& mf) {
    validate_gamma(n_arms, gamma);
    const double n = static_cast<double>(n_arms);
    HyperParams hp;
    hp.v = (mf.kappa / mf.l1) / std::sqrt(2.0 * std::log(n / (1.0 - gamma * n)));
    hp.m_t = ddrts_resample_cap(gamma, delta, t);
    return hp;
}

SelectionProbabilities adjust_probs(const Eigen::VectorXd& raw, double gamma) {
    const int n = static_cast<int>(raw.size());
    validate_gamma(n, gamma);
    if (std::abs(raw.sum() - 1.0) > 1e-9 || raw.minCoeff() < 0.0) {
        throw InvalidArgument("adjust_probs: raw probabilities must form a probability vector");
    }
    int k = 0;
    for (int i = 0; i < n; ++i) {
        if (raw[i] > gamma) ++k;
    }
    // raw sums to 1 and gamma < 1/N, so max raw >= 1/N > gamma
    if (k == 0) throw std::logic_error("adjust_probs: no arm above gamma");

    SelectionProbabilities out;
    out.raw = raw;
    out.epsilon_t = (1.0 - (n - k) * gamma / 2.0 - k * gamma) / k;
    out.adjusted.resize(n);
    for (int i = 0; i < n; ++i) {
        out.adjusted[i] = raw[i] > gamma ? gamma + out.epsilon_t : gamma / 2.0;
    }
    return out;
}

Eigen::VectorXd sample_coefficient(const Eigen::VectorXd& center,
                                   const Eigen::LLT<Eigen::MatrixXd>& llt, double v, Rng& rng) {
    if (v == 0.0) return center;
    Eigen::VectorXd z(center.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
    // cov(L^{-T} z) = (L L^T)^{-1} = V^{-1}
    return center + v * llt.matrixU().solve(z);
}

namespace {

// Per-round precomputation shared by candidate draws and the Monte-Carlo
// batch: base predictors x_i^T beta and whitened contexts g_i = L^{-1} x_i,
// so a joint draw only needs fresh normals and one dot product per arm.
struct SamplingPlan {
    Eigen::VectorXd base;  // N
    Eigen::MatrixXd white; // d x N
    double v;
};

SamplingPlan make_plan(const Eigen::VectorXd& estimator, const GramMatrix& gram,
                       const ContextSet& contexts, double v) {
    if (estimator.size() != contexts.dim() || gram.dim() != contexts.dim()) {
        throw InvalidArgument("sampling: estimator/gram/context dimension mismatch");
    }
    if (v < 0.0) throw InvalidArgument("sampling: v must be nonnegative");
    SamplingPlan plan;
    plan.v = v;
    plan.base = contexts.matrix() * estimator;
    if (v > 0.0) {
        Eigen::LLT<Eigen::MatrixXd> llt(gram.matrix);
        if (llt.info() != Eigen::Success) {
            throw SolverError("sampling: Cholesky failed on the Gram matrix", 0.0, 0);
        }
        plan.white = llt.matrixL().solve(contexts.matrix().transpose());
    }
    return plan;
}

// Linear predictors x_i^T beta~_i of one joint draw. Argmax over these equals
// argmax over mu(.) because mu is nondecreasing.
Eigen::VectorXd joint_predictors(const SamplingPlan& plan, Rng& rng) {
    if (plan.v == 0.0) return plan.base;
    const int n = static_cast<int>(plan.base.size());
    const int d = static_cast<int>(plan.white.rows());
    Eigen::VectorXd out = plan.base;
    for (int i = 0; i < n; ++i) {
        double dot = 0.0;
        for (int k = 0; k < d; ++k) dot += plan.white(k, i) * rng.normal();
        out[i] += plan.v * dot;
    }
    return out;
}

Eigen::VectorXd mc_probs(const SamplingPlan& plan, int mc_samples, Rng& rng) {
    const int n = static_cast<int>(plan.base.size());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(n);
    for (int rep = 0; rep < mc_samples; ++rep) {
        counts[argmax_lowest_index(joint_predictors(plan, rng))] += 1.0;
    }
    return counts / static_cast<double>(mc_samples);
}

}  // namespace

CandidateDraw sample_candidates(const Eigen::VectorXd& estimator, const GramMatrix& gram,
                                const ContextSet& contexts, double v, const MeanFunction& mf,
                                Rng& rng) {
    const SamplingPlan plan = make_plan(estimator, gram, contexts, v);
    const Eigen::VectorXd predictors = joint_predictors(plan, rng);
    CandidateDraw draw;
    draw.candidate = argmax_lowest_index(predictors);
    draw.sampled_rewards.resize(predictors.size());
    for (Eigen::Index i = 0; i < predictors.size(); ++i) {
        draw.sampled_rewards[i] = mf.mu(predictors[i]);
    }
    return draw;
}

Eigen::VectorXd estimate_selection_probs(const Eigen::VectorXd& estimator, const GramMatrix& gram,
                                         const ContextSet& contexts, double v, int mc_samples,
                                         Rng& rng) {
    if (mc_samples < 100) {
        throw InvalidArgument("estimate_selection_probs: mc_samples must be >= 100");
    }
    const SamplingPlan plan = make_plan(estimator, gram, contexts, v);
    return mc_probs(plan, mc_samples, rng);
}

DdrtsChoice ddrts_select_loop(const std::function<int(Rng&)>& draw_candidate,
                              const std::function<Eigen::VectorXd(Rng&)>& estimate_raw_probs,
                              double gamma, long max_resamples, Rng& rng) {
    long n = 1;
    while (true) {
        const int candidate = draw_candidate(rng);
        const Eigen::VectorXd raw = estimate_raw_probs(rng);
        if (raw[candidate] > gamma || n > max_resamples) {
            DdrtsChoice choice;
            choice.arm = candidate;
            choice.probs = adjust_probs(raw, gamma);
            choice.resamples = static_cast<int>(n - 1);
            return choice;
        }
        ++n;
    }
}

DdrtsChoice ddrts_select(const EstimatorState& state, const ContextSet& contexts,
                         const PolicyConfig& cfg, long t, Rng& rng) {
    if (t < 2) throw InvalidArgument("ddrts_select: defined for rounds t >= 2");
    validate_gamma(contexts.n_arms(), cfg.gamma);
    if (cfg.mc_samples < 100) throw InvalidArgument("ddrts_select: mc_samples must be >= 100");
    const SamplingPlan plan = make_plan(state.ddr, state.gram, contexts, cfg.v);
    const long m_t = ddrts_resample_cap(cfg.gamma, cfg.delta, t);
    return ddrts_select_loop(
        [&plan](Rng& r) { return argmax_lowest_index(joint_predictors(plan, r)); },
        [&plan, &cfg](Rng& r) { return mc_probs(plan, cfg.mc_samples, r); }, cfg.gamma, m_t,
        rng);
}

Eigen::VectorXd glm_ucb_scores(const Eigen::VectorXd& beta, const Eigen::MatrixXd& gram_a,
                               const ContextSet& contexts, double alpha, const MeanFunction& mf) {
    Eigen::LLT<Eigen::MatrixXd> llt(gram_a);
    if (llt.info() != Eigen::Success) {
        throw SolverError("glm_ucb_scores: Cholesky failed on the Gram matrix", 0.0, 0);
    }
    Eigen::VectorXd scores(contexts.n_arms());
    for (int i = 0; i < contexts.n_arms(); ++i) {
        const Eigen::VectorXd x = contexts.arm(i).transpose();
        const double width = std::sqrt(x.dot(llt.solve(x)));
        scores[i] = mf.mu(x.dot(beta)) + alpha * width;
    }
    return scores;
}

int glm_ucb_select(const History& history, const ContextSet& contexts, double alpha,
                   const MeanFunction& mf, const SolverConfig& cfg,
                   const Eigen::VectorXd* warm_start) {
    if (alpha < 0.0) throw InvalidArgument("glm_ucb_select: alpha must be nonnegative");
    const BaselineFit fit = fit_selected(history, contexts, mf, cfg, warm_start);
    return argmax_lowest_index(glm_ucb_scores(fit.beta, fit.gram_a, contexts, alpha, mf));
}

int ts_glm_select(const History& history, const ContextSet& contexts, double v,
                  const MeanFunction& mf, const SolverConfig& cfg, Rng& rng,
                  const Eigen::VectorXd* warm_start) {
    if (v < 0.0) throw InvalidArgument("ts_glm_select: v must be nonnegative");
    const BaselineFit fit = fit_selected(history, contexts, mf, cfg, warm_start);
    Eigen::LLT<Eigen::MatrixXd> llt(fit.gram_a);
    // one coefficient draw shared across all arms
    const Eigen::VectorXd sampled = sample_coefficient(fit.beta, llt, v, rng);
    return argmax_lowest_index(contexts.matrix() * sampled);
}

int uniform_random_select(int n_arms, Rng& rng) {
    if (n_arms < 1) throw InvalidArgument("uniform_random_select: need at least one arm");
    return rng.uniform_int(n_arms);
}

int uniform_random_select(const ContextSet& contexts, Rng& rng) {
    return uniform_random_select(contexts.n_arms(), rng);
}

// ---------------------------------------------------------------------------

DdrtsPolicy::DdrtsPolicy(int dim, MeanFunction mf, PolicyConfig cfg, ChainConfig chain_cfg)
    : cfg_(cfg), chain_(dim, std::move(mf), chain_cfg) {}

Selection DdrtsPolicy::select(const ContextSet& contexts, long t, Rng& rng) {
    if (t == 1) {
        Selection sel;
        sel.arm = uniform_random_select(contexts, rng);
        sel.probs = Eigen::VectorXd::Constant(contexts.n_arms(),
                                              1.0 / static_cast<double>(contexts.n_arms()));
        return sel;
    }
    const DdrtsChoice choice = ddrts_select(chain_.state(), contexts, cfg_, t, rng);
    return Selection{choice.arm, choice.probs.adjusted, choice.resamples};
}

void DdrtsPolicy::observe(const ContextSet& contexts, int arm, double reward,
                          const Eigen::VectorXd& probs) {
    chain_.observe(contexts, arm, reward, probs);
}

GlmUcbPolicy::GlmUcbPolicy(int dim, MeanFunction mf, double alpha, SolverConfig solver,
                           double reward_bound)
    : mf_(std::move(mf)), alpha_(alpha), solver_(solver), history_(reward_bound),
      warm_(Eigen::VectorXd::Zero(dim)) {}

Selection GlmUcbPolicy::select(const ContextSet& contexts, long t, Rng& rng) {
    Selection sel;
    if (t == 1) {
        sel.arm = uniform_random_select(contexts, rng);
        return sel;
    }
    sel.arm = glm_ucb_select(history_, contexts, alpha_, mf_, solver_, &warm_);
    return sel;
}

void GlmUcbPolicy::observe(const ContextSet& contexts, int arm, double reward,
                           const Eigen::VectorXd&) {
    history_.append(contexts, arm, reward, Eigen::VectorXd());
    warm_ = solve_ridge_glm(history_.chosen_context_rows(), history_.rewards(), kBaselineRidge,
                            mf_, warm_, solver_);
}

TsGlmPolicy::TsGlmPolicy(int dim, MeanFunction mf, double v, SolverConfig solver,
                         double reward_bound)
    : mf_(std::move(mf)), v_(v), solver_(solver), history_(reward_bound),
      warm_(Eigen::VectorXd::Zero(dim)) {}

Selection TsGlmPolicy::select(const ContextSet& contexts, long t, Rng& rng) {
    Selection sel;
    if (t == 1) {
        sel.arm = uniform_random_select(contexts, rng);
        return sel;
    }
    sel.arm = ts_glm_select(history_, contexts, v_, mf_, solver_, rng, &warm_);
    return sel;
}

void TsGlmPolicy::observe(const ContextSet& contexts, int arm, double reward,
                          const Eigen::VectorXd&) {
    history_.append(contexts, arm, reward, Eigen::VectorXd());
    warm_ = solve_ridge_glm(history_.chosen_context_rows(), history_.rewards(), kBaselineRidge,
                            mf_, warm_, solver_);
}

Selection UniformPolicy::select(const ContextSet& contexts, long, Rng& rng) {
    Selection sel;
    sel.arm = uniform_random_select(contexts, rng);
    return sel;
}

void UniformPolicy::observe(const ContextSet&, int, double, const Eigen::VectorXd&) {}

}  // namespace glb
