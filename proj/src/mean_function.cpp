#include "glb/mean_function.hpp"

#include <algorithm>
#include <cmath>

#include "glb/errors.hpp"

namespace glb {

double logistic(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

namespace {

double logistic_prime(double z) {
    const double p = logistic(z);
    return p * (1.0 - p);
}

// log(1 + exp(z)) without overflow.
double logistic_cumulant(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int iter = 0; iter < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(a) + std::abs(b)); ++iter) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    return std::min({f(a), f1, f2, f(b)});
}

}  // namespace

double kappa_for_radius(const MeanFunction& mf, double radius) {
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
        throw InvalidArgument("kappa_for_radius: radius must be finite and nonnegative");
    }
    if (radius == 0.0) {
        const double k = mf.mu_prime(0.0);
        if (!(k > 0.0)) throw InvalidArgument("kappa_for_radius: mu' not positive at 0");
        return k;
    }

    // Grid scan guards against multimodality; the local search sharpens the
    // winning cell (including the interval endpoints).
    const double step = std::min(1e-3 * radius, radius / 8.0);
    const long n = static_cast<long>(std::ceil(2.0 * radius / step));
    double best = mf.mu_prime(-radius);
    long best_i = 0;
    for (long i = 0; i <= n; ++i) {
        const double z = -radius + (2.0 * radius) * static_cast<double>(i) / static_cast<double>(n);
        const double v = mf.mu_prime(z);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    const double cell = 2.0 * radius / static_cast<double>(n);
    const double lo = std::max(-radius, -radius + (best_i - 1) * cell);
    const double hi = std::min(radius, -radius + (best_i + 1) * cell);
    const double refined = golden_section_min(mf.mu_prime, lo, hi);
    const double k = std::min(best, refined);
    if (!(k > 0.0)) {
        throw InvalidArgument("kappa_for_radius: inf mu' <= 0 on [-" + std::to_string(radius) +
                              ", " + std::to_string(radius) + "]; configuration rejected");
    }
    return k;
}

MeanFunction logistic_mean(double admissible_radius) {
    MeanFunction mf;
    mf.name = "logistic";
    mf.mu = [](double z) { return logistic(z); };
    mf.mu_prime = [](double z) { return logistic_prime(z); };
    mf.cumulant = [](double z) { return logistic_cumulant(z); };
    mf.l1 = 0.25;
    mf.l2 = 1.0 / (6.0 * std::sqrt(3.0));
    mf.kappa = kappa_for_radius(mf, admissible_radius);
    return mf;
}

MeanFunction linear_mean() {
    MeanFunction mf;
    mf.name = "linear";
    mf.mu = [](double z) { return z; };
    mf.mu_prime = [](double) { return 1.0; };
    mf.cumulant = [](double z) { return 0.5 * z * z; };
    mf.kappa = 1.0;
    mf.l1 = 1.0;
    mf.l2 = 1e-12;  // mu'' == 0; any positive constant upper-bounds it
    return mf;
}

}  // namespace glb
