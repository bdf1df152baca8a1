#include "slicerank/gamma.hpp"

#include "slicerank/errors.hpp"

#include <cmath>
#include <limits>

namespace slicerank {

namespace {

double log_objective(double t, double alpha, int m) {
    // ln sum_{j<m} e^{jt}, with t < 0 so the j = 0 term dominates.
    double s = 0.0;
    for (int j = m - 1; j >= 0; --j)
        s = s * std::exp(t) + 1.0;
    return -alpha * (m - 1) * t + std::log(s);
}

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

} // namespace

double gamma_objective(double gamma, double alpha, int m) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw InvalidInput("objective requires 0 < gamma < 1");
    return std::exp(log_objective(std::log(gamma), alpha, m));
}

double log_objective_slope(double t, double alpha, int m) {
    // sum j g^j / sum g^j, accumulated by Horner in g = e^t.
    const double g = std::exp(t);
    double num = 0.0;
    double den = 0.0;
    for (int j = m - 1; j >= 0; --j) {
        num = num * g + j;
        den = den * g + 1.0;
    }
    return -alpha * (m - 1) + num / den;
}

constexpr double kArgminWidth = 1e-12;

GammaResult compute_gamma(const Rational& alpha, int m, double tol) {
    if (alpha <= Rational(0) || alpha >= Rational(1, 2))
        throw InvalidInput("infeasible alpha " + to_string(alpha) + ": need 0 < alpha < 1/2");
    if (m < 2)
        throw InvalidInput("m must be at least 2");
    if (!(tol > 0.0))
        throw InvalidInput("tolerance must be positive");

    const double a = to_double(alpha);
    double lo = std::log(1e-9);
    double hi = std::log1p(-1e-9);

    GammaResult r;
    r.alpha = alpha;
    r.m = m;

    const double slope_lo = log_objective_slope(lo, a, m);
    const double slope_hi = log_objective_slope(hi, a, m);
    if (slope_lo >= 0.0 || slope_hi <= 0.0) {
        const double t = slope_lo >= 0.0 ? lo : hi;
        r.boundary_anomaly = true;
        r.gamma_star = std::exp(t);
        r.value = std::exp(log_objective(t, a, m));
        r.tolerance = std::numeric_limits<double>::infinity();
        return r;
    }

    // Convexity: h(mid) - min h <= |h'(mid)| * (hi - lo) while the root is
    // bracketed by [lo, hi]. Keep halving past tol so gamma_star is pinned too.
    double mid = 0.5 * (lo + hi);
    double gap = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double slope = log_objective_slope(mid, a, m);
        gap = std::abs(slope) * (hi - lo);
        if ((gap <= tol && hi - lo <= kArgminWidth) || hi - lo <= 4 * std::numeric_limits<double>::epsilon())
            break;
        if (slope > 0.0)
            hi = mid;
        else
            lo = mid;
    }

    const double h = log_objective(mid, a, m);
    // Rounding in the log-objective: a few ulps of each term.
    const double rounding = 16 * std::numeric_limits<double>::epsilon() * (std::abs(a * (m - 1) * mid) + 1.0);
    r.gamma_star = std::exp(mid);
    r.value = std::exp(h);
    r.tolerance = r.value * std::expm1(gap + rounding);
    return r;
}

double epsilon_q(long long q, const Rational& alpha, double tol) {
    const auto g = compute_gamma(alpha, static_cast<int>(q), tol);
    return 1.0 - std::log(g.value) / std::log(static_cast<double>(q));
}

} // namespace slicerank
