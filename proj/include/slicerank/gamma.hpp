#pragma once

// Gamma_{alpha,m} = inf_{0<g<1} g^{-alpha(m-1)} (1 + g + ... + g^{m-1}).
//
// In t = ln g the log-objective h(t) = -alpha(m-1) t + ln sum_j e^{jt} is
// convex, and for 0 < alpha < 1/2 its derivative changes sign exactly once on
// (-inf, 0). The minimizer is located by bisection on the sign of h'.

#include "slicerank/counting.hpp"

namespace slicerank {

struct GammaResult {
    Rational alpha;
    int m = 0;
    double gamma_star = 0.0;
    double value = 0.0;
    /// Guaranteed absolute error bound on value.
    double tolerance = 0.0;
    /// Set when h' never changed sign on the search interval (only possible
    /// outside the valid alpha range).
    bool boundary_anomaly = false;
};

inline constexpr double kDefaultGammaTol = 1e-12;

/// g^{-alpha(m-1)} (1 + g + ... + g^{m-1}), evaluated in log space.
/// Throws InvalidInput unless 0 < gamma < 1.
double gamma_objective(double gamma, double alpha, int m);

/// Derivative of the log-objective with respect to t = ln gamma.
double log_objective_slope(double t, double alpha, int m);

/// tol bounds the gap on the log-objective. Throws InvalidInput unless
/// 0 < alpha < 1/2, m >= 2, tol > 0.
GammaResult compute_gamma(const Rational& alpha, int m, double tol = kDefaultGammaTol);

/// 1 - log_q Gamma_{alpha,q}.
double epsilon_q(long long q, const Rational& alpha, double tol = kDefaultGammaTol);

} // namespace slicerank
