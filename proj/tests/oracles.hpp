// Test-only oracles, kept independent of the library paths they check:
// density quadrature for the distribution tails, explicit-covariance GLS for
// the random-effects transform, and the erfc-based normal tail.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "gravitas/types.hpp"

namespace oracles {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = std::fabs(left + right - whole);
    if (depth <= 0 || diff <= 15.0 * tol || diff <= 1e-14 * std::fabs(left + right))
        return left + right + (left + right - whole) / 15.0;
    const double child_tol = std::max(tol / 2.0, 1e-16);
    return adaptive_simpson(f, a, m, fa, flm, fm, left, child_tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, child_tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    if (a == b) return 0.0;
    // Pre-split so sharply localized densities are found before recursing.
    const int segments = 32;
    const double h = (b - a) / segments;
    double total = 0.0;
    for (int s = 0; s < segments; ++s) {
        const double lo = a + s * h;
        const double hi = s + 1 == segments ? b : lo + h;
        const double fa = f(lo);
        const double fb = f(hi);
        const double fm = f(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        total += adaptive_simpson(f, lo, hi, fa, fm, fb, whole, tol / segments, 24);
    }
    return total;
}

// Chi-squared upper tail by integrating the density on [0, x] after the
// substitution t = u^2, which removes the df=1 endpoint singularity.
inline double chi_squared_upper(double df, double x) {
    if (x <= 0.0) return 1.0;
    const double log_norm = -(df / 2.0) * std::log(2.0) - std::lgamma(df / 2.0);
    auto integrand = [&](double u) {
        if (u == 0.0 && df < 2.0) return 0.0;  // limit handled by substitution power
        const double log_val = log_norm + (df - 1.0) * std::log(u) - u * u / 2.0;
        return 2.0 * std::exp(log_val);
    };
    return 1.0 - integrate(integrand, 0.0, std::sqrt(x));
}

inline double fisher_f_upper(double d1, double d2, double x) {
    if (x <= 0.0) return 1.0;
    const double log_norm = std::lgamma((d1 + d2) / 2.0) - std::lgamma(d1 / 2.0) -
                            std::lgamma(d2 / 2.0) + (d1 / 2.0) * std::log(d1 / d2);
    auto integrand = [&](double u) {
        if (u == 0.0 && d1 < 2.0) return 0.0;
        const double t = u * u;
        const double log_val = log_norm + (d1 - 1.0) * std::log(u) -
                               (d1 + d2) / 2.0 * std::log1p(d1 * t / d2);
        return 2.0 * std::exp(log_val);
    };
    return 1.0 - integrate(integrand, 0.0, std::sqrt(x));
}

inline double student_t_upper(double df, double x) {
    const double ax = std::fabs(x);
    const double log_norm = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                            0.5 * std::log(df * 3.14159265358979323846);
    auto integrand = [&](double t) {
        return std::exp(log_norm - (df + 1.0) / 2.0 * std::log1p(t * t / df));
    };
    const double upper = 0.5 - integrate(integrand, 0.0, ax);
    return x >= 0.0 ? upper : 1.0 - upper;
}

inline double normal_upper(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Generalized least squares with the full block covariance assembled
// explicitly: Omega_g = sigma_u^2 * J + sigma_e^2 * I per group.
struct GlsFit {
    Eigen::VectorXd beta;
    Eigen::MatrixXd covariance;
};

inline GlsFit explicit_gls(const gravitas::PanelDataset& panel, double sigma_e2,
                           double sigma_u2) {
    const auto n = static_cast<Eigen::Index>(panel.size());
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n);
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& oi = panel.observations[static_cast<std::size_t>(i)];
        x(i, 0) = 1.0;
        x(i, 1) = oi.ln_lambda_exporter;
        x(i, 2) = oi.ln_mass;
        y(i) = oi.ln_trade;
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& oj = panel.observations[static_cast<std::size_t>(j)];
            if (oi.pair_id == oj.pair_id) omega(i, j) = sigma_u2 + (i == j ? sigma_e2 : 0.0);
        }
    }
    const Eigen::MatrixXd omega_inv = omega.inverse();
    const Eigen::MatrixXd xtoix = x.transpose() * omega_inv * x;
    GlsFit fit;
    fit.covariance = xtoix.inverse();
    fit.beta = fit.covariance * (x.transpose() * omega_inv * y);
    return fit;
}

}  // namespace oracles
