#include "gravitas/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gravitas/error.hpp"

namespace gravitas::econ {

namespace {

constexpr int kMaxIterations = 600;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// Series expansion for P(a, x), accurate for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < kMaxIterations; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x), accurate for x >= a + 1.
double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for the incomplete beta function.
double beta_cf(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double md = static_cast<double>(m);
        const double m2 = 2.0 * md;
        double aa = md * (b - md) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + md) * (qab + md) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h;
}

double clamp_probability(double p) {
    if (p < 0.0) return 0.0;
    if (p > 1.0) return 1.0;
    return p;
}

void check_df(double df, const char* what) {
    if (!(df > 0.0) || !std::isfinite(df))
        raise(ErrorCode::InvalidDistribution,
              std::string(what) + " degrees of freedom must be positive, got " +
                  std::to_string(df));
}

}  // namespace

namespace detail {

double regularized_gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double regularized_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front =
        std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                 b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace detail

double tail_probability(const ChiSquared& dist, double x) {
    check_df(dist.df, "chi-squared");
    if (x <= 0.0) return 1.0;
    return clamp_probability(detail::regularized_gamma_q(dist.df / 2.0, x / 2.0));
}

double tail_probability(const FisherF& dist, double x) {
    check_df(dist.df1, "F numerator");
    check_df(dist.df2, "F denominator");
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    const double u = dist.df2 / (dist.df2 + dist.df1 * x);
    return clamp_probability(detail::regularized_beta(dist.df2 / 2.0, dist.df1 / 2.0, u));
}

double tail_probability(const StudentT& dist, double x) {
    check_df(dist.df, "Student-t");
    if (std::isinf(x)) return x > 0.0 ? 0.0 : 1.0;
    if (x == 0.0) return 0.5;
    const double ax = std::fabs(x);
    const double u = dist.df / (dist.df + ax * ax);
    const double half_tail = 0.5 * detail::regularized_beta(dist.df / 2.0, 0.5, u);
    return clamp_probability(x > 0.0 ? half_tail : 1.0 - half_tail);
}

double tail_probability(const Distribution& dist, double x) {
    return std::visit([x](const auto& d) { return tail_probability(d, x); }, dist);
}

}  // namespace gravitas::econ
