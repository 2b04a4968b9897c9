#pragma once

#include <variant>

namespace gravitas::econ {

struct ChiSquared {
    double df;
};

struct FisherF {
    double df1;
    double df2;
};

struct StudentT {
    double df;
};

using Distribution = std::variant<ChiSquared, FisherF, StudentT>;

// Upper-tail probability P(X > x). Chi-squared and F return 1 for x <= 0
// (the whole mass lies above). Invalid degrees of freedom raise
// InvalidDistribution.
double tail_probability(const ChiSquared& dist, double x);
double tail_probability(const FisherF& dist, double x);
double tail_probability(const StudentT& dist, double x);
double tail_probability(const Distribution& dist, double x);

namespace detail {
// Regularized incomplete gamma/beta, exposed for the test oracles.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);
double regularized_beta(double a, double b, double x);
}  // namespace detail

}  // namespace gravitas::econ
