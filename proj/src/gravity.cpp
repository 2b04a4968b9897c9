#include "gravitas/gravity.hpp"

#include <cmath>
#include <string>

namespace gravitas::gravity {

namespace {

void require_unit_interval(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0))
        raise(ErrorCode::InvalidConfig,
              std::string(name) + " must lie in [0,1], got " + std::to_string(x));
}

void require_positive_lambda(double x, const char* name) {
    if (!(x > 0.0 && x <= 1.0))
        raise(ErrorCode::InvalidConfig,
              std::string(name) + " must lie in (0,1], got " + std::to_string(x));
}

}  // namespace

GravityPrediction predict_trade(const ModelSpec& spec, const ModelParams& params, double y_a,
                                double y_b, double y_w, Direction direction) {
    if (!(y_a > 0.0 && y_b > 0.0 && y_w > 0.0))
        raise(ErrorCode::InvalidConfig, "GDP masses must be strictly positive");

    GravityPrediction out;
    out.direction = direction;
    out.mass_sanity_warning = y_a * y_b > y_w * y_w;

    const double mass = y_a * y_b / y_w;
    switch (spec.variant) {
        case ModelVariant::PerfectSpecialization:
            out.value = mass;
            break;
        case ModelVariant::ImperfectUniform:
            require_unit_interval(params.gamma_a, "gamma_a");
            out.value = (1.0 - params.gamma_a) * mass;
            break;
        case ModelVariant::ImperfectPair:
            require_unit_interval(params.gamma_a, "gamma_a");
            require_unit_interval(params.gamma_b, "gamma_b");
            out.value = (params.gamma_b - params.gamma_a) * mass;
            out.negative_flagged = params.gamma_b < params.gamma_a;
            break;
        case ModelVariant::Tradability: {
            const bool export_side = direction == Direction::ExportOfA;
            const double lambda = export_side ? params.lambda_a : params.lambda_b;
            require_positive_lambda(lambda, export_side ? "lambda_a" : "lambda_b");
            out.value = lambda * mass;
            break;
        }
    }
    return out;
}

std::array<double, 3> log_design_row(double y_a, double y_b, double y_w, double lambda_a) {
    if (!(y_a > 0.0 && y_b > 0.0 && y_w > 0.0 && lambda_a > 0.0))
        raise(ErrorCode::LogDomainError, "log-linear row requires strictly positive inputs");
    return {1.0, std::log(lambda_a), std::log(y_a * y_b / y_w)};
}

econ::EstimationResult identification_alpha(std::span<const double> actual,
                                            std::span<const double> predicted) {
    if (actual.size() != predicted.size())
        raise(ErrorCode::InconsistentInputs, "actual and predicted lengths differ");
    if (actual.size() < 2)
        raise(ErrorCode::DegenerateRegressor, "need at least two matched pairs");

    const auto n = static_cast<Eigen::Index>(actual.size());
    Eigen::MatrixXd x(n, 1);
    Eigen::VectorXd y(n);
    double max_abs = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        x(i, 0) = predicted[static_cast<std::size_t>(i)];
        y(i) = actual[static_cast<std::size_t>(i)];
        max_abs = std::max(max_abs, std::fabs(x(i, 0)));
    }
    if (max_abs == 0.0)
        raise(ErrorCode::DegenerateRegressor, "all model predictions are zero");

    auto result = econ::ols(x, y, false, {"alpha"});
    return result;
}

}  // namespace gravitas::gravity
