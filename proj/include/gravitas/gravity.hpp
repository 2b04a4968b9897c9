#pragma once

#include <array>
#include <span>

#include "gravitas/econometrics.hpp"
#include "gravitas/error.hpp"

namespace gravitas::gravity {

/// Which structural model produces the prediction. The perfect case is the
/// plain mass term; the imperfect variants damp it by the specialization
/// overlap; the tradability case scales it by the tradable share of the
/// country whose goods move.
enum class ModelVariant { PerfectSpecialization, ImperfectUniform, ImperfectPair, Tradability };

struct ModelSpec {
    ModelVariant variant = ModelVariant::PerfectSpecialization;
};

struct ModelParams {
    double gamma_a = 0.0;   // specialization index of a, in [0,1]
    double gamma_b = 0.0;   // specialization index of b, in [0,1]
    double lambda_a = 1.0;  // tradable share of a's GDP, in (0,1]
    double lambda_b = 1.0;  // tradable share of b's GDP, in (0,1]
};

enum class Direction { ExportOfA, ImportOfA };

struct GravityPrediction {
    Direction direction = Direction::ExportOfA;
    double value = 0.0;
    bool negative_flagged = false;     // ImperfectPair with gamma_b < gamma_a
    bool mass_sanity_warning = false;  // Ya*Yb > Yw^2
};

GravityPrediction predict_trade(const ModelSpec& spec, const ModelParams& params, double y_a,
                                double y_b, double y_w, Direction direction);

/// Regressor vector [1, ln lambda_a, ln(Ya*Yb/Yw)], intercept first.
std::array<double, 3> log_design_row(double y_a, double y_b, double y_w, double lambda_a);

/// No-intercept least squares of observed on model-predicted trade. A slope
/// indistinguishable from one supports the model that produced the
/// predictions.
econ::EstimationResult identification_alpha(std::span<const double> actual,
                                            std::span<const double> predicted);

}  // namespace gravitas::gravity
