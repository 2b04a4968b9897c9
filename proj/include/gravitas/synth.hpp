#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gravitas/domain.hpp"
#include "gravitas/error.hpp"
#include "gravitas/types.hpp"

namespace gravitas::synth {

/// One synthetic country: per-year tradable and nontradable output levels.
/// GDP is their sum; the tradable share lambda = tradable / GDP.
struct CountryBlock {
    std::string name;
    std::vector<double> tradable_output;     // one entry per year
    std::vector<double> nontradable_output;  // one entry per year
    std::vector<double> pair_effects;        // u_ab per partner index (self entry unused)

    double gdp(int year_index) const {
        return tradable_output[static_cast<std::size_t>(year_index)] +
               nontradable_output[static_cast<std::size_t>(year_index)];
    }
    double lambda(int year_index) const {
        return tradable_output[static_cast<std::size_t>(year_index)] / gdp(year_index);
    }
};

struct SyntheticWorld {
    std::vector<CountryBlock> countries;
    int first_year = 2000;
    int n_years = 0;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

struct GenConfig {
    int n_countries = 40;
    int n_years = 10;
    int first_year = 2000;
    double lambda_min = 0.04;  // tradable share draw range, fraction of GDP
    double lambda_max = 0.14;
    double gdp_log_min = std::log(1e10);  // country GDP drawn log-uniform
    double gdp_log_max = std::log(1e13);
    double sigma_noise = 0.5;        // lognormal observation noise
    double pair_effect_sigma = 0.0;  // directed-pair effect scale
    bool correlate_effects_with_regressors = false;  // for Hausman power runs
    bool lambda_varies_by_year = false;  // default: constant tradable share per country
    std::uint64_t seed = 0;

    void validate() const;
};

/// Correlation between pair effects and the pair's mean log mass when
/// correlate_effects_with_regressors is on.
inline constexpr double kEffectRegressorCorrelation = 0.9;

SyntheticWorld generate_world(const GenConfig& config);

/// One flow per ordered pair per year:
/// X_ab,t = lambda_a,t * Ya,t*Yb,t/Yw,t * exp(u_ab) * exp(eps_ab,t).
std::vector<TradeFlow> generate_flows(const SyntheticWorld& world);

std::vector<CountryYearGDP> gdp_records(const SyntheticWorld& world);
LambdaIndex lambda_index(const SyntheticWorld& world);  // 0-100 scale

struct RecoverySummary {
    int n_replications = 0;
    int n_completed = 0;
    int n_failed = 0;
    double mean_beta0 = 0.0;  // fixed-effects estimates averaged over replications
    double mean_beta1 = 0.0;
    double mean_beta2 = 0.0;
    double max_abs_beta1_error = 0.0;  // against the structural value 1
    double max_abs_beta2_error = 0.0;
    int coverage_beta1 = 0;  // replications whose 95% CI covers 1
    int coverage_beta2 = 0;
    int hausman_rejections = 0;  // at the 5% level
    int f_test_rejections = 0;
    std::vector<std::string> failures;  // one message per failed replication
};

/// Generate-assemble-estimate loop; replication r uses the stream derived
/// from (config.seed, r) so runs are reproducible and order-independent.
RecoverySummary recovery_experiment(const GenConfig& config, int n_replications);

}  // namespace gravitas::synth
