#include "gravitas/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "gravitas/econometrics.hpp"
#include "gravitas/rng.hpp"

namespace gravitas::synth {

namespace {

// Stream tags keep the draws for different purposes independent even though
// they all descend from the same user seed.
constexpr std::uint64_t kStreamWorld = 0x1;
constexpr std::uint64_t kStreamNoise = 0x2;

std::string country_name(int i) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "C%02d", i);
    return buffer;
}

}  // namespace

void GenConfig::validate() const {
    if (n_countries < 2) raise(ErrorCode::InvalidConfig, "need at least two countries");
    if (n_years < 1) raise(ErrorCode::InvalidConfig, "need at least one year");
    if (!(lambda_min > 0.0 && lambda_max <= 1.0 && lambda_min <= lambda_max))
        raise(ErrorCode::InvalidConfig, "lambda range must satisfy 0 < min <= max <= 1");
    if (!(gdp_log_min <= gdp_log_max))
        raise(ErrorCode::InvalidConfig, "GDP log range is empty");
    if (sigma_noise < 0.0 || pair_effect_sigma < 0.0)
        raise(ErrorCode::InvalidConfig, "sigmas must be nonnegative");
}

SyntheticWorld generate_world(const GenConfig& config) {
    config.validate();
    Xoshiro256pp rng(derive_seed(config.seed, kStreamWorld));

    SyntheticWorld world;
    world.first_year = config.first_year;
    world.n_years = config.n_years;
    world.noise_sigma = config.sigma_noise;
    world.seed = config.seed;
    world.countries.resize(static_cast<std::size_t>(config.n_countries));

    const int n = config.n_countries;
    const int t = config.n_years;
    for (int i = 0; i < n; ++i) {
        auto& country = world.countries[static_cast<std::size_t>(i)];
        country.name = country_name(i);
        country.tradable_output.resize(static_cast<std::size_t>(t));
        country.nontradable_output.resize(static_cast<std::size_t>(t));
        double lambda = rng.uniform(config.lambda_min, config.lambda_max);
        for (int y = 0; y < t; ++y) {
            const double gdp = std::exp(rng.uniform(config.gdp_log_min, config.gdp_log_max));
            if (config.lambda_varies_by_year)
                lambda = rng.uniform(config.lambda_min, config.lambda_max);
            country.tradable_output[static_cast<std::size_t>(y)] = lambda * gdp;
            country.nontradable_output[static_cast<std::size_t>(y)] = (1.0 - lambda) * gdp;
        }
        country.pair_effects.assign(static_cast<std::size_t>(n), 0.0);
    }

    if (config.pair_effect_sigma > 0.0) {
        // Mean log mass per directed pair; needed both for the correlated
        // draw and for standardizing it.
        std::vector<double> world_gdp_by_year(static_cast<std::size_t>(t), 0.0);
        for (int y = 0; y < t; ++y)
            for (const auto& country : world.countries)
                world_gdp_by_year[static_cast<std::size_t>(y)] += country.gdp(y);

        std::vector<double> mean_ln_mass;
        if (config.correlate_effects_with_regressors) {
            mean_ln_mass.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1));
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) {
                    if (a == b) continue;
                    double sum = 0.0;
                    for (int y = 0; y < t; ++y)
                        sum += std::log(world.countries[static_cast<std::size_t>(a)].gdp(y) *
                                        world.countries[static_cast<std::size_t>(b)].gdp(y) /
                                        world_gdp_by_year[static_cast<std::size_t>(y)]);
                    mean_ln_mass.push_back(sum / t);
                }
            }
            const double mean =
                std::accumulate(mean_ln_mass.begin(), mean_ln_mass.end(), 0.0) /
                static_cast<double>(mean_ln_mass.size());
            double var = 0.0;
            for (double m : mean_ln_mass) var += (m - mean) * (m - mean);
            var /= static_cast<double>(mean_ln_mass.size());
            const double sd = var > 0.0 ? std::sqrt(var) : 1.0;
            for (double& m : mean_ln_mass) m = (m - mean) / sd;
        }

        const double rho = kEffectRegressorCorrelation;
        std::size_t pair_index = 0;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                const double z = rng.normal();
                double effect = z;
                if (config.correlate_effects_with_regressors) {
                    effect = rho * mean_ln_mass[pair_index] +
                             std::sqrt(1.0 - rho * rho) * z;
                }
                world.countries[static_cast<std::size_t>(a)]
                    .pair_effects[static_cast<std::size_t>(b)] =
                    config.pair_effect_sigma * effect;
                ++pair_index;
            }
        }
    }

    return world;
}

std::vector<TradeFlow> generate_flows(const SyntheticWorld& world) {
    const int n = static_cast<int>(world.countries.size());
    const int t = world.n_years;
    Xoshiro256pp rng(derive_seed(world.seed, kStreamNoise));

    std::vector<double> world_gdp_by_year(static_cast<std::size_t>(t), 0.0);
    for (int y = 0; y < t; ++y)
        for (const auto& country : world.countries)
            world_gdp_by_year[static_cast<std::size_t>(y)] += country.gdp(y);

    std::vector<TradeFlow> flows;
    flows.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) *
                  static_cast<std::size_t>(t));
    for (int a = 0; a < n; ++a) {
        const auto& exporter = world.countries[static_cast<std::size_t>(a)];
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            const auto& importer = world.countries[static_cast<std::size_t>(b)];
            const double pair_effect = exporter.pair_effects[static_cast<std::size_t>(b)];
            for (int y = 0; y < t; ++y) {
                const double eps =
                    world.noise_sigma > 0.0 ? rng.normal(0.0, world.noise_sigma) : 0.0;
                const double mass = exporter.gdp(y) * importer.gdp(y) /
                                    world_gdp_by_year[static_cast<std::size_t>(y)];
                TradeFlow flow;
                flow.exporter = exporter.name;
                flow.importer = importer.name;
                flow.year = world.first_year + y;
                flow.value = exporter.lambda(y) * mass * std::exp(pair_effect) * std::exp(eps);
                flows.push_back(std::move(flow));
            }
        }
    }
    return flows;
}

std::vector<CountryYearGDP> gdp_records(const SyntheticWorld& world) {
    std::vector<CountryYearGDP> records;
    records.reserve(world.countries.size() * static_cast<std::size_t>(world.n_years));
    for (const auto& country : world.countries) {
        for (int y = 0; y < world.n_years; ++y)
            records.push_back({country.name, world.first_year + y, country.gdp(y)});
    }
    return records;
}

LambdaIndex lambda_index(const SyntheticWorld& world) {
    LambdaIndex index;
    for (const auto& country : world.countries) {
        for (int y = 0; y < world.n_years; ++y)
            index[{country.name, world.first_year + y}] = 100.0 * country.lambda(y);
    }
    return index;
}

RecoverySummary recovery_experiment(const GenConfig& config, int n_replications) {
    if (n_replications < 1) raise(ErrorCode::InvalidConfig, "need at least one replication");
    config.validate();

    RecoverySummary summary;
    summary.n_replications = n_replications;
    double sum_b0 = 0.0, sum_b1 = 0.0, sum_b2 = 0.0;

    for (int rep = 0; rep < n_replications; ++rep) {
        GenConfig rep_config = config;
        rep_config.seed = derive_seed(config.seed, static_cast<std::uint64_t>(rep) + 100);
        try {
            const auto world = generate_world(rep_config);
            const auto flows = generate_flows(world);
            const auto gdps = gdp_records(world);
            const auto lambdas = lambda_index(world);
            const YearRange years{world.first_year, world.first_year + world.n_years - 1};
            const auto assembly =
                build_panel(flows, gdps, lambdas, years, WorldGDPMode::sum_of_sample());

            const auto fe = econ::fixed_effects(assembly.panel);
            const auto re = econ::random_effects(assembly.panel);
            const auto pooled_fit = econ::pooled(assembly.panel);
            const auto hausman_test = econ::hausman(fe, re);
            const auto f_test = econ::f_test_panel_effects(pooled_fit, fe);
            const auto t1 = econ::t_test_equals(fe, 1, 1.0);
            const auto t2 = econ::t_test_equals(fe, 2, 1.0);

            sum_b0 += fe.coefficients(0);
            sum_b1 += fe.coefficients(1);
            sum_b2 += fe.coefficients(2);
            summary.max_abs_beta1_error =
                std::max(summary.max_abs_beta1_error, std::fabs(fe.coefficients(1) - 1.0));
            summary.max_abs_beta2_error =
                std::max(summary.max_abs_beta2_error, std::fabs(fe.coefficients(2) - 1.0));
            if (t1.p_value > 0.05) ++summary.coverage_beta1;
            if (t2.p_value > 0.05) ++summary.coverage_beta2;
            if (hausman_test.p_value < 0.05) ++summary.hausman_rejections;
            if (f_test.p_value < 0.05) ++summary.f_test_rejections;
            ++summary.n_completed;
        } catch (const Error& err) {
            ++summary.n_failed;
            summary.failures.push_back("replication " + std::to_string(rep) + ": " + err.what());
        }
    }

    if (summary.n_completed > 0) {
        summary.mean_beta0 = sum_b0 / summary.n_completed;
        summary.mean_beta1 = sum_b1 / summary.n_completed;
        summary.mean_beta2 = sum_b2 / summary.n_completed;
    }
    return summary;
}

}  // namespace gravitas::synth
