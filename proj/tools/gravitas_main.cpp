// Command-line front end: tradability tables, gravity estimation, the
// identification diagnostic, and the synthetic-data generator/verifier.
// Machine output goes to stdout (or --out), diagnostics to stderr.
// Exit codes: 0 success, 2 usage or schema problems, 3 computation infeasible.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gravitas/domain.hpp"
#include "gravitas/econometrics.hpp"
#include "gravitas/gravity.hpp"
#include "gravitas/io.hpp"
#include "gravitas/synth.hpp"
#include "gravitas/tradability.hpp"
#include "gravitas/types.hpp"

namespace {

using namespace gravitas;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitComputation = 3;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::SchemaError:
        case ErrorCode::IoError:
        case ErrorCode::InvalidConfig:
        case ErrorCode::InvalidWorldGDP:
        case ErrorCode::NegativeShare:
        case ErrorCode::InvalidDistribution:
            return kExitUsage;
        default:
            return kExitComputation;
    }
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        io::write_file(out_path, payload);
    }
}

void report_drops(const char* what, const io::IngestReport& report) {
    if (report.rows_dropped == 0) return;
    std::cerr << what << ": dropped " << report.rows_dropped << " of " << report.rows_read
              << " rows (";
    bool first = true;
    for (const auto& [reason, count] : report.drop_reasons) {
        if (!first) std::cerr << ", ";
        first = false;
        std::cerr << reason << "=" << count;
    }
    std::cerr << ")\n";
}

void report_assembly(const AssemblyReport& report) {
    std::cerr << "assembly: considered " << report.rows_considered << ", dropped "
              << report.rows_dropped;
    if (!report.drop_reasons.empty()) {
        std::cerr << " (";
        bool first = true;
        for (const auto& [reason, count] : report.drop_reasons) {
            if (!first) std::cerr << ", ";
            first = false;
            std::cerr << reason << "=" << count;
        }
        std::cerr << ")";
    }
    std::cerr << "\n";
}

io::ReportFormat parse_format(const std::string& name) {
    if (name == "json") return io::ReportFormat::Json;
    if (name == "tsv") return io::ReportFormat::Tsv;
    raise(ErrorCode::InvalidConfig, "unknown format '" + name + "'");
}

struct CommonPanelInputs {
    std::string trade_path;
    std::string gdp_path;
    int year_min = -1000000;
    int year_max = 1000000;
    double world_gdp_value = 0.0;  // 0 means sum-of-sample

    WorldGDPMode world_mode() const {
        return world_gdp_value > 0.0 ? WorldGDPMode::exogenous(world_gdp_value)
                                     : WorldGDPMode::sum_of_sample();
    }
};

void add_panel_inputs(CLI::App* cmd, CommonPanelInputs& inputs) {
    cmd->add_option("--trade", inputs.trade_path, "trade CSV (exporter,importer,year,value_usd)")
        ->required();
    cmd->add_option("--gdp", inputs.gdp_path, "GDP CSV (country,year,gdp_usd)")->required();
    cmd->add_option("--year-min", inputs.year_min, "first year admitted to the panel");
    cmd->add_option("--year-max", inputs.year_max, "last year admitted to the panel");
    cmd->add_option("--world-gdp-value", inputs.world_gdp_value,
                    "exogenous world GDP; omit to sum the sample countries per year");
}

std::vector<econ::TestResult> per_model_tests(const econ::EstimationResult& result) {
    std::vector<econ::TestResult> tests;
    if (result.method == econ::Method::RandomEffects)
        tests.push_back(econ::wald_joint_test(result));
    else
        tests.push_back(econ::regression_f_test(result));
    auto t1 = econ::t_test_equals(result, 1, 1.0);
    t1.name = "t_beta1_eq_1";
    tests.push_back(std::move(t1));
    auto t2 = econ::t_test_equals(result, 2, 1.0);
    t2.name = "t_beta2_eq_1";
    tests.push_back(std::move(t2));
    return tests;
}

void warn(const econ::EstimationResult& result) {
    for (const auto& message : result.warnings)
        std::cerr << econ::method_name(result.method) << ": " << message << "\n";
}

int cmd_tradability(const std::string& sectors_path, const std::string& shares_path,
                    const std::string& out_path, const std::string& index_csv_path,
                    io::ReportFormat format) {
    const auto rows = io::read_world_sectors_csv(io::read_file(sectors_path));
    const auto table = tradability::relative_tradability(rows);

    tradability::IndexSeries series;
    if (!shares_path.empty()) {
        const auto shares = io::read_country_sector_shares_csv(io::read_file(shares_path));
        report_drops("country shares", shares.report);
        series = tradability::index_series(shares.groups, table);
    }

    emit(io::write_report(table, series, format), out_path);

    if (!index_csv_path.empty()) {
        LambdaIndex index;
        for (const auto& [key, value] : series.index) index[key] = value;
        io::write_file(index_csv_path, io::write_lambda_csv(index));
    }
    return kExitOk;
}

int cmd_estimate(const CommonPanelInputs& inputs, const std::string& lambda_path,
                 const std::string& estimator, bool cluster_robust, const std::string& out_path,
                 const std::string& plot_path, io::ReportFormat format) {
    const auto trade = io::read_trade_csv(io::read_file(inputs.trade_path));
    report_drops("trade", trade.report);
    const auto gdp = io::read_gdp_csv(io::read_file(inputs.gdp_path));
    report_drops("gdp", gdp.report);
    const auto lambda = io::read_lambda_csv(io::read_file(lambda_path));
    report_drops("lambda", lambda.report);

    const auto assembly = build_panel(trade.flows, gdp.records, lambda.index,
                                      YearRange{inputs.year_min, inputs.year_max},
                                      inputs.world_mode());
    report_assembly(assembly.report);
    const PanelDataset& panel = assembly.panel;
    const econ::EstimOptions options{cluster_robust};

    std::string payload;
    if (estimator == "all") {
        io::EstimationReport report;
        auto pooled_fit = econ::pooled(panel, options);
        auto fe_fit = econ::fixed_effects(panel, options);
        auto re_fit = econ::random_effects(panel, options);
        warn(pooled_fit);
        warn(fe_fit);
        warn(re_fit);
        report.cross_tests.push_back(econ::hausman(fe_fit, re_fit));
        report.cross_tests.push_back(econ::f_test_panel_effects(pooled_fit, fe_fit));
        report.blocks.push_back({"pooled", pooled_fit, per_model_tests(pooled_fit)});
        report.blocks.push_back({"fixed_effects", fe_fit, per_model_tests(fe_fit)});
        report.blocks.push_back({"random_effects", re_fit, per_model_tests(re_fit)});
        payload = io::write_report(report, format);
        if (!plot_path.empty()) {
            std::string tsv = "pair\tyear\tln_lambda\tln_mass\tln_trade\tfitted_fe\n";
            for (const auto& obs : panel.observations) {
                const double fitted = fe_fit.coefficients(0) +
                                      fe_fit.coefficients(1) * obs.ln_lambda_exporter +
                                      fe_fit.coefficients(2) * obs.ln_mass;
                tsv += panel.pair_labels[static_cast<std::size_t>(obs.pair_id)] + "\t" +
                       std::to_string(obs.year) + "\t" + io::format_real(obs.ln_lambda_exporter) +
                       "\t" + io::format_real(obs.ln_mass) + "\t" +
                       io::format_real(obs.ln_trade) + "\t" + io::format_real(fitted) + "\n";
            }
            io::write_file(plot_path, tsv);
        }
    } else {
        econ::EstimationResult result;
        if (estimator == "pooled") result = econ::pooled(panel, options);
        else if (estimator == "fe") result = econ::fixed_effects(panel, options);
        else if (estimator == "re") result = econ::random_effects(panel, options);
        else
            raise(ErrorCode::InvalidConfig,
                  "unknown estimator '" + estimator + "' (use fe|re|pooled|all)");
        warn(result);
        const auto tests = per_model_tests(result);
        payload = io::write_report(result, tests, format);
        if (!plot_path.empty()) {
            std::string tsv = "pair\tyear\tln_lambda\tln_mass\tln_trade\tfitted\n";
            for (const auto& obs : panel.observations) {
                const double fitted = result.coefficients(0) +
                                      result.coefficients(1) * obs.ln_lambda_exporter +
                                      result.coefficients(2) * obs.ln_mass;
                tsv += panel.pair_labels[static_cast<std::size_t>(obs.pair_id)] + "\t" +
                       std::to_string(obs.year) + "\t" + io::format_real(obs.ln_lambda_exporter) +
                       "\t" + io::format_real(obs.ln_mass) + "\t" +
                       io::format_real(obs.ln_trade) + "\t" + io::format_real(fitted) + "\n";
            }
            io::write_file(plot_path, tsv);
        }
    }
    emit(payload, out_path);
    return kExitOk;
}

int cmd_identify(const CommonPanelInputs& inputs, const std::string& model_name, double gamma_a,
                 double gamma_b, const std::string& lambda_path, const std::string& out_path,
                 const std::string& plot_path, io::ReportFormat format) {
    const auto trade = io::read_trade_csv(io::read_file(inputs.trade_path));
    report_drops("trade", trade.report);
    const auto gdp = io::read_gdp_csv(io::read_file(inputs.gdp_path));
    report_drops("gdp", gdp.report);

    gravity::ModelSpec spec;
    if (model_name == "perfect") spec.variant = gravity::ModelVariant::PerfectSpecialization;
    else if (model_name == "imperfect-uniform")
        spec.variant = gravity::ModelVariant::ImperfectUniform;
    else if (model_name == "imperfect-pair") spec.variant = gravity::ModelVariant::ImperfectPair;
    else if (model_name == "tradability") spec.variant = gravity::ModelVariant::Tradability;
    else
        raise(ErrorCode::InvalidConfig, "unknown model '" + model_name + "'");

    LambdaIndex lambda;
    if (spec.variant == gravity::ModelVariant::Tradability) {
        if (lambda_path.empty())
            raise(ErrorCode::InvalidConfig, "--lambda is required for the tradability model");
        auto data = io::read_lambda_csv(io::read_file(lambda_path));
        report_drops("lambda", data.report);
        lambda = std::move(data.index);
    }

    std::map<std::pair<std::string, int>, double> gdp_of;
    for (const auto& rec : gdp.records)
        if (rec.gdp > 0.0) gdp_of[{rec.country, rec.year}] = rec.gdp;
    std::map<int, double> world_by_year;
    for (const auto& [key, value] : gdp_of) world_by_year[key.second] += value;

    std::vector<double> actual;
    std::vector<double> predicted;
    std::size_t skipped = 0;
    for (const auto& flow : trade.flows) {
        if (!YearRange{inputs.year_min, inputs.year_max}.contains(flow.year)) {
            ++skipped;
            continue;
        }
        auto ya = gdp_of.find({flow.exporter, flow.year});
        auto yb = gdp_of.find({flow.importer, flow.year});
        if (ya == gdp_of.end() || yb == gdp_of.end()) {
            ++skipped;
            continue;
        }
        double yw = inputs.world_gdp_value > 0.0 ? inputs.world_gdp_value
                                                 : world_by_year[flow.year];
        gravity::ModelParams params;
        params.gamma_a = gamma_a;
        params.gamma_b = gamma_b;
        if (spec.variant == gravity::ModelVariant::Tradability) {
            auto lam = lambda.find({flow.exporter, flow.year});
            if (lam == lambda.end() || !(lam->second > 0.0)) {
                ++skipped;
                continue;
            }
            params.lambda_a = lam->second / 100.0;
        }
        const auto prediction = gravity::predict_trade(spec, params, ya->second, yb->second, yw,
                                                       gravity::Direction::ExportOfA);
        actual.push_back(flow.value);
        predicted.push_back(prediction.value);
    }
    if (skipped > 0) std::cerr << "identify: skipped " << skipped << " flows\n";

    const auto result = gravity::identification_alpha(actual, predicted);
    auto t_test = econ::t_test_equals(result, 0, 1.0);
    t_test.name = "t_alpha_eq_1";
    const std::vector<econ::TestResult> tests{std::move(t_test)};
    emit(io::write_report(result, tests, format), out_path);

    if (!plot_path.empty()) {
        std::string tsv = "predicted\tactual\n";
        for (std::size_t i = 0; i < actual.size(); ++i)
            tsv += io::format_real(predicted[i]) + "\t" + io::format_real(actual[i]) + "\n";
        io::write_file(plot_path, tsv);
    }
    return kExitOk;
}

int cmd_simulate(const synth::GenConfig& config, const std::string& out_dir) {
    const auto world = synth::generate_world(config);
    const auto flows = synth::generate_flows(world);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    io::write_file(dir / "trade.csv", io::write_trade_csv(flows));
    io::write_file(dir / "gdp.csv", io::write_gdp_csv(synth::gdp_records(world)));
    io::write_file(dir / "lambda.csv", io::write_lambda_csv(synth::lambda_index(world)));
    std::cerr << "simulate: wrote " << flows.size() << " flows for " << world.countries.size()
              << " countries x " << world.n_years << " years to " << out_dir << "\n";
    return kExitOk;
}

std::string recovery_summary_json(const synth::RecoverySummary& summary,
                                  double noiseless_max_error) {
    std::string out = "{";
    out += "\"n_replications\":" + std::to_string(summary.n_replications);
    out += ",\"n_completed\":" + std::to_string(summary.n_completed);
    out += ",\"n_failed\":" + std::to_string(summary.n_failed);
    out += ",\"mean_coefficients\":[" + io::format_real(summary.mean_beta0) + "," +
           io::format_real(summary.mean_beta1) + "," + io::format_real(summary.mean_beta2) + "]";
    out += ",\"coverage_beta1\":" + std::to_string(summary.coverage_beta1);
    out += ",\"coverage_beta2\":" + std::to_string(summary.coverage_beta2);
    out += ",\"hausman_rejections\":" + std::to_string(summary.hausman_rejections);
    out += ",\"f_test_rejections\":" + std::to_string(summary.f_test_rejections);
    out += ",\"noiseless_max_error\":" + io::format_real(noiseless_max_error);
    out += "}\n";
    return out;
}

double noiseless_recovery_error(synth::GenConfig config) {
    config.sigma_noise = 0.0;
    config.pair_effect_sigma = 0.0;
    const auto world = synth::generate_world(config);
    const auto assembly = build_panel(synth::generate_flows(world), synth::gdp_records(world),
                                      synth::lambda_index(world),
                                      YearRange{world.first_year,
                                                world.first_year + world.n_years - 1},
                                      WorldGDPMode::sum_of_sample());
    double max_error = 0.0;
    for (const auto& fit : {econ::pooled(assembly.panel), econ::fixed_effects(assembly.panel),
                            econ::random_effects(assembly.panel)}) {
        max_error = std::max(max_error, std::fabs(fit.coefficients(0)));
        max_error = std::max(max_error, std::fabs(fit.coefficients(1) - 1.0));
        max_error = std::max(max_error, std::fabs(fit.coefficients(2) - 1.0));
    }
    return max_error;
}

int cmd_verify(const synth::GenConfig& config, int replications, const std::string& out_path) {
    const double noiseless_error = noiseless_recovery_error(config);
    const auto summary = synth::recovery_experiment(config, replications);
    for (const auto& failure : summary.failures) std::cerr << failure << "\n";
    emit(recovery_summary_json(summary, noiseless_error), out_path);
    if (noiseless_error > 1e-6) {
        std::cerr << "verify: noiseless recovery error " << noiseless_error
                  << " exceeds 1e-6\n";
        return kExitComputation;
    }
    return kExitOk;
}

void add_gen_flags(CLI::App* cmd, synth::GenConfig& config) {
    cmd->add_option("--seed", config.seed, "generator seed")->required();
    cmd->add_option("--countries", config.n_countries, "number of countries");
    cmd->add_option("--years", config.n_years, "number of years");
    cmd->add_option("--first-year", config.first_year, "first calendar year");
    cmd->add_option("--sigma-noise", config.sigma_noise, "lognormal noise sigma");
    cmd->add_option("--pair-effect-sigma", config.pair_effect_sigma,
                    "directed-pair effect sigma");
    cmd->add_option("--lambda-min", config.lambda_min, "lower bound of the tradable share");
    cmd->add_option("--lambda-max", config.lambda_max, "upper bound of the tradable share");
    cmd->add_option("--gdp-log-min", config.gdp_log_min, "lower bound of log GDP");
    cmd->add_option("--gdp-log-max", config.gdp_log_max, "upper bound of log GDP");
    cmd->add_flag("--lambda-by-year", config.lambda_varies_by_year,
                  "redraw the tradable share every year");
    cmd->add_flag("--correlated-effects", config.correlate_effects_with_regressors,
                  "correlate pair effects with log mass");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tradability-based gravity model toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file");

    std::string format_name = "json";
    std::string out_path;
    app.add_option("--format", format_name, "output format: json or tsv")
        ->check(CLI::IsMember({"json", "tsv"}));
    app.add_option("--out", out_path, "write machine output to this file instead of stdout");

    // tradability
    auto* trad = app.add_subcommand("tradability", "sector table and country index pipeline");
    std::string sectors_path, shares_path, index_csv_path;
    trad->add_option("--world-sectors", sectors_path,
                     "sector CSV (sector,world_gdp_share_pct,world_trade_share_pct)")
        ->required();
    trad->add_option("--country-shares", shares_path,
                     "country share CSV (country,year,sector,gdp_share)");
    trad->add_option("--index-csv", index_csv_path,
                     "also write the index series as a lambda CSV (country,year,index)");

    // estimate
    auto* est = app.add_subcommand("estimate", "panel estimation of the log-linear equation");
    CommonPanelInputs est_inputs;
    add_panel_inputs(est, est_inputs);
    std::string lambda_path, estimator = "all", plot_path;
    bool cluster_robust = false;
    est->add_option("--lambda", lambda_path, "lambda CSV (country,year,index on the 0-100 scale)")
        ->required();
    est->add_option("--estimator", estimator, "fe|re|pooled|all");
    est->add_flag("--cluster-robust", cluster_robust, "cluster-by-pair standard errors");
    est->add_option("--emit-plot-data", plot_path, "write per-observation x/y series as TSV");

    // identify
    auto* ident = app.add_subcommand("identify", "no-intercept regression on model predictions");
    CommonPanelInputs ident_inputs;
    add_panel_inputs(ident, ident_inputs);
    std::string model_name = "perfect", ident_lambda_path, ident_plot_path;
    double gamma_a = 0.0, gamma_b = 0.0;
    ident->add_option("--model", model_name,
                      "perfect|imperfect-uniform|imperfect-pair|tradability");
    ident->add_option("--gamma-a", gamma_a, "specialization index of the exporter");
    ident->add_option("--gamma-b", gamma_b, "specialization index of the importer");
    ident->add_option("--lambda", ident_lambda_path, "lambda CSV for the tradability model");
    ident->add_option("--emit-plot-data", ident_plot_path, "write predicted/actual pairs as TSV");

    // simulate
    auto* sim = app.add_subcommand("simulate", "emit synthetic trade, GDP, and lambda CSVs");
    synth::GenConfig sim_config;
    std::string out_dir;
    add_gen_flags(sim, sim_config);
    sim->add_option("--out-dir", out_dir, "directory for trade.csv, gdp.csv, lambda.csv")
        ->required();

    // verify
    auto* ver = app.add_subcommand("verify", "recovery experiment over seeded replications");
    synth::GenConfig ver_config;
    ver_config.pair_effect_sigma = 1.0;
    ver_config.lambda_varies_by_year = true;
    int replications = 100;
    add_gen_flags(ver, ver_config);
    ver->add_option("--replications", replications, "number of replications");

    // Parent-level --format/--out may be given after the subcommand name.
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        const auto format = parse_format(format_name);
        if (trad->parsed())
            return cmd_tradability(sectors_path, shares_path, out_path, index_csv_path, format);
        if (est->parsed())
            return cmd_estimate(est_inputs, lambda_path, estimator, cluster_robust, out_path,
                                plot_path, format);
        if (ident->parsed())
            return cmd_identify(ident_inputs, model_name, gamma_a, gamma_b, ident_lambda_path,
                                out_path, ident_plot_path, format);
        if (sim->parsed()) return cmd_simulate(sim_config, out_dir);
        if (ver->parsed()) return cmd_verify(ver_config, replications, out_path);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_code_for(err.code());
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitComputation;
    }
    return kExitUsage;
}
