#include "gravitas/domain.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

namespace gravitas {

double world_gdp(std::span<const CountryYearGDP> gdps, int year, const WorldGDPMode& mode) {
    if (mode.kind() == WorldGDPMode::Kind::Exogenous) {
        if (!(mode.value() > 0.0))
            raise(ErrorCode::InvalidWorldGDP, "exogenous world GDP must be > 0");
        return mode.value();
    }
    double sum = 0.0;
    bool any = false;
    for (const auto& rec : gdps) {
        if (rec.year == year && rec.gdp > 0.0) {
            sum += rec.gdp;
            any = true;
        }
    }
    if (!any) raise(ErrorCode::MissingYear, "no GDP records for year " + std::to_string(year));
    return sum;
}

namespace {

struct CandidateRow {
    std::string exporter;
    std::string importer;
    int year;
    double value;
    double ln_trade;
    double ln_lambda;
    double ln_mass;
};

}  // namespace

PanelAssembly build_panel(std::span<const TradeFlow> flows,
                          std::span<const CountryYearGDP> gdps,
                          const LambdaIndex& lambdas,
                          const YearRange& years,
                          const WorldGDPMode& world_mode) {
    PanelAssembly out;
    AssemblyReport& report = out.report;

    // Lookup tables: nonpositive GDP records are treated as absent.
    std::map<std::pair<std::string, int>, double> gdp_of;
    for (const auto& rec : gdps) {
        if (rec.gdp > 0.0) gdp_of.emplace(std::make_pair(rec.country, rec.year), rec.gdp);
    }

    std::map<int, double> world_by_year;
    auto world_for_year = [&](int year) -> double {
        if (world_mode.kind() == WorldGDPMode::Kind::Exogenous) return world_mode.value();
        auto it = world_by_year.find(year);
        if (it != world_by_year.end()) return it->second;
        double sum = 0.0;
        for (const auto& [key, gdp] : gdp_of)
            if (key.second == year) sum += gdp;
        world_by_year.emplace(year, sum);
        return sum;
    };

    std::vector<CandidateRow> rows;
    rows.reserve(flows.size());
    for (const auto& flow : flows) {
        ++report.rows_considered;
        if (!years.contains(flow.year)) {
            report.drop("year_out_of_range");
            continue;
        }
        if (flow.exporter == flow.importer) {
            report.drop("self_trade");
            continue;
        }
        if (!(flow.value > 0.0)) {
            report.drop("nonpositive_trade");
            continue;
        }
        auto ya = gdp_of.find({flow.exporter, flow.year});
        if (ya == gdp_of.end()) {
            report.drop("missing_exporter_gdp");
            continue;
        }
        auto yb = gdp_of.find({flow.importer, flow.year});
        if (yb == gdp_of.end()) {
            report.drop("missing_importer_gdp");
            continue;
        }
        auto lam = lambdas.find({flow.exporter, flow.year});
        if (lam == lambdas.end()) {
            report.drop("missing_lambda");
            continue;
        }
        if (!(lam->second > 0.0)) {
            report.drop("nonpositive_lambda");
            continue;
        }
        const double yw = world_for_year(flow.year);
        if (!(yw > 0.0)) {
            report.drop("missing_world_gdp");
            continue;
        }
        CandidateRow row;
        row.exporter = flow.exporter;
        row.importer = flow.importer;
        row.year = flow.year;
        row.value = flow.value;
        row.ln_trade = std::log(flow.value);
        row.ln_lambda = std::log(lam->second / 100.0);
        row.ln_mass = std::log(ya->second * yb->second / yw);
        rows.push_back(std::move(row));
    }

    // Canonical order; value participates only to make duplicate handling
    // independent of input order.
    std::sort(rows.begin(), rows.end(), [](const CandidateRow& a, const CandidateRow& b) {
        return std::tie(a.exporter, a.importer, a.year, a.value) <
               std::tie(b.exporter, b.importer, b.year, b.value);
    });

    PanelDataset& panel = out.panel;
    panel.regressor_names = {"ln_lambda_exporter", "ln_mass"};
    std::string prev_pair;
    const CandidateRow* prev_row = nullptr;
    for (const auto& row : rows) {
        if (prev_row != nullptr && prev_row->exporter == row.exporter &&
            prev_row->importer == row.importer && prev_row->year == row.year) {
            report.drop("duplicate_key");
            continue;
        }
        std::string pair_label = row.exporter + ">" + row.importer;
        if (panel.pair_labels.empty() || pair_label != prev_pair) {
            panel.pair_labels.push_back(pair_label);
            prev_pair = std::move(pair_label);
        }
        PanelObservation obs;
        obs.pair_id = static_cast<int>(panel.pair_labels.size()) - 1;
        obs.year = row.year;
        obs.ln_trade = row.ln_trade;
        obs.ln_lambda_exporter = row.ln_lambda;
        obs.ln_mass = row.ln_mass;
        panel.observations.push_back(obs);
        prev_row = &row;
    }
    panel.group_count = static_cast<int>(panel.pair_labels.size());

    if (panel.observations.empty())
        raise(ErrorCode::EmptyPanel, "no usable observations after assembly");
    return out;
}

}  // namespace gravitas
