#pragma once

#include <string>
#include <vector>

namespace gravitas {

/// One country-year national account record, current US dollars.
struct CountryYearGDP {
    std::string country;  // opaque case-sensitive token, ISO3 recommended
    int year = 0;
    double gdp = 0.0;  // > 0 for any record admitted to a panel
};

/// One directed exporter->importer flow for one year, current US dollars.
struct TradeFlow {
    std::string exporter;
    std::string importer;
    int year = 0;
    double value = 0.0;  // >= 0; zero flows are dropped at panel assembly
};

/// One estimation row in log form: ln X_ab on [1, ln lambda_a, ln(Ya*Yb/Yw)].
struct PanelObservation {
    int pair_id = 0;  // dense group key for the directed (exporter, importer) pair
    int year = 0;
    double ln_trade = 0.0;
    double ln_lambda_exporter = 0.0;
    double ln_mass = 0.0;
};

/// Unbalanced panel of directed-pair groups. Observations are kept in the
/// canonical order (exporter, importer, year); pair_id indexes pair_labels.
struct PanelDataset {
    std::vector<PanelObservation> observations;
    int group_count = 0;
    std::vector<std::string> pair_labels;      // pair_id -> "EXP>IMP"
    std::vector<std::string> regressor_names;  // slope regressors, intercept implicit

    std::size_t size() const noexcept { return observations.size(); }
};

/// Inclusive year window.
struct YearRange {
    int first = 0;
    int last = 0;

    bool contains(int year) const noexcept { return year >= first && year <= last; }
};

}  // namespace gravitas
