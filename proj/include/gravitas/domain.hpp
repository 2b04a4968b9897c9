#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>

#include "gravitas/error.hpp"
#include "gravitas/types.hpp"

namespace gravitas {

/// How the world-GDP denominator Y_w is obtained for a given year: summed
/// over the sample countries (default) or supplied as an exogenous constant.
class WorldGDPMode {
  public:
    enum class Kind { SumOfSample, Exogenous };

    static WorldGDPMode sum_of_sample() noexcept { return WorldGDPMode(Kind::SumOfSample, 0.0); }

    static WorldGDPMode exogenous(double value) {
        if (!(value > 0.0)) raise(ErrorCode::InvalidWorldGDP, "exogenous world GDP must be > 0");
        return WorldGDPMode(Kind::Exogenous, value);
    }

    Kind kind() const noexcept { return kind_; }
    double value() const noexcept { return value_; }

  private:
    WorldGDPMode(Kind kind, double value) noexcept : kind_(kind), value_(value) {}

    Kind kind_;
    double value_;
};

double world_gdp(std::span<const CountryYearGDP> gdps, int year, const WorldGDPMode& mode);

/// Tradability index per (country, year), on the 0-100 scale of the sector
/// tables; enters the regression as ln(index/100).
using LambdaIndex = std::map<std::pair<std::string, int>, double>;

struct AssemblyReport {
    std::size_t rows_considered = 0;
    std::size_t rows_dropped = 0;
    std::map<std::string, std::size_t> drop_reasons;

    void drop(const std::string& reason) {
        ++rows_dropped;
        ++drop_reasons[reason];
    }
};

struct PanelAssembly {
    PanelDataset panel;
    AssemblyReport report;
};

/// Assemble the estimation panel from raw flows. One observation per flow
/// with value > 0 and all ingredients present; everything else is dropped
/// and counted. Output observation order is canonical (exporter, importer,
/// year), so assembly is invariant under permutation of the inputs.
PanelAssembly build_panel(std::span<const TradeFlow> flows,
                          std::span<const CountryYearGDP> gdps,
                          const LambdaIndex& lambdas,
                          const YearRange& years,
                          const WorldGDPMode& world_mode);

}  // namespace gravitas
