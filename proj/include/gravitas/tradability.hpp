#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gravitas/error.hpp"

namespace gravitas::tradability {

/// One sector's world GDP and world trade shares, both in percent.
struct SectorRow {
    std::string sector;
    double world_gdp_share = 0.0;
    double world_trade_share = 0.0;
};

enum class Classification { Tradable, NonTradable };

inline const char* classification_name(Classification c) noexcept {
    return c == Classification::Tradable ? "Tradable" : "NonTradable";
}

struct SectorTradability {
    std::string sector;
    double ratio = 0.0;
    Classification classification = Classification::NonTradable;
    double relative_tradability = 0.0;  // 0-100, most tradable sector = 100
};

struct TradabilityTable {
    std::vector<SectorTradability> sectors;  // file order preserved
    std::size_t most_tradable_index = 0;     // normalizer; first wins on ties
    double max_ratio = 0.0;
};

/// A country-year's sector composition of GDP, shares as fractions.
struct CountrySectorShares {
    std::string country;
    int year = 0;
    std::map<std::string, double> shares;
};

/// trade share / GDP share. Zero GDP share raises DivisionByZeroShare.
double sector_ratio(const SectorRow& row);

/// Tradable iff the sector trades strictly more than its production share.
Classification classify(double ratio);

TradabilityTable relative_tradability(std::span<const SectorRow> rows);

/// GDP-share-weighted mean of relative tradabilities, on the 0-100 scale.
double country_index(const CountrySectorShares& shares, const TradabilityTable& table);

/// Alternative index: unweighted sum of the shares of Tradable-classified
/// sectors, rescaled to 0-100. Reported alongside the continuous index.
double country_index_binary(const CountrySectorShares& shares, const TradabilityTable& table);

struct CountryAverage {
    double index_mean = 0.0;
    double binary_mean = 0.0;
    int years_observed = 0;
};

struct IndexSeries {
    std::map<std::pair<std::string, int>, double> index;         // (country, year)
    std::map<std::pair<std::string, int>, double> binary_index;  // (country, year)
    std::map<std::string, CountryAverage> averages;
};

IndexSeries index_series(std::span<const CountrySectorShares> all_shares,
                         const TradabilityTable& table);

}  // namespace gravitas::tradability
