#include "gravitas/tradability.hpp"

namespace gravitas::tradability {

double sector_ratio(const SectorRow& row) {
    if (!(row.world_gdp_share > 0.0))
        raise(ErrorCode::DivisionByZeroShare,
              "sector '" + row.sector + "' has nonpositive world GDP share");
    if (row.world_trade_share < 0.0)
        raise(ErrorCode::NegativeShare,
              "sector '" + row.sector + "' has negative world trade share");
    return row.world_trade_share / row.world_gdp_share;
}

Classification classify(double ratio) {
    return ratio > 1.0 ? Classification::Tradable : Classification::NonTradable;
}

TradabilityTable relative_tradability(std::span<const SectorRow> rows) {
    if (rows.empty()) raise(ErrorCode::EmptyTable, "no sector rows");

    TradabilityTable table;
    table.sectors.reserve(rows.size());
    for (const auto& row : rows) {
        SectorTradability entry;
        entry.sector = row.sector;
        entry.ratio = sector_ratio(row);
        entry.classification = classify(entry.ratio);
        table.sectors.push_back(std::move(entry));
    }
    table.most_tradable_index = 0;
    for (std::size_t i = 1; i < table.sectors.size(); ++i) {
        if (table.sectors[i].ratio > table.sectors[table.most_tradable_index].ratio)
            table.most_tradable_index = i;  // strict: first of a tie keeps the flag
    }
    table.max_ratio = table.sectors[table.most_tradable_index].ratio;
    if (!(table.max_ratio > 0.0))
        raise(ErrorCode::EmptyTable, "all sector ratios are zero, nothing to normalize");
    for (auto& entry : table.sectors)
        entry.relative_tradability = 100.0 * entry.ratio / table.max_ratio;
    return table;
}

namespace {

const SectorTradability& lookup_sector(const TradabilityTable& table, const std::string& name) {
    for (const auto& entry : table.sectors)
        if (entry.sector == name) return entry;
    raise(ErrorCode::SectorMismatch, "sector '" + name + "' not present in tradability table");
}

}  // namespace

double country_index(const CountrySectorShares& shares, const TradabilityTable& table) {
    double index = 0.0;
    for (const auto& [sector, share] : shares.shares)
        index += share * lookup_sector(table, sector).relative_tradability;
    return index;
}

double country_index_binary(const CountrySectorShares& shares, const TradabilityTable& table) {
    double sum = 0.0;
    for (const auto& [sector, share] : shares.shares) {
        if (lookup_sector(table, sector).classification == Classification::Tradable)
            sum += share;
    }
    return 100.0 * sum;
}

IndexSeries index_series(std::span<const CountrySectorShares> all_shares,
                         const TradabilityTable& table) {
    IndexSeries series;
    struct Accumulator {
        double index_sum = 0.0;
        double binary_sum = 0.0;
        int years = 0;
    };
    std::map<std::string, Accumulator> acc;
    for (const auto& shares : all_shares) {
        const double idx = country_index(shares, table);
        const double bin = country_index_binary(shares, table);
        series.index[{shares.country, shares.year}] = idx;
        series.binary_index[{shares.country, shares.year}] = bin;
        auto& a = acc[shares.country];
        a.index_sum += idx;
        a.binary_sum += bin;
        ++a.years;
    }
    for (const auto& [country, a] : acc) {
        CountryAverage avg;
        avg.index_mean = a.index_sum / a.years;
        avg.binary_mean = a.binary_sum / a.years;
        avg.years_observed = a.years;
        series.averages.emplace(country, avg);
    }
    return series;
}

}  // namespace gravitas::tradability
