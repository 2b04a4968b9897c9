#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gravitas/domain.hpp"
#include "gravitas/econometrics.hpp"
#include "gravitas/tradability.hpp"
#include "gravitas/types.hpp"

namespace gravitas::io {

struct IngestReport {
    std::size_t rows_read = 0;
    std::size_t rows_dropped = 0;
    std::map<std::string, std::size_t> drop_reasons;

    void drop(const std::string& reason) {
        ++rows_dropped;
        ++drop_reasons[reason];
    }
};

// CSV dialect: comma separated, '.' decimal point, no thousands separators,
// LF or CRLF, first row always the exact header named per schema. Malformed
// data rows are dropped with a counted reason; a bad header is a SchemaError.

struct TradeData {
    std::vector<TradeFlow> flows;
    IngestReport report;
};
TradeData read_trade_csv(std::string_view text);  // exporter,importer,year,value_usd

struct GdpData {
    std::vector<CountryYearGDP> records;
    IngestReport report;
};
GdpData read_gdp_csv(std::string_view text);  // country,year,gdp_usd

// sector,world_gdp_share_pct,world_trade_share_pct ; negative shares are an
// error, not a drop.
std::vector<tradability::SectorRow> read_world_sectors_csv(std::string_view text);

struct CountrySharesData {
    std::vector<tradability::CountrySectorShares> groups;
    IngestReport report;
};
// country,year,sector,gdp_share with gdp_share a fraction in [0,1]; groups
// whose shares do not sum into [0.9, 1.1] are dropped.
CountrySharesData read_country_sector_shares_csv(std::string_view text);

struct LambdaData {
    LambdaIndex index;  // 0-100 scale
    IngestReport report;
};
LambdaData read_lambda_csv(std::string_view text);  // country,year,index

enum class ReportFormat { Json, Tsv };

/// Estimation report payload: one or more labelled results plus the tests
/// attached to each, plus cross-model tests (Hausman, panel-effects F).
struct EstimationReport {
    struct Block {
        std::string label;
        econ::EstimationResult result;
        std::vector<econ::TestResult> tests;
    };
    std::vector<Block> blocks;
    std::vector<econ::TestResult> cross_tests;
};

std::string write_report(const EstimationReport& report, ReportFormat format);
std::string write_report(const econ::EstimationResult& result,
                         std::span<const econ::TestResult> tests, ReportFormat format);
std::string write_report(const tradability::TradabilityTable& table,
                         const tradability::IndexSeries& series, ReportFormat format);
std::string write_report(std::span<const econ::TestResult> tests, ReportFormat format);

/// Data-file emission used by the simulator: lossless shortest round-trip
/// number rendering, one schema per file.
std::string write_trade_csv(std::span<const TradeFlow> flows);
std::string write_gdp_csv(std::span<const CountryYearGDP> records);
std::string write_lambda_csv(const LambdaIndex& index);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// %.10g rendering shared by every report writer.
std::string format_real(double value);
/// Shortest round-trip rendering for data files.
std::string format_exact(double value);

}  // namespace gravitas::io
