#include "gravitas/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

namespace gravitas::io {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

void check_header(std::string_view got, std::string_view expected, const char* schema) {
    if (got == expected) return;
    // Name the first column that differs so the CLI diagnostic is actionable.
    auto got_cols = split_fields(got);
    auto want_cols = split_fields(expected);
    std::string detail;
    for (std::size_t i = 0; i < want_cols.size(); ++i) {
        if (i >= got_cols.size()) {
            detail = "missing column '" + std::string(want_cols[i]) + "'";
            break;
        }
        if (got_cols[i] != want_cols[i]) {
            detail = "expected column '" + std::string(want_cols[i]) + "', found '" +
                     std::string(got_cols[i]) + "'";
            break;
        }
    }
    if (detail.empty()) detail = "unexpected trailing columns";
    raise(ErrorCode::SchemaError, std::string(schema) + " header mismatch: " + detail +
                                      " (expected '" + std::string(expected) + "')");
}

bool parse_double(std::string_view field, double& out) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

bool parse_int(std::string_view field, int& out) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

bool nonempty_token(std::string_view field) {
    return !field.empty() && field.find_first_not_of(" \t") != std::string_view::npos;
}

}  // namespace

TradeData read_trade_csv(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) raise(ErrorCode::SchemaError, "trade CSV is empty, header required");
    check_header(lines[0], "exporter,importer,year,value_usd", "trade CSV");

    TradeData out;
    std::set<std::tuple<std::string, std::string, int>> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        ++out.report.rows_read;
        auto fields = split_fields(lines[i]);
        if (fields.size() != 4) {
            out.report.drop("bad_field_count");
            continue;
        }
        if (!nonempty_token(fields[0]) || !nonempty_token(fields[1])) {
            out.report.drop("empty_country");
            continue;
        }
        int year = 0;
        if (!parse_int(fields[2], year)) {
            out.report.drop("bad_year");
            continue;
        }
        double value = 0.0;
        if (!parse_double(fields[3], value)) {
            out.report.drop("bad_value");
            continue;
        }
        if (value < 0.0) {
            out.report.drop("negative_value");
            continue;
        }
        TradeFlow flow{std::string(fields[0]), std::string(fields[1]), year, value};
        if (flow.exporter == flow.importer) {
            out.report.drop("self_trade");
            continue;
        }
        if (!seen.emplace(flow.exporter, flow.importer, flow.year).second) {
            out.report.drop("duplicate_key");
            continue;
        }
        out.flows.push_back(std::move(flow));
    }
    return out;
}

GdpData read_gdp_csv(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) raise(ErrorCode::SchemaError, "GDP CSV is empty, header required");
    check_header(lines[0], "country,year,gdp_usd", "GDP CSV");

    GdpData out;
    std::set<std::pair<std::string, int>> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        ++out.report.rows_read;
        auto fields = split_fields(lines[i]);
        if (fields.size() != 3) {
            out.report.drop("bad_field_count");
            continue;
        }
        if (!nonempty_token(fields[0])) {
            out.report.drop("empty_country");
            continue;
        }
        int year = 0;
        if (!parse_int(fields[1], year)) {
            out.report.drop("bad_year");
            continue;
        }
        double gdp = 0.0;
        if (!parse_double(fields[2], gdp)) {
            out.report.drop("bad_value");
            continue;
        }
        if (!(gdp > 0.0)) {
            out.report.drop("nonpositive_gdp");
            continue;
        }
        CountryYearGDP rec{std::string(fields[0]), year, gdp};
        if (!seen.emplace(rec.country, rec.year).second) {
            out.report.drop("duplicate_key");
            continue;
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

std::vector<tradability::SectorRow> read_world_sectors_csv(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) raise(ErrorCode::SchemaError, "sector CSV is empty, header required");
    check_header(lines[0], "sector,world_gdp_share_pct,world_trade_share_pct", "sector CSV");

    std::vector<tradability::SectorRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto fields = split_fields(lines[i]);
        if (fields.size() != 3)
            raise(ErrorCode::SchemaError,
                  "sector CSV row " + std::to_string(i + 1) + " has wrong field count");
        tradability::SectorRow row;
        row.sector = std::string(fields[0]);
        if (!parse_double(fields[1], row.world_gdp_share) ||
            !parse_double(fields[2], row.world_trade_share))
            raise(ErrorCode::SchemaError,
                  "sector CSV row " + std::to_string(i + 1) + " has unparseable share");
        if (row.world_gdp_share < 0.0 || row.world_trade_share < 0.0)
            raise(ErrorCode::NegativeShare,
                  "sector '" + row.sector + "' has a negative share");
        rows.push_back(std::move(row));
    }
    return rows;
}

CountrySharesData read_country_sector_shares_csv(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty())
        raise(ErrorCode::SchemaError, "country share CSV is empty, header required");
    check_header(lines[0], "country,year,sector,gdp_share", "country share CSV");

    CountrySharesData out;
    std::map<std::pair<std::string, int>, tradability::CountrySectorShares> groups;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        ++out.report.rows_read;
        auto fields = split_fields(lines[i]);
        if (fields.size() != 4) {
            out.report.drop("bad_field_count");
            continue;
        }
        if (!nonempty_token(fields[0]) || !nonempty_token(fields[2])) {
            out.report.drop("empty_token");
            continue;
        }
        int year = 0;
        if (!parse_int(fields[1], year)) {
            out.report.drop("bad_year");
            continue;
        }
        double share = 0.0;
        if (!parse_double(fields[3], share)) {
            out.report.drop("bad_value");
            continue;
        }
        if (share < 0.0 || share > 1.0) {
            out.report.drop("share_out_of_unit_interval");
            continue;
        }
        auto& group = groups[{std::string(fields[0]), year}];
        group.country = std::string(fields[0]);
        group.year = year;
        if (!group.shares.emplace(std::string(fields[2]), share).second) {
            out.report.drop("duplicate_key");
            continue;
        }
    }
    for (auto& [key, group] : groups) {
        double sum = 0.0;
        for (const auto& [sector, share] : group.shares) sum += share;
        if (sum < 0.9 || sum > 1.1) {
            out.report.drop("share_sum_out_of_range");
            continue;
        }
        out.groups.push_back(std::move(group));
    }
    return out;
}

LambdaData read_lambda_csv(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) raise(ErrorCode::SchemaError, "lambda CSV is empty, header required");
    check_header(lines[0], "country,year,index", "lambda CSV");

    LambdaData out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        ++out.report.rows_read;
        auto fields = split_fields(lines[i]);
        if (fields.size() != 3) {
            out.report.drop("bad_field_count");
            continue;
        }
        if (!nonempty_token(fields[0])) {
            out.report.drop("empty_country");
            continue;
        }
        int year = 0;
        if (!parse_int(fields[1], year)) {
            out.report.drop("bad_year");
            continue;
        }
        double index = 0.0;
        if (!parse_double(fields[2], index)) {
            out.report.drop("bad_value");
            continue;
        }
        if (!out.index.emplace(std::make_pair(std::string(fields[0]), year), index).second) {
            out.report.drop("duplicate_key");
            continue;
        }
    }
    return out;
}

std::string format_real(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.10g", value);
    return buffer;
}

std::string format_exact(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{}) return format_real(value);
    return std::string(buffer, ptr);
}

namespace {

std::string json_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buffer[8];
                    std::snprintf(buffer, sizeof(buffer), "\\u%04x", c);
                    out += buffer;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

void append_test_json(std::string& out, const econ::TestResult& test) {
    out += "{\"name\":\"" + json_escape(test.name) + "\",\"statistic\":" +
           format_real(test.statistic) + ",\"df\":[";
    for (std::size_t i = 0; i < test.df.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(test.df[i]);
    }
    out += "],\"p_value\":" + format_real(test.p_value) + "}";
}

void append_tests_json(std::string& out, std::span<const econ::TestResult> tests) {
    out += "\"tests\":[";
    for (std::size_t i = 0; i < tests.size(); ++i) {
        if (i > 0) out += ',';
        append_test_json(out, tests[i]);
    }
    out += "]";
}

void append_result_json(std::string& out, const econ::EstimationResult& result,
                        std::span<const econ::TestResult> tests) {
    out += "{\"method\":\"" + std::string(econ::method_name(result.method)) + "\",";
    out += "\"coefficients\":[";
    for (Eigen::Index i = 0; i < result.coefficients.size(); ++i) {
        if (i > 0) out += ',';
        out += format_real(result.coefficients(i));
    }
    out += "],\"coefficient_names\":[";
    for (std::size_t i = 0; i < result.coef_names.size(); ++i) {
        if (i > 0) out += ',';
        out += '"' + json_escape(result.coef_names[i]) + '"';
    }
    out += "],\"std_errors\":[";
    for (Eigen::Index i = 0; i < result.std_errors.size(); ++i) {
        if (i > 0) out += ',';
        out += format_real(result.std_errors(i));
    }
    out += "],\"n_obs\":" + std::to_string(result.n_obs);
    out += ",\"n_groups\":" + std::to_string(result.n_groups);
    out += ",\"ssr\":" + format_real(result.ssr);
    out += ",\"df_resid\":" + std::to_string(result.df_resid);
    if (result.method == econ::Method::RandomEffects)
        out += ",\"theta\":" + format_real(result.theta);
    out += ',';
    append_tests_json(out, tests);
    out += '}';
}

void append_test_tsv(std::string& out, const econ::TestResult& test) {
    out += "test\t" + test.name + "\t" + format_real(test.statistic) + "\t";
    for (std::size_t i = 0; i < test.df.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(test.df[i]);
    }
    out += "\t" + format_real(test.p_value) + "\n";
}

void append_result_tsv(std::string& out, const econ::EstimationResult& result,
                       std::span<const econ::TestResult> tests) {
    out += "method\t" + std::string(econ::method_name(result.method)) + "\n";
    for (Eigen::Index i = 0; i < result.coefficients.size(); ++i) {
        const std::string name = static_cast<std::size_t>(i) < result.coef_names.size()
                                     ? result.coef_names[static_cast<std::size_t>(i)]
                                     : "coef" + std::to_string(i);
        out += "coefficient\t" + name + "\t" + format_real(result.coefficients(i)) + "\t" +
               format_real(result.std_errors(i)) + "\n";
    }
    out += "n_obs\t" + std::to_string(result.n_obs) + "\n";
    out += "n_groups\t" + std::to_string(result.n_groups) + "\n";
    out += "ssr\t" + format_real(result.ssr) + "\n";
    out += "df_resid\t" + std::to_string(result.df_resid) + "\n";
    if (result.method == econ::Method::RandomEffects)
        out += "theta\t" + format_real(result.theta) + "\n";
    for (const auto& test : tests) append_test_tsv(out, test);
}

}  // namespace

std::string write_report(const econ::EstimationResult& result,
                         std::span<const econ::TestResult> tests, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::Json) {
        append_result_json(out, result, tests);
        out += '\n';
    } else {
        append_result_tsv(out, result, tests);
    }
    return out;
}

std::string write_report(const EstimationReport& report, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::Json) {
        out += '{';
        for (std::size_t i = 0; i < report.blocks.size(); ++i) {
            if (i > 0) out += ',';
            out += '"' + json_escape(report.blocks[i].label) + "\":";
            append_result_json(out, report.blocks[i].result, report.blocks[i].tests);
        }
        if (!report.blocks.empty()) out += ',';
        append_tests_json(out, report.cross_tests);
        out += "}\n";
    } else {
        for (const auto& block : report.blocks) {
            out += "block\t" + block.label + "\n";
            append_result_tsv(out, block.result, block.tests);
        }
        for (const auto& test : report.cross_tests) append_test_tsv(out, test);
    }
    return out;
}

std::string write_report(std::span<const econ::TestResult> tests, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::Json) {
        out += '{';
        append_tests_json(out, tests);
        out += "}\n";
    } else {
        for (const auto& test : tests) append_test_tsv(out, test);
    }
    return out;
}

std::string write_report(const tradability::TradabilityTable& table,
                         const tradability::IndexSeries& series, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::Json) {
        out += "{\"sectors\":[";
        for (std::size_t i = 0; i < table.sectors.size(); ++i) {
            const auto& s = table.sectors[i];
            if (i > 0) out += ',';
            out += "{\"sector\":\"" + json_escape(s.sector) + "\",\"ratio\":" +
                   format_real(s.ratio) + ",\"classification\":\"" +
                   tradability::classification_name(s.classification) +
                   "\",\"relative_tradability\":" + format_real(s.relative_tradability) + "}";
        }
        out += "],\"most_tradable\":\"" +
               json_escape(table.sectors[table.most_tradable_index].sector) + "\"";
        out += ",\"index\":[";
        bool first = true;
        for (const auto& [key, value] : series.index) {
            if (!first) out += ',';
            first = false;
            out += "{\"country\":\"" + json_escape(key.first) +
                   "\",\"year\":" + std::to_string(key.second) +
                   ",\"index\":" + format_real(value) +
                   ",\"binary_index\":" + format_real(series.binary_index.at(key)) + "}";
        }
        out += "],\"averages\":[";
        first = true;
        for (const auto& [country, avg] : series.averages) {
            if (!first) out += ',';
            first = false;
            out += "{\"country\":\"" + json_escape(country) +
                   "\",\"index\":" + format_real(avg.index_mean) +
                   ",\"binary_index\":" + format_real(avg.binary_mean) +
                   ",\"years_observed\":" + std::to_string(avg.years_observed) + "}";
        }
        out += "]}\n";
    } else {
        for (const auto& s : table.sectors) {
            out += "sector\t" + s.sector + "\t" + format_real(s.ratio) + "\t" +
                   tradability::classification_name(s.classification) + "\t" +
                   format_real(s.relative_tradability) + "\n";
        }
        out += "most_tradable\t" + table.sectors[table.most_tradable_index].sector + "\n";
        for (const auto& [key, value] : series.index) {
            out += "index\t" + key.first + "\t" + std::to_string(key.second) + "\t" +
                   format_real(value) + "\t" + format_real(series.binary_index.at(key)) + "\n";
        }
        for (const auto& [country, avg] : series.averages) {
            out += "average\t" + country + "\t" + format_real(avg.index_mean) + "\t" +
                   format_real(avg.binary_mean) + "\t" + std::to_string(avg.years_observed) +
                   "\n";
        }
    }
    return out;
}

std::string write_trade_csv(std::span<const TradeFlow> flows) {
    std::string out = "exporter,importer,year,value_usd\n";
    for (const auto& flow : flows) {
        out += flow.exporter + ',' + flow.importer + ',' + std::to_string(flow.year) + ',' +
               format_exact(flow.value) + '\n';
    }
    return out;
}

std::string write_gdp_csv(std::span<const CountryYearGDP> records) {
    std::string out = "country,year,gdp_usd\n";
    for (const auto& rec : records) {
        out += rec.country + ',' + std::to_string(rec.year) + ',' + format_exact(rec.gdp) + '\n';
    }
    return out;
}

std::string write_lambda_csv(const LambdaIndex& index) {
    std::string out = "country,year,index\n";
    for (const auto& [key, value] : index) {
        out += key.first + ',' + std::to_string(key.second) + ',' + format_exact(value) + '\n';
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) raise(ErrorCode::IoError, "failed reading '" + path.string() + "'");
    return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) raise(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

}  // namespace gravitas::io
