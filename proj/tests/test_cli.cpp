#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "gravitas/io.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kCli = GRAVITAS_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() / "gravitas_cli_test";
    fs::create_directories(dir);
    return dir;
}

RunResult run(const std::string& args) {
    const auto dir = scratch_dir();
    const auto out_file = dir / "stdout.txt";
    const auto err_file = dir / "stderr.txt";
    const std::string cmd =
        kCli + " " + args + " > " + out_file.string() + " 2> " + err_file.string();
    const int raw = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(raw);
    result.out = gravitas::io::read_file(out_file);
    result.err = gravitas::io::read_file(err_file);
    return result;
}

void write(const fs::path& path, const std::string& text) {
    std::ofstream stream(path, std::ios::binary);
    stream << text;
}

const std::string kSectorsCsv =
    "sector,world_gdp_share_pct,world_trade_share_pct\n"
    "Agriculture,3.35,5.61\n"
    "Non-manufacturing industry,10.00,7.20\n"
    "Chemicals,1.68,18.40\n"
    "Food beverages and tobacco,1.87,1.12\n"
    "Machinery and transport equipment,4.57,32.99\n"
    "Other manufacturing,7.77,7.08\n"
    "Textiles and clothing,0.46,6.17\n"
    "Services,68.37,21.43\n";

}  // namespace

TEST_CASE("tradability command emits the table and index") {
    const auto dir = scratch_dir();
    write(dir / "sectors.csv", kSectorsCsv);
    write(dir / "shares.csv",
          "country,year,sector,gdp_share\n"
          "USA,2000,Agriculture,0.04\n"
          "USA,2000,Services,0.96\n");
    const auto result = run("tradability --world-sectors " + (dir / "sectors.csv").string() +
                            " --country-shares " + (dir / "shares.csv").string());
    CHECK(result.exit_code == 0);
    const auto parsed = json::parse(result.out);
    CHECK(parsed["sectors"].size() == 8);
    CHECK(parsed["most_tradable"] == "Textiles and clothing");
    CHECK(parsed["index"].size() == 1);
    CHECK(parsed["index"][0]["country"] == "USA");
}

TEST_CASE("tradability with an empty country file still emits the table") {
    const auto dir = scratch_dir();
    write(dir / "sectors.csv", kSectorsCsv);
    write(dir / "empty_shares.csv", "country,year,sector,gdp_share\n");
    const auto result = run("tradability --world-sectors " + (dir / "sectors.csv").string() +
                            " --country-shares " + (dir / "empty_shares.csv").string());
    CHECK(result.exit_code == 0);
    const auto parsed = json::parse(result.out);
    CHECK(parsed["sectors"].size() == 8);
    CHECK(parsed["index"].empty());
}

TEST_CASE("missing header column exits 2 and names the column") {
    const auto dir = scratch_dir();
    write(dir / "bad.csv", "sector,world_gdp_share_pct\nAgriculture,3.35\n");
    const auto result =
        run("tradability --world-sectors " + (dir / "bad.csv").string());
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("world_trade_share_pct") != std::string::npos);
}

TEST_CASE("simulate then estimate recovers the structural coefficients") {
    const auto dir = scratch_dir() / "pipeline";
    fs::create_directories(dir);
    auto sim = run("simulate --seed 99 --countries 8 --years 5 --sigma-noise 0 "
                   "--lambda-by-year --out-dir " + dir.string());
    REQUIRE(sim.exit_code == 0);

    const auto result = run("estimate --trade " + (dir / "trade.csv").string() + " --gdp " +
                            (dir / "gdp.csv").string() + " --lambda " +
                            (dir / "lambda.csv").string() + " --estimator all");
    REQUIRE(result.exit_code == 0);
    const auto parsed = json::parse(result.out);
    for (const char* block : {"pooled", "fixed_effects", "random_effects"}) {
        const auto& coefs = parsed[block]["coefficients"];
        CHECK(std::fabs(coefs[0].get<double>() - 0.0) < 1e-6);
        CHECK(std::fabs(coefs[1].get<double>() - 1.0) < 1e-6);
        CHECK(std::fabs(coefs[2].get<double>() - 1.0) < 1e-6);
        CHECK(parsed[block].contains("n_obs"));
        CHECK(parsed[block].contains("n_groups"));
    }
    // Three blocks plus the cross-model tests.
    REQUIRE(parsed.contains("tests"));
    bool has_hausman = false, has_panel_f = false;
    for (const auto& test : parsed["tests"]) {
        if (test["name"] == "hausman") has_hausman = true;
        if (test["name"] == "f_panel_effects") has_panel_f = true;
    }
    CHECK(has_hausman);
    CHECK(has_panel_f);
}

TEST_CASE("estimate with a single estimator emits the flat schema") {
    const auto dir = scratch_dir() / "single";
    fs::create_directories(dir);
    REQUIRE(run("simulate --seed 7 --countries 6 --years 4 --sigma-noise 0.2 "
                "--lambda-by-year --out-dir " + dir.string()).exit_code == 0);
    const auto result = run("estimate --trade " + (dir / "trade.csv").string() + " --gdp " +
                            (dir / "gdp.csv").string() + " --lambda " +
                            (dir / "lambda.csv").string() + " --estimator fe");
    REQUIRE(result.exit_code == 0);
    const auto parsed = json::parse(result.out);
    CHECK(parsed["method"] == "fixed_effects");
    CHECK(parsed["coefficients"].size() == 3);
    CHECK(parsed["n_obs"].get<int>() > 0);
}

TEST_CASE("estimate on an empty panel exits 3") {
    const auto dir = scratch_dir() / "empty";
    fs::create_directories(dir);
    write(dir / "trade.csv", "exporter,importer,year,value_usd\nAAA,BBB,2000,0\n");
    write(dir / "gdp.csv", "country,year,gdp_usd\nAAA,2000,1e9\nBBB,2000,2e9\n");
    write(dir / "lambda.csv", "country,year,index\nAAA,2000,10\nBBB,2000,12\n");
    const auto result = run("estimate --trade " + (dir / "trade.csv").string() + " --gdp " +
                            (dir / "gdp.csv").string() + " --lambda " +
                            (dir / "lambda.csv").string());
    CHECK(result.exit_code == 3);
    CHECK(result.err.find("EmptyPanel") != std::string::npos);
}

TEST_CASE("identify returns the exact slope on model-generated flows") {
    const auto dir = scratch_dir() / "ident";
    fs::create_directories(dir);
    // Flows exactly equal to the perfect-specialization prediction.
    std::string gdp = "country,year,gdp_usd\n";
    std::string trade = "exporter,importer,year,value_usd\n";
    const std::vector<std::pair<std::string, double>> countries{
        {"AAA", 2.0e9}, {"BBB", 3.0e9}, {"CCC", 5.0e9}};
    double yw = 0.0;
    for (const auto& [name, gdp_value] : countries) yw += gdp_value;
    for (const auto& [name, gdp_value] : countries)
        gdp += name + ",2000," + gravitas::io::format_exact(gdp_value) + "\n";
    for (const auto& [a, ya] : countries)
        for (const auto& [b, yb] : countries) {
            if (a == b) continue;
            trade += a + "," + b + ",2000," + gravitas::io::format_exact(ya * yb / yw) + "\n";
        }
    write(dir / "gdp.csv", gdp);
    write(dir / "trade.csv", trade);

    const auto result = run("identify --trade " + (dir / "trade.csv").string() + " --gdp " +
                            (dir / "gdp.csv").string() + " --model perfect");
    REQUIRE(result.exit_code == 0);
    const auto parsed = json::parse(result.out);
    CHECK(std::fabs(parsed["coefficients"][0].get<double>() - 1.0) < 1e-10);
    CHECK(parsed["tests"][0]["name"] == "t_alpha_eq_1");
}

TEST_CASE("verify exits zero and reports the summary") {
    const auto result = run("verify --seed 3 --replications 3 --countries 8 --years 4");
    REQUIRE(result.exit_code == 0);
    const auto parsed = json::parse(result.out);
    CHECK(parsed["n_replications"] == 3);
    CHECK(parsed["n_completed"] == 3);
    CHECK(parsed["noiseless_max_error"].get<double>() < 1e-6);
}

TEST_CASE("same seed twice gives byte-identical outputs") {
    const auto dir_a = scratch_dir() / "det_a";
    const auto dir_b = scratch_dir() / "det_b";
    fs::create_directories(dir_a);
    fs::create_directories(dir_b);
    REQUIRE(run("simulate --seed 1234 --countries 5 --years 3 --out-dir " +
                dir_a.string()).exit_code == 0);
    REQUIRE(run("simulate --seed 1234 --countries 5 --years 3 --out-dir " +
                dir_b.string()).exit_code == 0);
    for (const char* name : {"trade.csv", "gdp.csv", "lambda.csv"}) {
        CHECK(gravitas::io::read_file(dir_a / name) == gravitas::io::read_file(dir_b / name));
    }

    const auto verify_a = run("verify --seed 5 --replications 2 --countries 6 --years 4");
    const auto verify_b = run("verify --seed 5 --replications 2 --countries 6 --years 4");
    CHECK(verify_a.out == verify_b.out);
}

TEST_CASE("invalid generator config exits 2") {
    const auto result = run("simulate --seed 1 --countries 1 --out-dir /tmp/never_used_dir");
    CHECK(result.exit_code == 2);
}

TEST_CASE("tsv format is accepted") {
    const auto dir = scratch_dir();
    write(dir / "sectors.csv", kSectorsCsv);
    const auto result =
        run("--format tsv tradability --world-sectors " + (dir / "sectors.csv").string());
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("sector\tAgriculture\t") != std::string::npos);
}

TEST_CASE("emit-plot-data writes the per-observation series") {
    const auto dir = scratch_dir() / "plot";
    fs::create_directories(dir);
    REQUIRE(run("simulate --seed 21 --countries 5 --years 3 --lambda-by-year --out-dir " +
                dir.string()).exit_code == 0);
    const auto result = run("estimate --trade " + (dir / "trade.csv").string() + " --gdp " +
                            (dir / "gdp.csv").string() + " --lambda " +
                            (dir / "lambda.csv").string() + " --estimator fe --emit-plot-data " +
                            (dir / "plot.tsv").string());
    REQUIRE(result.exit_code == 0);
    const auto plot = gravitas::io::read_file(dir / "plot.tsv");
    CHECK(plot.find("pair\tyear\tln_lambda\tln_mass\tln_trade\tfitted\n") == 0);
    CHECK(std::count(plot.begin(), plot.end(), '\n') == 5 * 4 * 3 + 1);
}

TEST_CASE("key=value config file supplies parent options") {
    const auto dir = scratch_dir();
    write(dir / "sectors.csv", kSectorsCsv);
    write(dir / "run.cfg", "format=tsv\n");
    const auto result = run("--config " + (dir / "run.cfg").string() +
                            " tradability --world-sectors " + (dir / "sectors.csv").string());
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("sector\tAgriculture\t") != std::string::npos);
}

TEST_CASE("tradability index-csv output feeds estimate directly") {
    const auto dir = scratch_dir() / "chain";
    fs::create_directories(dir);
    write(dir / "sectors.csv", kSectorsCsv);
    // Country shares for two countries over two years, summing to one.
    std::string shares = "country,year,sector,gdp_share\n";
    for (const std::string country : {"AAA", "BBB"})
        for (int year : {2000, 2001}) {
            const double textiles = country == "AAA" ? 0.10 : 0.02;
            shares += country + "," + std::to_string(year) + ",Textiles and clothing," +
                      gravitas::io::format_exact(textiles) + "\n";
            shares += country + "," + std::to_string(year) + ",Services," +
                      gravitas::io::format_exact(1.0 - textiles) + "\n";
        }
    write(dir / "shares.csv", shares);
    auto trad = run("tradability --world-sectors " + (dir / "sectors.csv").string() +
                    " --country-shares " + (dir / "shares.csv").string() + " --index-csv " +
                    (dir / "lambda.csv").string());
    REQUIRE(trad.exit_code == 0);

    const auto lambda = gravitas::io::read_lambda_csv(
        gravitas::io::read_file(dir / "lambda.csv"));
    CHECK(lambda.index.size() == 4);
    CHECK(lambda.index.count({"AAA", 2000}) == 1);

    // A tiny trade/GDP panel estimable with that index.
    write(dir / "gdp.csv",
          "country,year,gdp_usd\nAAA,2000,2e9\nAAA,2001,3e9\nBBB,2000,4e9\nBBB,2001,5e9\n");
    write(dir / "trade.csv",
          "exporter,importer,year,value_usd\n"
          "AAA,BBB,2000,1e8\nAAA,BBB,2001,2e8\nBBB,AAA,2000,3e8\nBBB,AAA,2001,4e8\n");
    const auto est = run("estimate --trade " + (dir / "trade.csv").string() + " --gdp " +
                         (dir / "gdp.csv").string() + " --lambda " +
                         (dir / "lambda.csv").string() + " --estimator pooled");
    CHECK(est.exit_code == 0);
    CHECK(est.out.find("\"n_obs\":4") != std::string::npos);
}

TEST_CASE("identify emits predicted-actual plot data on request") {
    const auto dir = scratch_dir() / "iplot";
    fs::create_directories(dir);
    write(dir / "gdp.csv", "country,year,gdp_usd\nAAA,2000,2e9\nBBB,2000,3e9\n");
    write(dir / "trade.csv",
          "exporter,importer,year,value_usd\nAAA,BBB,2000,1.1e9\nBBB,AAA,2000,1.3e9\n");
    const auto result = run("identify --trade " + (dir / "trade.csv").string() + " --gdp " +
                            (dir / "gdp.csv").string() + " --model perfect --emit-plot-data " +
                            (dir / "plot.tsv").string());
    REQUIRE(result.exit_code == 0);
    const auto plot = gravitas::io::read_file(dir / "plot.tsv");
    CHECK(plot.find("predicted\tactual\n") == 0);
    CHECK(std::count(plot.begin(), plot.end(), '\n') == 3);
}
