#include "doctest.h"

#include <filesystem>
#include <unistd.h>

#include "invnet/io.hpp"
#include "invnet/pipeline.hpp"
#include "invnet/synth.hpp"
#include "support/builders.hpp"

using namespace invnet;
using testutil::cat;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("invnet_pl_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

PostalMap toy_postal() {
    PostalMap map;
    for (int r = 0; r < kRegionCount; ++r) {
        char code[8];
        std::snprintf(code, sizeof(code), "P%02d", r);
        map[code] = static_cast<Region>(r);
    }
    return map;
}

// Two securities over ~8 months of weekdays with one planted pair.
void write_inputs(const TempDir& dir, std::uint64_t seed) {
    SynthConfig config;
    config.n_securities = 2;
    config.n_days = 170;
    config.start_date = Date::from_ymd(2004, 1, 5);
    config.seed = seed;
    config.volume_sigma = 700.0;
    config.planted.push_back({cat(2), cat(9), 0.85, {}});
    const auto synth = generate(config);
    const auto map = toy_postal();
    std::map<Region, std::string> inverse;
    for (const auto& [code, region] : map) inverse[region] = code;
    write_postal_map(dir.file("postal.csv"), map);
    write_transactions_csv(dir.file("tx.csv"), synth.transactions, inverse);
}

PipelineConfig base_config(const TempDir& dir, const std::string& out) {
    PipelineConfig config;
    config.transactions_csv = dir.file("tx.csv");
    config.postal_map_csv = dir.file("postal.csv");
    config.out_dir = dir.file(out);
    config.window_months = 4;
    config.bootstrap_replicas = 8;
    config.null_replicas = 20;
    config.seed = 5;
    config.workers = 2;
    config.order = AggregationOrder::SecuritiesThenTime;
    return config;
}

}  // namespace

TEST_CASE("window tiling drops the partial tail with a warning") {
    std::vector<std::string> warnings;
    const auto w =
        tile_windows(Date::from_ymd(2004, 1, 5), Date::from_ymd(2004, 9, 20), 4, &warnings);
    REQUIRE(w.size() == 2);  // Jan-Apr, May-Aug; Sep is partial
    CHECK(w[0].month_begin == 2004 * 12);
    CHECK(w[0].month_end == 2004 * 12 + 4);
    CHECK(w[1].month_end == 2004 * 12 + 8);
    CHECK(warnings.size() == 1);

    warnings.clear();
    const auto whole = tile_windows(Date::from_ymd(2004, 1, 5), Date::from_ymd(2004, 9, 20), 0,
                                    &warnings);
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].label == "full");
    CHECK(warnings.empty());

    CHECK(valid_window_months(6));
    CHECK_FALSE(valid_window_months(5));
}

TEST_CASE("pipeline writes every artifact and the manifest reproduces bit-identically") {
    TempDir dir("repro");
    write_inputs(dir, 808);

    auto config = base_config(dir, "run1");
    const auto run1 = run_pipeline(config);
    CHECK(run1.exit_code == 0);

    // 2 securities x 2 windows: cell artifacts, ST layers, final network
    for (const char* rel :
         {"cells/SEC000_w00.report.json", "cells/SEC000_w00.network.json",
          "cells/SEC001_w01.network.json", "layers/ST_w00.network.json",
          "layers/ST_w01.report.json", "final/final_ST.network.json",
          "final/final_ST.report.json", "manifest.json", "rejects.csv"})
        CHECK(fs::exists(fs::path(config.out_dir) / rel));

    config.out_dir = dir.file("run2");
    const auto run2 = run_pipeline(config);
    CHECK(run2.manifest_hash == run1.manifest_hash);

    // artifact bytes are identical too
    CHECK(read_text_file(dir.file("run1") + "/final/final_ST.network.json") ==
          read_text_file(dir.file("run2") + "/final/final_ST.network.json"));

    // changing only the seed changes at least one replica-derived artifact
    config.out_dir = dir.file("run3");
    config.seed = 6;
    const auto run3 = run_pipeline(config);
    CHECK(run3.manifest_hash != run1.manifest_hash);
}

TEST_CASE("pipeline respects worker counts deterministically") {
    TempDir dir("workers");
    write_inputs(dir, 909);
    auto config = base_config(dir, "w1");
    config.workers = 1;
    const auto serial = run_pipeline(config);
    config.out_dir = dir.file("w4");
    config.workers = 4;
    const auto parallel = run_pipeline(config);
    CHECK(serial.manifest_hash == parallel.manifest_hash);
}

TEST_CASE("TS order produces per-security layers") {
    TempDir dir("ts");
    write_inputs(dir, 101);
    auto config = base_config(dir, "ts_run");
    config.order = AggregationOrder::TimeThenSecurities;
    const auto outcome = run_pipeline(config);
    CHECK(outcome.exit_code == 0);
    CHECK(fs::exists(fs::path(config.out_dir) / "layers/TS_SEC000.network.json"));
    CHECK(fs::exists(fs::path(config.out_dir) / "layers/TS_SEC001.network.json"));
    CHECK(fs::exists(fs::path(config.out_dir) / "final/final_TS.network.json"));
}

TEST_CASE("whole-period unbootstrapped run keeps the planted edge") {
    TempDir dir("b0");
    write_inputs(dir, 202);
    auto config = base_config(dir, "b0_run");
    config.window_months = 0;
    config.bootstrap_replicas = 0;
    config.order.reset();
    const auto outcome = run_pipeline(config);
    CHECK(outcome.exit_code == 0);
    const auto net = read_network_json(dir.file("b0_run") + "/cells/SEC000_full.network.json");
    CHECK(net.has_edge(2, 9));
    CHECK(net.edge_count() <= kCategoryCount);  // C3NET bound
    CHECK(net.meta.window_label == "full");
}

TEST_CASE("unknown securities and silly windows are validation errors") {
    TempDir dir("bad");
    write_inputs(dir, 303);
    auto config = base_config(dir, "bad_run");
    config.securities = {"NOPE"};
    CHECK_THROWS_AS(run_pipeline(config), Error);
    config.securities.clear();
    config.window_months = 5;
    CHECK_THROWS_AS(run_pipeline(config), Error);
}

TEST_CASE("reject-rate gate fails ingestion") {
    TempDir dir("rej");
    write_postal_map(dir.file("postal.csv"), toy_postal());
    write_text_file(dir.file("tx.csv"),
                    "trade_date,investor_id,sector_code,birth_year,postal_code,security_id,"
                    "signed_volume\n"
                    "2004-01-05,i1,NF,,P00,SEC000,10\n"
                    "bad-row,i2,NF,,P00,SEC000,10\n");
    auto config = base_config(dir, "rej_run");
    config.max_reject_rate = 0.0;
    const auto outcome = run_pipeline(config);
    CHECK(outcome.exit_code == 1);
}

TEST_CASE("explicit security subset restricts the grid") {
    TempDir dir("subset");
    write_inputs(dir, 404);
    auto config = base_config(dir, "subset_run");
    config.securities = {"SEC001"};
    config.order.reset();
    const auto outcome = run_pipeline(config);
    CHECK(outcome.exit_code == 0);
    CHECK(fs::exists(fs::path(config.out_dir) / "cells/SEC001_w00.network.json"));
    CHECK_FALSE(fs::exists(fs::path(config.out_dir) / "cells/SEC000_w00.network.json"));
}
