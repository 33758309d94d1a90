// End-to-end batch pipeline: ingest, window tiling, per-cell bootstrap
// ensembles, aggregation in the configured order, artifact export and the
// reproducibility manifest.
#pragma once

#include <cstdint>

#include "invnet/aggregate.hpp"
#include "invnet/inference.hpp"
#include "invnet/types.hpp"

namespace invnet {

struct PipelineConfig {
    std::string transactions_csv;
    std::string postal_map_csv;
    std::string out_dir;
    std::vector<std::string> securities;  // empty = all observed
    int top_securities = 0;               // >0: keep the top-K by (investors, transactions)
    int window_months = 0;                // 0 = whole period; else 1,2,3,4,6,12,24
    std::optional<Date> start_date;       // window anchor; default = first observed date
    int bootstrap_replicas = 100;         // B; 0 = no transaction bootstrapping
    double alpha = 0.01;
    double alpha_mi = 0.01;
    int null_replicas = 100;              // R
    int min_active_days = 5;
    Method method = Method::C3Net;
    std::optional<AggregationOrder> order;  // nullopt = stop at cell level
    std::uint64_t seed = 1;
    int workers = 0;                      // 0 = INVNET_WORKERS env or hardware
    double max_reject_rate = 0.0;
};

struct PipelineOutcome {
    int exit_code = 0;  // 0 ok, 1 validation failure, 2 degenerate statistics
    std::string manifest_path;
    std::uint64_t manifest_hash = 0;
    std::vector<std::string> warnings;
};

// Allowed window lengths in months.
bool valid_window_months(int months);

struct WindowSpan {
    std::string label;       // "full" or "w00", "w01", ...
    int month_begin = 0;     // inclusive month index
    int month_end = 0;       // exclusive; 0 when whole-period
};

// Tiled windows covering [anchor, last]; a partial tail is dropped and reported.
std::vector<WindowSpan> tile_windows(Date anchor, Date last, int window_months,
                                     std::vector<std::string>* warnings = nullptr);

PipelineOutcome run_pipeline(const PipelineConfig& config);

}  // namespace invnet
