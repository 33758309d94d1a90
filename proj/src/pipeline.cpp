#include "invnet/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <thread>

#include "invnet/categorize.hpp"
#include "invnet/io.hpp"
#include "invnet/netvolume.hpp"
#include "invnet/rng.hpp"

namespace invnet {

namespace fs = std::filesystem;

namespace {

int resolve_workers(int configured) {
    if (configured > 0) return configured;
    if (const char* env = std::getenv("INVNET_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(0..n-1) on up to `workers` threads. Callers write results into
// index-addressed slots, so the schedule never shows in the output.
template <typename F>
void parallel_for(int n, int workers, F&& fn) {
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w)
        threads.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

std::string window_dates(const WindowSpan& w) {
    if (w.month_end == 0) return "full period";
    return month_start(w.month_begin).to_string() + ".." +
           Date(month_start(w.month_end).days_since_epoch() - 1).to_string();
}

}  // namespace

bool valid_window_months(int months) {
    for (int m : {1, 2, 3, 4, 6, 12, 24})
        if (months == m) return true;
    return false;
}

std::vector<WindowSpan> tile_windows(Date anchor, Date last, int window_months,
                                     std::vector<std::string>* warnings) {
    std::vector<WindowSpan> windows;
    if (window_months == 0) {
        windows.push_back({"full", 0, 0});
        return windows;
    }
    const int first_month = anchor.month_index();
    const int last_month = last.month_index();
    int begin = first_month;
    int index = 0;
    while (begin + window_months - 1 <= last_month) {
        char label[16];
        std::snprintf(label, sizeof(label), "w%02d", index);
        windows.push_back({label, begin, begin + window_months});
        begin += window_months;
        ++index;
    }
    if (warnings && begin <= last_month)
        warnings->push_back("partial tail window starting " +
                            month_start(begin).to_string() + " excluded (windows must tile)");
    return windows;
}

PipelineOutcome run_pipeline(const PipelineConfig& config) {
    PipelineOutcome outcome;
    if (config.window_months != 0 && !valid_window_months(config.window_months))
        throw Error("window length must be one of 1,2,3,4,6,12,24 months (or 0 = whole period)");
    if (config.out_dir.empty()) throw Error("pipeline needs an output directory");

    fs::create_directories(config.out_dir);
    const auto out = [&](const std::string& rel) { return (fs::path(config.out_dir) / rel).string(); };

    // ---- ingest ----
    const PostalMap postal = load_postal_map(config.postal_map_csv);
    IngestResult ingest = ingest_csv(config.transactions_csv, postal);
    {
        std::string rejects = "line,reason,raw\n";
        for (const auto& r : ingest.rejects)
            rejects += std::to_string(r.line) + "," + r.reason + ",\"" + r.raw + "\"\n";
        write_text_file(out("rejects.csv"), rejects);
    }
    const long long total_rows = ingest.summary.accepted + ingest.summary.rejected;
    const double reject_rate =
        total_rows == 0 ? 1.0 : static_cast<double>(ingest.summary.rejected) / total_rows;
    if (ingest.transactions.empty() || reject_rate > config.max_reject_rate) {
        outcome.exit_code = 1;
        outcome.warnings.push_back("ingestion failed: reject rate " + std::to_string(reject_rate));
        return outcome;
    }

    // ---- security selection ----
    std::vector<std::string> securities;
    if (!config.securities.empty()) {
        securities = config.securities;
        for (const auto& s : securities)
            if (!ingest.summary.per_security.count(s)) throw Error("unknown security: " + s);
    } else {
        for (const auto& [sec, _] : ingest.summary.per_security) securities.push_back(sec);
        if (config.top_securities > 0 &&
            config.top_securities < static_cast<int>(securities.size())) {
            // Rank by investor count, then transaction count, then id.
            std::sort(securities.begin(), securities.end(),
                      [&](const std::string& a, const std::string& b) {
                          const auto ia = ingest.summary.security_investors.at(a);
                          const auto ib = ingest.summary.security_investors.at(b);
                          if (ia != ib) return ia > ib;
                          const auto ta = ingest.summary.per_security.at(a);
                          const auto tb = ingest.summary.per_security.at(b);
                          if (ta != tb) return ta > tb;
                          return a < b;
                      });
            securities.resize(config.top_securities);
            std::sort(securities.begin(), securities.end());
        }
    }

    // ---- windows ----
    const Date anchor = config.start_date.value_or(ingest.summary.first_date);
    const auto windows =
        tile_windows(anchor, ingest.summary.last_date, config.window_months, &outcome.warnings);
    if (windows.empty()) {
        outcome.exit_code = 1;
        outcome.warnings.push_back("no complete windows in the data period");
        return outcome;
    }

    // ---- per-security categorized transactions ----
    const int S = static_cast<int>(securities.size());
    const int T = static_cast<int>(windows.size());
    std::vector<std::vector<CategorizedTransaction>> by_security(S);
    {
        std::map<std::string, int> sec_index;
        for (int s = 0; s < S; ++s) sec_index[securities[s]] = s;
        for (const auto& tx : ingest.transactions) {
            auto it = sec_index.find(tx.security_id);
            if (it != sec_index.end()) by_security[it->second].push_back(categorize(tx));
        }
    }

    // ---- cells ----
    fs::create_directories(out("cells"));
    EnsembleGrid grid(S, T);
    grid.window_months = config.window_months;
    grid.window_start = anchor;
    std::vector<AggregationReport> cell_reports(static_cast<std::size_t>(S) * T);
    std::vector<std::uint64_t> cell_seeds(static_cast<std::size_t>(S) * T);
    std::vector<std::uint8_t> cell_degenerate(static_cast<std::size_t>(S) * T, 0);

    auto run_cell = [&](int index) {
        const int s = index / T;
        const int t = index % T;
        const auto& w = windows[t];
        std::vector<CategorizedTransaction> cell_txns;
        for (const auto& tx : by_security[s]) {
            if (w.month_end != 0) {
                const int m = tx.date.month_index();
                if (m < w.month_begin || m >= w.month_end) continue;
            }
            cell_txns.push_back(tx);
        }

        const std::uint64_t cell_seed = substream_seed(config.seed, 2, static_cast<std::uint64_t>(index));
        cell_seeds[index] = cell_seed;

        EnsembleParams params;
        params.bootstrap_replicas = config.bootstrap_replicas;
        params.method = config.method;
        params.alpha_mi = config.alpha_mi;
        params.null_replicas = config.null_replicas;
        params.min_active_days = config.min_active_days;
        params.seed = cell_seed;

        BinaryNetwork cell_network;
        AggregationReport report;
        report.alpha = config.alpha;
        bool degenerate = false;
        try {
            const auto calendar = make_calendar(cell_txns);
            const auto ensemble = infer_bootstrap_ensemble(cell_txns, calendar, params);
            if (config.bootstrap_replicas == 0) {
                cell_network = ensemble.front();
                report.counts = ensemble_counts(ensemble);
                report.n_tests = report.counts.distinct();
                report.result = cell_network;
            } else {
                report = aggregate(ensemble, config.alpha);
                cell_network = report.result;
                degenerate = report.degenerate;
            }
        } catch (const Error&) {
            // Cell without usable data: empty network, flagged report.
            degenerate = true;
            report.degenerate = true;
        }
        cell_network.meta.method = to_string(config.method);
        cell_network.meta.security_id = securities[s];
        cell_network.meta.window_label = w.label;
        cell_network.meta.provenance = {
            {"seed", std::to_string(cell_seed)},
            {"bootstrap_replicas", std::to_string(config.bootstrap_replicas)},
            {"null_replicas", std::to_string(config.null_replicas)},
            {"alpha", std::to_string(config.alpha)},
            {"alpha_mi", std::to_string(config.alpha_mi)},
            {"min_active_days", std::to_string(config.min_active_days)},
            {"window", window_dates(w)},
        };
        report.result = cell_network;
        cell_degenerate[index] = degenerate ? 1 : 0;
        grid.at(s, t) = cell_network;
        cell_reports[index] = std::move(report);
    };
    parallel_for(S * T, resolve_workers(config.workers), run_cell);

    std::vector<std::string> artifact_paths;
    for (int index = 0; index < S * T; ++index) {
        const int s = index / T;
        const int t = index % T;
        const std::string stem = "cells/" + securities[s] + "_" + windows[t].label;
        write_report_json(out(stem + ".report.json"), cell_reports[index]);
        write_network_json(out(stem + ".network.json"), grid.at(s, t));
        artifact_paths.push_back(stem + ".report.json");
        artifact_paths.push_back(stem + ".network.json");
    }

    // ---- multilayer aggregation ----
    const std::map<std::string, std::string> run_provenance = {
        {"seed", std::to_string(config.seed)},
        {"bootstrap_replicas", std::to_string(config.bootstrap_replicas)},
        {"null_replicas", std::to_string(config.null_replicas)},
        {"alpha", std::to_string(config.alpha)},
        {"alpha_mi", std::to_string(config.alpha_mi)},
        {"min_active_days", std::to_string(config.min_active_days)},
        {"method", to_string(config.method)},
        {"window_months", std::to_string(config.window_months)},
        {"order", config.order ? to_string(*config.order) : "none"},
    };
    bool final_degenerate = false;
    if (config.order) {
        auto ml = multilayer_aggregate(grid, *config.order, config.alpha);
        fs::create_directories(out("layers"));
        fs::create_directories(out("final"));
        const bool st = *config.order == AggregationOrder::SecuritiesThenTime;
        for (std::size_t g = 0; g < ml.first_level.size(); ++g) {
            const std::string label = st ? windows[g].label : securities[g];
            const std::string stem = "layers/" + to_string(*config.order) + "_" + label;
            ml.first_level[g].result.meta.provenance = run_provenance;
            write_report_json(out(stem + ".report.json"), ml.first_level[g]);
            write_network_json(out(stem + ".network.json"), ml.first_level[g].result);
            artifact_paths.push_back(stem + ".report.json");
            artifact_paths.push_back(stem + ".network.json");
        }
        const std::string stem = "final/final_" + to_string(*config.order);
        ml.second_level.result.meta.provenance = run_provenance;
        ml.final_network.meta.provenance = run_provenance;
        write_report_json(out(stem + ".report.json"), ml.second_level);
        write_network_json(out(stem + ".network.json"), ml.final_network);
        artifact_paths.push_back(stem + ".report.json");
        artifact_paths.push_back(stem + ".network.json");
        final_degenerate = ml.second_level.degenerate;
    } else {
        for (auto flag : cell_degenerate) final_degenerate = final_degenerate || flag;
    }

    // ---- manifest ----
    nlohmann::json manifest;
    manifest["schema"] = "invnet-manifest/1";
    manifest["config"] = {
        {"transactions_csv", config.transactions_csv},
        {"postal_map_csv", config.postal_map_csv},
        {"securities", securities},
        {"window_months", config.window_months},
        {"anchor", anchor.to_string()},
        {"bootstrap_replicas", config.bootstrap_replicas},
        {"alpha", config.alpha},
        {"alpha_mi", config.alpha_mi},
        {"null_replicas", config.null_replicas},
        {"min_active_days", config.min_active_days},
        {"method", to_string(config.method)},
        {"order", config.order ? to_string(*config.order) : "none"},
        {"seed", config.seed},
    };
    manifest["inputs"] = {
        {"transactions_hash", fnv1a64_file(config.transactions_csv)},
        {"postal_map_hash", fnv1a64_file(config.postal_map_csv)},
    };
    auto windows_json = nlohmann::json::array();
    for (const auto& w : windows) windows_json.push_back({{"label", w.label}, {"span", window_dates(w)}});
    manifest["windows"] = std::move(windows_json);
    auto ranking = nlohmann::json::array();
    for (const auto& sec : securities)
        ranking.push_back({{"security", sec},
                           {"investors", ingest.summary.security_investors.at(sec)},
                           {"transactions", ingest.summary.per_security.at(sec)}});
    manifest["security_ranking"] = std::move(ranking);
    manifest["cell_seeds"] = cell_seeds;
    manifest["warnings"] = outcome.warnings;
    auto artifacts = nlohmann::json::object();
    for (const auto& rel : artifact_paths) artifacts[rel] = fnv1a64_file(out(rel));
    manifest["artifacts"] = std::move(artifacts);
    outcome.manifest_hash = fnv1a64(manifest.dump(2));
    manifest["manifest_hash"] = outcome.manifest_hash;
    outcome.manifest_path = out("manifest.json");
    write_text_file(outcome.manifest_path, manifest.dump(2) + "\n");

    if (final_degenerate) outcome.exit_code = 2;
    return outcome;
}

}  // namespace invnet
