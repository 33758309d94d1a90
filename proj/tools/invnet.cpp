// invnet command-line interface: synthetic data generation, ingestion,
// inference, aggregation, the full pipeline, and exports.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "invnet/aggregate.hpp"
#include "invnet/analysis.hpp"
#include "invnet/categorize.hpp"
#include "invnet/inference.hpp"
#include "invnet/io.hpp"
#include "invnet/netvolume.hpp"
#include "invnet/pipeline.hpp"
#include "invnet/synth.hpp"

namespace fs = std::filesystem;
using namespace invnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitDegenerate = 2;

PostalMap default_postal_map() {
    PostalMap map;
    for (int r = 0; r < kRegionCount; ++r) {
        char code[8];
        std::snprintf(code, sizeof(code), "P%02d", r);
        map[code] = static_cast<Region>(r);
    }
    return map;
}

std::map<Region, std::string> invert_postal(const PostalMap& map) {
    std::map<Region, std::string> inv;
    for (const auto& [code, region] : map)
        if (!inv.count(region)) inv[region] = code;
    return inv;
}

// "catA,catB,rho[,begin-end[;begin-end...]]"
PlantedPair parse_planted(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 3) throw Error("planted pair needs 'catA,catB,rho': " + text);
    auto a = CategoryId::parse(parts[0]);
    auto b = CategoryId::parse(parts[1]);
    if (!a || !b) throw Error("unknown category in planted pair: " + text);
    PlantedPair p;
    p.a = *a;
    p.b = *b;
    p.rho = std::stod(parts[2]);
    if (parts.size() > 3) {
        std::string ranges = parts[3];
        std::size_t pos = 0;
        while (pos < ranges.size()) {
            auto semi = ranges.find(';', pos);
            if (semi == std::string::npos) semi = ranges.size();
            const std::string range = ranges.substr(pos, semi - pos);
            auto dash = range.find('-');
            if (dash == std::string::npos) throw Error("bad planted range: " + range);
            p.active_ranges.emplace_back(std::stoi(range.substr(0, dash)),
                                         std::stoi(range.substr(dash + 1)));
            pos = semi + 1;
        }
    }
    return p;
}

// Flat key=value file -> "--key value" argument pairs; keys already present
// on the command line are skipped, so explicit flags override the file.
std::vector<std::string> expand_config_file(const std::vector<std::string>& args,
                                            const std::string& path) {
    std::vector<std::string> expanded = args;
    std::istringstream in(read_text_file(path));
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string{};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty()) continue;
        const std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) == args.end()) {
            expanded.push_back(flag);
            expanded.push_back(value);
        }
    }
    return expanded;
}

// Replays a previous run: the manifest's config block becomes flag pairs,
// again with explicit flags winning. The output directory is not replayed.
std::vector<std::string> expand_manifest(const std::vector<std::string>& args,
                                         const std::string& path) {
    const auto manifest = nlohmann::json::parse(read_text_file(path));
    const auto& c = manifest.at("config");
    std::vector<std::pair<std::string, std::string>> pairs = {
        {"transactions", c.at("transactions_csv").get<std::string>()},
        {"postal-map", c.at("postal_map_csv").get<std::string>()},
        {"window-months", std::to_string(c.at("window_months").get<int>())},
        {"start-date", c.at("anchor").get<std::string>()},
        {"bootstrap-replicas", std::to_string(c.at("bootstrap_replicas").get<int>())},
        {"alpha", std::to_string(c.at("alpha").get<double>())},
        {"alpha-mi", std::to_string(c.at("alpha_mi").get<double>())},
        {"null-replicas", std::to_string(c.at("null_replicas").get<int>())},
        {"min-active-days", std::to_string(c.at("min_active_days").get<int>())},
        {"method", c.at("method").get<std::string>()},
        {"seed", std::to_string(c.at("seed").get<std::uint64_t>())},
    };
    if (c.at("order").get<std::string>() != "none")
        pairs.emplace_back("order", c.at("order").get<std::string>());

    std::vector<std::string> expanded = args;
    for (const auto& [key, value] : pairs) {
        const std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) == args.end()) {
            expanded.push_back(flag);
            expanded.push_back(value);
        }
    }
    if (std::find(args.begin(), args.end(), "--securities") == args.end())
        for (const auto& sec : c.at("securities")) {
            expanded.push_back("--securities");
            expanded.push_back(sec.get<std::string>());
        }
    return expanded;
}

std::vector<CategorizedTransaction> security_transactions(const IngestResult& ingest,
                                                          const std::string& security) {
    std::vector<CategorizedTransaction> txns;
    for (const auto& tx : ingest.transactions)
        if (tx.security_id == security) txns.push_back(categorize(tx));
    if (txns.empty()) throw Error("no transactions for security " + security);
    return txns;
}

void print_ingest_summary(const IngestResult& ingest) {
    std::printf("accepted %lld rows, rejected %lld\n", ingest.summary.accepted,
                ingest.summary.rejected);
    if (ingest.summary.accepted > 0)
        std::printf("date range %s .. %s\n", ingest.summary.first_date.to_string().c_str(),
                    ingest.summary.last_date.to_string().c_str());
    std::printf("securities (%zu):\n", ingest.summary.per_security.size());
    for (const auto& [sec, n] : ingest.summary.per_security)
        std::printf("  %s: %lld transactions, %lld investors\n", sec.c_str(), n,
                    ingest.summary.security_investors.at(sec));
    std::printf("active categories: %zu of %d\n", ingest.summary.per_category.size(),
                kCategoryCount);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Investor-category trading networks: bootstrapped MI inference and "
                 "statistically validated ensemble aggregation"};
    app.require_subcommand(1);

    // ---- synth ----
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic transaction dataset");
    std::string synth_out = "synth_out";
    SynthConfig synth_config;
    std::vector<std::string> planted_specs;
    synth_cmd->add_option("--out-dir", synth_out, "Output directory");
    synth_cmd->add_option("--securities", synth_config.n_securities, "Number of securities");
    synth_cmd->add_option("--days", synth_config.n_days, "Number of trading days");
    synth_cmd->add_option("--tx-rate", synth_config.tx_rate, "Mean transactions per category-day");
    synth_cmd->add_option("--volume-sigma", synth_config.volume_sigma,
                          "Daily net volume standard deviation");
    synth_cmd->add_option("--overshoot", synth_config.overshoot,
                          "Decomposition piece scale relative to |net volume|");
    synth_cmd->add_option("--seed", synth_config.seed, "Root seed");
    std::string synth_start = "2004-01-02";
    synth_cmd->add_option("--start-date", synth_start, "First calendar date (ISO)");
    synth_cmd->add_option("--planted", planted_specs,
                          "Planted coupling 'catA,catB,rho[,begin-end;...]' (repeatable)");

    // ---- ingest ----
    auto* ingest_cmd = app.add_subcommand("ingest", "Validate and summarize a transaction CSV");
    std::string in_txns, in_postal, ingest_out;
    double max_reject_rate = 0.0;
    ingest_cmd->add_option("--transactions", in_txns, "Transaction CSV")->required();
    ingest_cmd->add_option("--postal-map", in_postal, "Postal-code/region map CSV")->required();
    ingest_cmd->add_option("--out-dir", ingest_out, "Where to write rejects.csv (optional)");
    ingest_cmd->add_option("--max-reject-rate", max_reject_rate,
                           "Maximum tolerated reject fraction");

    // ---- infer ----
    auto* infer_cmd =
        app.add_subcommand("infer", "Bootstrapped ensemble inference for one security");
    std::string infer_security, infer_out = "infer_out", infer_method = "c3net";
    EnsembleParams infer_params;
    double infer_alpha = 0.01;
    bool write_ensemble = false;
    infer_cmd->add_option("--transactions", in_txns, "Transaction CSV")->required();
    infer_cmd->add_option("--postal-map", in_postal, "Postal map CSV")->required();
    infer_cmd->add_option("--security", infer_security, "Security id")->required();
    infer_cmd->add_option("--out-dir", infer_out, "Output directory");
    infer_cmd->add_option("--method", infer_method, "c3net or mst");
    infer_cmd->add_option("--bootstrap-replicas", infer_params.bootstrap_replicas,
                          "B (0 = single inference on the raw data)");
    infer_cmd->add_option("--alpha", infer_alpha, "Aggregation significance level");
    infer_cmd->add_option("--alpha-mi", infer_params.alpha_mi, "MI significance level");
    infer_cmd->add_option("--null-replicas", infer_params.null_replicas, "R");
    infer_cmd->add_option("--min-active-days", infer_params.min_active_days,
                          "Node eligibility: nonzero days required");
    infer_cmd->add_option("--seed", infer_params.seed, "Root seed");
    infer_cmd->add_flag("--write-ensemble", write_ensemble, "Write every replica network");

    // ---- aggregate ----
    auto* agg_cmd = app.add_subcommand("aggregate", "Aggregate an ensemble of network JSONs");
    std::vector<std::string> agg_inputs;
    std::string agg_out = "aggregate_out";
    double agg_alpha = 0.01;
    int occurrence_top = 54;
    agg_cmd->add_option("networks", agg_inputs, "Network JSON files")->required()->expected(-1);
    agg_cmd->add_option("--out-dir", agg_out, "Output directory");
    agg_cmd->add_option("--alpha", agg_alpha, "Significance level");
    agg_cmd->add_option("--occurrence-top", occurrence_top,
                        "Rows in the occurrence matrix CSV (0 = skip)");

    // ---- pipeline ----
    auto* pipe_cmd = app.add_subcommand("pipeline", "Run the full multilayer pipeline");
    std::string pipe_config_path, pipe_manifest_path;
    pipe_cmd->add_option("--config", pipe_config_path,
                         "Flat key=value configuration file; explicit flags win");
    pipe_cmd->add_option("--from-manifest", pipe_manifest_path,
                         "Replay the configuration of a previous run's manifest.json");
    PipelineConfig pconfig;
    std::string pipe_method = "c3net", pipe_order = "none", pipe_start;
    pipe_cmd->add_option("--transactions", pconfig.transactions_csv, "Transaction CSV")->required();
    pipe_cmd->add_option("--postal-map", pconfig.postal_map_csv, "Postal map CSV")->required();
    pipe_cmd->add_option("--out-dir", pconfig.out_dir, "Output directory")->required();
    pipe_cmd->add_option("--securities", pconfig.securities, "Explicit security list");
    pipe_cmd->add_option("--top-securities", pconfig.top_securities,
                         "Keep the top-K securities by (investors, transactions)");
    pipe_cmd->add_option("--window-months", pconfig.window_months,
                         "Window length in months (0 = whole period)");
    pipe_cmd->add_option("--start-date", pipe_start, "Window anchor date (ISO)");
    pipe_cmd->add_option("--bootstrap-replicas", pconfig.bootstrap_replicas, "B");
    pipe_cmd->add_option("--alpha", pconfig.alpha, "Aggregation significance level");
    pipe_cmd->add_option("--alpha-mi", pconfig.alpha_mi, "MI significance level");
    pipe_cmd->add_option("--null-replicas", pconfig.null_replicas, "R");
    pipe_cmd->add_option("--min-active-days", pconfig.min_active_days, "Node eligibility");
    pipe_cmd->add_option("--method", pipe_method, "c3net or mst");
    pipe_cmd->add_option("--order", pipe_order, "ST, TS, or none");
    pipe_cmd->add_option("--seed", pconfig.seed, "Root seed");
    pipe_cmd->add_option("--workers", pconfig.workers, "Worker threads (0 = auto)");
    pipe_cmd->add_option("--max-reject-rate", pconfig.max_reject_rate, "Ingestion tolerance");

    // ---- compare ----
    auto* cmp_cmd = app.add_subcommand("compare", "Overlap report for two networks");
    std::string cmp_a, cmp_b, cmp_out;
    cmp_cmd->add_option("a", cmp_a, "First network JSON")->required();
    cmp_cmd->add_option("b", cmp_b, "Second network JSON")->required();
    cmp_cmd->add_option("--out", cmp_out, "Comparison CSV path (default: stdout)");

    // ---- centrality ----
    auto* cent_cmd = app.add_subcommand("centrality", "Degree/load/closeness per category");
    std::string cent_in, cent_out;
    cent_cmd->add_option("network", cent_in, "Network JSON")->required();
    cent_cmd->add_option("--out", cent_out, "CSV path (default: stdout)");

    // ---- export ----
    auto* export_cmd = app.add_subcommand("export", "Convert a network JSON to another format");
    std::string export_in, export_out, export_format = "edgelist";
    export_cmd->add_option("network", export_in, "Network JSON")->required();
    export_cmd->add_option("--format", export_format, "edgelist, dot, or json");
    export_cmd->add_option("--out", export_out, "Output path")->required();

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (!args.empty() && args[0] == "pipeline") {
            for (std::size_t i = 1; i + 1 < args.size(); ++i)
                if (args[i] == "--config") {
                    args = expand_config_file(args, args[i + 1]);
                    break;
                }
            for (std::size_t i = 1; i + 1 < args.size(); ++i)
                if (args[i] == "--from-manifest") {
                    args = expand_manifest(args, args[i + 1]);
                    break;
                }
        }
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }

    try {
        if (*synth_cmd) {
            auto start = Date::parse(synth_start);
            if (!start) throw Error("bad --start-date: " + synth_start);
            synth_config.start_date = *start;
            for (const auto& spec : planted_specs)
                synth_config.planted.push_back(parse_planted(spec));
            const auto result = generate(synth_config);

            fs::create_directories(synth_out);
            const PostalMap postal = default_postal_map();
            write_postal_map((fs::path(synth_out) / "postal_map.csv").string(), postal);
            write_transactions_csv((fs::path(synth_out) / "transactions.csv").string(),
                                   result.transactions, invert_postal(postal));
            nlohmann::json truth;
            truth["seed"] = synth_config.seed;
            truth["n_days"] = synth_config.n_days;
            truth["securities"] = result.security_ids;
            auto planted = nlohmann::json::array();
            for (std::size_t i = 0; i < synth_config.planted.size(); ++i) {
                const auto& p = synth_config.planted[i];
                planted.push_back({{"a", p.a.name()},
                                   {"b", p.b.name()},
                                   {"rho", p.rho}});
            }
            truth["planted"] = std::move(planted);
            write_text_file((fs::path(synth_out) / "ground_truth.json").string(),
                            truth.dump(2) + "\n");
            std::printf("wrote %zu transactions for %d securities to %s\n",
                        result.transactions.size(), synth_config.n_securities, synth_out.c_str());
            return kExitOk;
        }

        if (*ingest_cmd) {
            const auto postal = load_postal_map(in_postal);
            const auto result = ingest_csv(in_txns, postal);
            print_ingest_summary(result);
            if (!ingest_out.empty()) {
                fs::create_directories(ingest_out);
                std::string rejects = "line,reason,raw\n";
                for (const auto& r : result.rejects)
                    rejects += std::to_string(r.line) + "," + r.reason + ",\"" + r.raw + "\"\n";
                write_text_file((fs::path(ingest_out) / "rejects.csv").string(), rejects);
            }
            const long long total = result.summary.accepted + result.summary.rejected;
            const double rate =
                total == 0 ? 1.0 : static_cast<double>(result.summary.rejected) / total;
            return rate > max_reject_rate ? kExitValidation : kExitOk;
        }

        if (*infer_cmd) {
            auto method = method_from_name(infer_method);
            if (!method) throw Error("unknown method: " + infer_method);
            infer_params.method = *method;
            const auto postal = load_postal_map(in_postal);
            const auto ingest = ingest_csv(in_txns, postal);
            const auto txns = security_transactions(ingest, infer_security);
            const auto calendar = make_calendar(txns);
            const auto ensemble = infer_bootstrap_ensemble(txns, calendar, infer_params);

            fs::create_directories(infer_out);
            if (write_ensemble) {
                fs::create_directories((fs::path(infer_out) / "ensemble").string());
                for (std::size_t b = 0; b < ensemble.size(); ++b) {
                    char name[48];
                    std::snprintf(name, sizeof(name), "ensemble/replica_%04zu.network.json", b);
                    write_network_json((fs::path(infer_out) / name).string(), ensemble[b]);
                }
            }
            if (infer_params.bootstrap_replicas == 0) {
                write_network_json((fs::path(infer_out) / "network.json").string(),
                                   ensemble.front());
                std::printf("single inference: %d edges\n", ensemble.front().edge_count());
                return kExitOk;
            }
            auto report = aggregate(ensemble, infer_alpha);
            report.result.meta.security_id = infer_security;
            report.result.meta.provenance = {
                {"seed", std::to_string(infer_params.seed)},
                {"bootstrap_replicas", std::to_string(infer_params.bootstrap_replicas)},
                {"null_replicas", std::to_string(infer_params.null_replicas)},
                {"alpha", std::to_string(infer_alpha)},
                {"alpha_mi", std::to_string(infer_params.alpha_mi)},
                {"method", infer_method},
            };
            write_report_json((fs::path(infer_out) / "report.json").string(), report);
            write_network_json((fs::path(infer_out) / "network.json").string(), report.result);
            write_occurrence_csv((fs::path(infer_out) / "occurrence.csv").string(),
                                 occurrence_matrix(ensemble, occurrence_top));
            std::printf("ensemble of %zu networks, %lld links, %d distinct; threshold %s -> %d "
                        "significant edges\n",
                        ensemble.size(), report.counts.total(), report.n_tests,
                        report.threshold ? std::to_string(*report.threshold).c_str() : "n/a",
                        report.result.edge_count());
            return report.degenerate ? kExitDegenerate : kExitOk;
        }

        if (*agg_cmd) {
            std::vector<BinaryNetwork> ensemble;
            for (const auto& path : agg_inputs) ensemble.push_back(read_network_json(path));
            const auto report = aggregate(ensemble, agg_alpha);
            fs::create_directories(agg_out);
            write_report_json((fs::path(agg_out) / "report.json").string(), report);
            write_network_json((fs::path(agg_out) / "network.json").string(), report.result);
            if (occurrence_top > 0)
                write_occurrence_csv((fs::path(agg_out) / "occurrence.csv").string(),
                                     occurrence_matrix(ensemble, occurrence_top));
            std::printf("aggregated %zu networks: p_hat=%.6g, n_tests=%d, threshold=%s, %d edges\n",
                        ensemble.size(), report.p_hat, report.n_tests,
                        report.threshold ? std::to_string(*report.threshold).c_str() : "n/a",
                        report.result.edge_count());
            return report.degenerate ? kExitDegenerate : kExitOk;
        }

        if (*pipe_cmd) {
            auto method = method_from_name(pipe_method);
            if (!method) throw Error("unknown method: " + pipe_method);
            pconfig.method = *method;
            if (pipe_order != "none") {
                auto order = order_from_name(pipe_order);
                if (!order) throw Error("order must be ST, TS, or none");
                pconfig.order = order;
            }
            if (!pipe_start.empty()) {
                auto start = Date::parse(pipe_start);
                if (!start) throw Error("bad --start-date: " + pipe_start);
                pconfig.start_date = start;
            }
            const auto outcome = run_pipeline(pconfig);
            for (const auto& w : outcome.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
            if (!outcome.manifest_path.empty())
                std::printf("manifest %s (hash %016llx)\n", outcome.manifest_path.c_str(),
                            static_cast<unsigned long long>(outcome.manifest_hash));
            return outcome.exit_code;
        }

        if (*cmp_cmd) {
            const auto cmp =
                compare_networks(read_network_json(cmp_a), read_network_json(cmp_b));
            if (!cmp_out.empty()) {
                write_comparison_csv(cmp_out, cmp);
            } else {
                std::printf("links: only_a=%d both=%d only_b=%d jaccard=%.4f\n", cmp.links.only_a,
                            cmp.links.both, cmp.links.only_b, cmp.links.jaccard);
                std::printf("nodes: only_a=%d both=%d only_b=%d jaccard=%.4f\n", cmp.nodes.only_a,
                            cmp.nodes.both, cmp.nodes.only_b, cmp.nodes.jaccard);
                std::printf("degree spearman: %.4f\n", cmp.degree_spearman);
            }
            return kExitOk;
        }

        if (*cent_cmd) {
            const auto rows = centrality_report(read_network_json(cent_in));
            if (!cent_out.empty()) {
                write_centrality_csv(cent_out, rows);
            } else {
                for (int i = 0; i < kCategoryCount; ++i)
                    if (rows[i].degree > 0)
                        std::printf("%s: degree=%.4f load=%.4f closeness=%.4f\n",
                                    CategoryId::from_index(i).name().c_str(), rows[i].degree,
                                    rows[i].load, rows[i].closeness);
            }
            return kExitOk;
        }

        if (*export_cmd) {
            const auto net = read_network_json(export_in);
            if (export_format == "edgelist")
                write_edge_list_csv(export_out, net);
            else if (export_format == "dot")
                write_dot(export_out, net);
            else if (export_format == "json")
                write_network_json(export_out, net);
            else
                throw Error("unknown export format: " + export_format);
            return kExitOk;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
    return kExitOk;
}
