// Acceptance suite: every criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <unistd.h>

#include "invnet/aggregate.hpp"
#include "invnet/analysis.hpp"
#include "invnet/categorize.hpp"
#include "invnet/inference.hpp"
#include "invnet/io.hpp"
#include "invnet/mi.hpp"
#include "invnet/netvolume.hpp"
#include "invnet/pipeline.hpp"
#include "invnet/rng.hpp"
#include "invnet/synth.hpp"
#include "support/oracles.hpp"

using namespace invnet;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: threshold reproduction -----------------------------------

void criterion_thresholds() {
    const auto t0 = std::chrono::steady_clock::now();
    struct Case {
        int N;
        double p;
        double alpha_adjusted;
        int expected;
    };
    const Case cases[] = {
        {100, 8853.0 / 485100.0, 0.01 / 1195, 10},
        {12, 2361.0 / 58212.0, 0.01 / 1420, 5},
        {12, 858.0 / 58212.0, 0.01 / 673, 4},
        {100, 20229.0 / 485100.0, 0.01 / 3218, 16},
    };
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto got = occurrence_threshold(c.N, c.p, c.alpha_adjusted);
        ok = ok && got && *got == c.expected;
        detail += std::to_string(got ? *got : -1) + "/" + std::to_string(c.expected) + " ";
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    report("criterion 1: reference occurrence thresholds, exact", ok,
           "got/expected: " + detail + "in " + std::to_string(dt) + " s");
}

// ---- criterion 2: p-hat arithmetic ------------------------------------------

void criterion_phat() {
    WeightedCountNetwork a(100);
    int placed = 0;
    for (int i = 0; i < kCategoryCount && placed < 8853; ++i)
        for (int j = i + 1; j < kCategoryCount && placed < 8853; ++j) {
            const int add = std::min(100, 8853 - placed);
            a.add(i, j, add);
            placed += add;
        }
    WeightedCountNetwork b(12);
    placed = 0;
    for (int i = 0; i < kCategoryCount && placed < 2361; ++i)
        for (int j = i + 1; j < kCategoryCount && placed < 2361; ++j) {
            const int add = std::min(12, 2361 - placed);
            b.add(i, j, add);
            placed += add;
        }
    const double pa = estimate_link_probability(a, kCategoryCount);
    const double pb = estimate_link_probability(b, kCategoryCount);
    const bool ok = std::abs(pa - 8853.0 / 485100.0) <= 1e-12 * (8853.0 / 485100.0) &&
                    std::abs(pb - 2361.0 / 58212.0) <= 1e-12 * (2361.0 / 58212.0);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "p1=%.12g (1.825e-2), p2=%.12g (4.056e-2)", pa, pb);
    report("criterion 2: ensemble link probability arithmetic", ok, detail);
}

// ---- criterion 3a: planted recovery ------------------------------------------

void criterion_planted_recovery() {
    const auto t0 = std::chrono::steady_clock::now();

    SynthConfig config;
    config.n_days = 250;
    config.seed = 1;
    config.volume_sigma = 1000.0;
    config.tx_rate = 3.0;
    config.overshoot = 0.35;
    std::set<Edge> planted;
    for (int k = 0; k < 20; ++k) {
        const int a = k, b = 40 + k;
        config.planted.push_back({CategoryId::from_index(a), CategoryId::from_index(b),
                                  (k % 2 ? -1.0 : 1.0) * (0.6 + 0.02 * k),
                                  {}});
        planted.insert(Edge(a, b));
    }
    const auto synth = generate(config);
    std::vector<CategorizedTransaction> txns;
    txns.reserve(synth.transactions.size());
    for (const auto& t : synth.transactions) txns.push_back(categorize(t));

    EnsembleParams params;
    params.bootstrap_replicas = 100;
    params.null_replicas = 100;
    params.alpha_mi = 2e-5;  // calibrated once via the Monte Carlo oracle, frozen
    params.seed = 7932;
    const auto ensemble = infer_bootstrap_ensemble(txns, synth.calendar, params);
    const auto agg = aggregate(ensemble, 0.01);

    int hits = 0, false_pos = 0;
    for (const auto& e : agg.result.edges()) {
        if (planted.count(e))
            ++hits;
        else
            ++false_pos;
    }
    const double recovery = hits / 20.0;
    const int out_edges = agg.result.edge_count();
    const double fdr = out_edges == 0 ? 1.0 : static_cast<double>(false_pos) / out_edges;
    const double dt = seconds_since(t0);
    const bool ok = recovery >= 0.90 && fdr <= 0.10 && dt < 300.0;
    char detail[192];
    std::snprintf(detail, sizeof(detail),
                  "recovery %.0f%% (>=90%%), FDR %.1f%% (<=10%%), threshold %d, %d edges, %.1f s "
                  "(<300)",
                  100 * recovery, 100 * fdr, agg.threshold ? *agg.threshold : -1, out_edges, dt);
    report("criterion 3a: planted-structure recovery via bootstrapped C3NET", ok, detail);
}

// ---- criterion 3b: structural invariants -------------------------------------

void criterion_structural() {
    Rng rng(60601);
    bool c3net_ok = true;
    for (int round = 0; round < 1000; ++round) {
        const int n = 2 + static_cast<int>(rng.uniform_below(98));
        MIMatrix mi;
        PairMask mask;
        for (int i = 0; i < n; ++i) mi.set_eligible(i, true);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.uniform01() < 0.3) {
                    mi.set(i, j, rng.uniform01(), false);
                    if (rng.uniform01() < 0.7) mask.set(i, j, true);
                }
        if (c3net(mi, mask).edge_count() > n) c3net_ok = false;
    }
    report("criterion 3b-1: C3NET edge count <= n on 1000 random MI matrices", c3net_ok,
           c3net_ok ? "bound held in every instance" : "bound violated");

    bool mst_ok = true;
    int instances = 0;
    for (int n = 2; n <= 6; ++n) {
        for (int round = 0; round < 200; ++round) {
            std::vector<oracle::WEdge> oracle_edges;
            MIMatrix mi;
            for (int i = 0; i < n; ++i) mi.set_eligible(i, true);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    const double v = rng.uniform01();
                    mi.set(i, j, v, false);
                    oracle_edges.push_back({-v, i, j});
                }
            const auto net = mst(mi);
            std::vector<double> got;
            for (const auto& e : net.edges()) got.push_back(-mi.at(e.a, e.b));
            std::sort(got.begin(), got.end());
            const auto best = oracle::mst_exhaustive(n, oracle_edges);
            double got_total = 0, best_total = 0;
            for (double w : got) got_total += w;
            for (double w : best) best_total += w;
            if (got.size() != best.size() || got_total != best_total) mst_ok = false;
            ++instances;
        }
    }
    report("criterion 3b-2: MST equals exhaustive search on all n <= 6 instances", mst_ok,
           std::to_string(instances) + " instances, exact weight equality");
}

// ---- criterion 3c: aggregated MST is not a tree -------------------------------

void criterion_mst_not_tree() {
    // Real bootstrapped MST ensemble on planted synthetic data.
    SynthConfig config;
    config.n_days = 120;
    config.seed = 17;
    config.planted.push_back({CategoryId::from_index(4), CategoryId::from_index(61), 0.8, {}});
    const auto synth = generate(config);
    std::vector<CategorizedTransaction> txns;
    for (const auto& t : synth.transactions) txns.push_back(categorize(t));

    EnsembleParams params;
    params.bootstrap_replicas = 30;
    params.method = Method::Mst;
    params.seed = 5;
    const auto ensemble = infer_bootstrap_ensemble(txns, synth.calendar, params);
    const auto agg = aggregate(ensemble, 0.01);

    const auto active = agg.result.active_nodes();
    // component count via union-find over active nodes
    std::vector<int> parent(kCategoryCount);
    for (int i = 0; i < kCategoryCount; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : agg.result.edges()) parent[find(e.a)] = find(e.b);
    std::set<int> roots;
    for (int v : active) roots.insert(find(v));
    const int edges = agg.result.edge_count();
    const int forest_edges = static_cast<int>(active.size()) - static_cast<int>(roots.size());
    const bool not_a_tree = edges > forest_edges;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%d edges over %zu active nodes in %zu components (a forest would have %d)",
                  edges, active.size(), roots.size(), forest_edges);
    report("criterion 3c: aggregated MST ensemble is not a tree", not_a_tree && edges > 0, detail);
}

// ---- criterion 3d: aggregation order sensitivity ------------------------------

void criterion_order_sensitivity() {
    EnsembleGrid grid(2, 2);
    BinaryNetwork e01;
    e01.add_edge(0, 1);
    grid.at(0, 0) = e01;
    grid.at(0, 1) = e01;
    BinaryNetwork junk0, junk1;
    int placed = 0;
    for (int i = 2; i < kCategoryCount && placed < 300; ++i)
        for (int j = i + 1; j < kCategoryCount && placed < 300; ++j) {
            (placed < 150 ? junk0 : junk1).add_edge(i, j);
            ++placed;
        }
    grid.at(1, 0) = junk0;
    grid.at(1, 1) = junk1;

    const auto st = multilayer_aggregate(grid, AggregationOrder::SecuritiesThenTime, 0.01);
    const auto ts = multilayer_aggregate(grid, AggregationOrder::TimeThenSecurities, 0.01);
    const bool differs = !st.final_network.same_edges(ts.final_network) &&
                         ts.final_network.has_edge(0, 1) && !st.final_network.has_edge(0, 1);

    EnsembleGrid same(3, 4);
    BinaryNetwork cell;
    cell.add_edge(0, 1);
    cell.add_edge(2, 3);
    for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 4; ++t) same.at(s, t) = cell;
    const auto st2 = multilayer_aggregate(same, AggregationOrder::SecuritiesThenTime, 0.01);
    const auto ts2 = multilayer_aggregate(same, AggregationOrder::TimeThenSecurities, 0.01);
    const bool agrees = st2.final_network.same_edges(ts2.final_network);

    report("criterion 3d: ST/TS order sensitivity", differs && agrees,
           std::string("adversarial grid: ST") + (differs ? " != " : " == ") +
               "TS; identical grid: ST" + (agrees ? " == " : " != ") + "TS");
}

// ---- criterion 3e: MI correctness ---------------------------------------------

void criterion_mi() {
    struct MiRef {
        double rho;
        double mi;
    };
    // frozen 50-digit evaluations of -0.5*ln(1-rho^2)
    const MiRef table[] = {
        {0.0, 0.0},
        {0.1, 0.005025167926750720591774428779273853042757503837315},
        {0.2, 0.020410997260127564777288532577659935088605873816760},
        {0.3, 0.047155339735620663438571362180115040379925151457739},
        {0.4, 0.08717669357238887635046034304333492238331371056621},
        {0.5, 0.14384103622589046371960950299691371575175485544888},
        {0.6, 0.22314355131420975576629509030983450337460108554800},
        {0.7, 0.33667227663188279819560152728653808748325470342452},
        {0.8, 0.51082562376599068320551409630366193487811079644575},
        {0.9, 0.8303656034108254540134777387404374389824118579792},
    };
    bool table_ok = true;
    for (const auto& ref : table) {
        for (double sign : {1.0, -1.0}) {
            const double got = mi_from_rho(sign * ref.rho).value;
            const double tol = ref.mi == 0.0 ? 1e-12 : 1e-12 * ref.mi;
            if (std::abs(got - ref.mi) > tol) table_ok = false;
        }
    }

    // scale invariance of mi_matrix at 1e-9
    Rng rng(424242);
    std::vector<CategorizedTransaction> txns, scaled;
    const Date base = Date::from_ymd(2004, 1, 5);
    for (int t = 0; t < 30; ++t)
        for (int c = 0; c < 6; ++c) {
            const auto v = static_cast<std::int64_t>(std::llround(500 * rng.normal()));
            if (v == 0) continue;
            txns.push_back({Date(base.days_since_epoch() + t), CategoryId::from_index(c), v});
            scaled.push_back({Date(base.days_since_epoch() + t), CategoryId::from_index(c), v * 53});
        }
    const auto m1 = mi_matrix(build_net_volume(txns, make_calendar(txns)), 5);
    const auto m2 = mi_matrix(build_net_volume(scaled, make_calendar(scaled)), 5);
    bool scale_ok = true;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (m1.has(i, j) &&
                std::abs(m1.at(i, j) - m2.at(i, j)) > 1e-9 * std::max(1.0, m1.at(i, j)))
                scale_ok = false;

    report("criterion 3e: MI closed form at 1e-12 and scale invariance at 1e-9",
           table_ok && scale_ok,
           std::string("table ") + (table_ok ? "ok" : "FAILED") + ", scaling " +
               (scale_ok ? "ok" : "FAILED"));
}

// ---- criterion 3f: binomial tail vs exact rational arithmetic -----------------

void criterion_binomial() {
    const std::pair<std::uint32_t, std::uint32_t> ps[] = {{1, 100}, {1, 10}, {1, 2}};
    bool ok = true;
    long double worst = 0.0L;
    int checked = 0;
    for (int N = 1; N <= 30; ++N)
        for (const auto& [a, b] : ps)
            for (int n = 0; n <= N; ++n) {
                const long double exact = oracle::binomial_tail_exact(n, N, a, b);
                const double got = binomial_tail(n, N, static_cast<double>(a) / b);
                ++checked;
                if (exact == 0.0L) {
                    if (got != 0.0) ok = false;
                    continue;
                }
                const long double rel = std::abs(static_cast<long double>(got) - exact) / exact;
                worst = std::max(worst, rel);
                if (rel >= 1e-10L) ok = false;
            }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d cases, worst relative error %.3Le (< 1e-10)",
                  checked, worst);
    report("criterion 3f: binomial tail vs exact rational arithmetic", ok, detail);
}

// ---- criterion 3g: pipeline determinism ----------------------------------------

void criterion_determinism() {
    const fs::path base =
        fs::temp_directory_path() / ("invnet_accept_" + std::to_string(::getpid()));
    fs::remove_all(base);
    fs::create_directories(base);

    SynthConfig sc;
    sc.n_securities = 2;
    sc.n_days = 130;
    sc.seed = 31;
    sc.planted.push_back({CategoryId::from_index(3), CategoryId::from_index(55), 0.8, {}});
    const auto synth = generate(sc);
    PostalMap postal;
    for (int r = 0; r < kRegionCount; ++r) {
        char code[8];
        std::snprintf(code, sizeof(code), "P%02d", r);
        postal[code] = static_cast<Region>(r);
    }
    std::map<Region, std::string> inverse;
    for (const auto& [code, region] : postal) inverse[region] = code;
    write_postal_map((base / "postal.csv").string(), postal);
    write_transactions_csv((base / "tx.csv").string(), synth.transactions, inverse);

    PipelineConfig config;
    config.transactions_csv = (base / "tx.csv").string();
    config.postal_map_csv = (base / "postal.csv").string();
    config.window_months = 3;
    config.bootstrap_replicas = 6;
    config.null_replicas = 15;
    config.order = AggregationOrder::TimeThenSecurities;
    config.seed = 99;
    config.workers = 2;

    config.out_dir = (base / "run1").string();
    const auto r1 = run_pipeline(config);
    config.out_dir = (base / "run2").string();
    const auto r2 = run_pipeline(config);
    const bool same = r1.manifest_hash == r2.manifest_hash && r1.exit_code == 0;

    // changing only the seed must change at least one bootstrap replica
    std::vector<CategorizedTransaction> txns;
    for (const auto& t : synth.transactions)
        if (t.security_id == "SEC000") txns.push_back(categorize(t));
    const auto calendar = make_calendar(txns);
    EnsembleParams ep;
    ep.bootstrap_replicas = 6;
    ep.null_replicas = 15;
    ep.seed = 99;
    const auto e1 = infer_bootstrap_ensemble(txns, calendar, ep);
    ep.seed = 100;
    const auto e2 = infer_bootstrap_ensemble(txns, calendar, ep);
    bool replica_changed = false;
    for (std::size_t b = 0; b < e1.size(); ++b)
        replica_changed = replica_changed || !e1[b].same_edges(e2[b]);

    fs::remove_all(base);
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "manifest hash %016llx reproduced: %s; seed change alters a replica: %s",
                  static_cast<unsigned long long>(r1.manifest_hash), same ? "yes" : "NO",
                  replica_changed ? "yes" : "NO");
    report("criterion 3g: full-pipeline determinism", same && replica_changed, detail);
}

// ---- criterion 4: comparison arithmetic ----------------------------------------

void criterion_comparison() {
    BinaryNetwork a, b;
    for (int k = 0; k < 17; ++k) {
        a.add_edge(2 * k, 2 * k + 1);
        b.add_edge(2 * k, 2 * k + 1);
    }
    b.add_edge(90, 91);
    b.add_edge(92, 93);
    const auto cmp = compare_networks(a, b);
    const bool ok = cmp.nodes.only_a == 0 && cmp.nodes.both == 34 && cmp.nodes.only_b == 4 &&
                    std::abs(cmp.nodes.jaccard - 0.8947) <= 5e-5;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "nodes 0/34/4, Jaccard %.6f (0.8947 +/- 5e-5)",
                  cmp.nodes.jaccard);
    report("criterion 4: Jaccard comparison arithmetic", ok, detail);
}

}  // namespace

int main() {
    std::printf("invnet acceptance suite\n");
    criterion_thresholds();
    criterion_phat();
    criterion_planted_recovery();
    criterion_structural();
    criterion_mst_not_tree();
    criterion_order_sensitivity();
    criterion_mi();
    criterion_binomial();
    criterion_determinism();
    criterion_comparison();
    std::printf("%s (%d failure%s)\n", failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT",
                failures, failures == 1 ? "" : "s");
    return failures == 0 ? 0 : 1;
}
