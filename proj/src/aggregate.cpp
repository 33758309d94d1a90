#include "invnet/aggregate.hpp"

#include <cmath>

namespace invnet {

WeightedCountNetwork ensemble_counts(std::span<const BinaryNetwork> ensemble) {
    if (ensemble.empty()) throw Error("ensemble_counts: empty ensemble");
    WeightedCountNetwork counts(static_cast<int>(ensemble.size()));
    for (const auto& net : ensemble)
        for (const auto& e : net.edges()) counts.add(e.a, e.b);
    return counts;
}

double estimate_link_probability(const WeightedCountNetwork& counts, int n_nodes) {
    const double possible = static_cast<double>(counts.ensemble_size()) * n_nodes *
                            (n_nodes - 1) / 2.0;
    if (possible <= 0.0) throw Error("estimate_link_probability: empty ensemble");
    return static_cast<double>(counts.total()) / possible;
}

double binomial_tail(int n_ij, int N, double p) {
    if (n_ij < 0 || N < 0 || n_ij > N || p < 0.0 || p > 1.0)
        throw Error("binomial_tail: arguments out of range");
    if (n_ij == 0) return 1.0;
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;

    // First term via log-gamma, successors via the term ratio; long double
    // keeps the relative error within ~1e-14 for the N used here.
    const long double lp = std::log(static_cast<long double>(p));
    const long double lq = std::log1p(static_cast<long double>(-p));
    long double lterm = std::lgamma(static_cast<long double>(N) + 1) -
                        std::lgamma(static_cast<long double>(n_ij) + 1) -
                        std::lgamma(static_cast<long double>(N - n_ij) + 1) +
                        n_ij * lp + (N - n_ij) * lq;
    long double term = std::exp(lterm);
    long double sum = term;
    const long double odds = static_cast<long double>(p) / (1.0L - static_cast<long double>(p));
    for (int n = n_ij; n < N; ++n) {
        term *= odds * static_cast<long double>(N - n) / static_cast<long double>(n + 1);
        sum += term;
    }
    if (sum > 1.0L) sum = 1.0L;
    return static_cast<double>(sum);
}

std::optional<int> occurrence_threshold(int N, double p, double alpha_adjusted) {
    if (alpha_adjusted <= 0.0 || alpha_adjusted >= 1.0)
        throw Error("occurrence_threshold: alpha_adjusted must be in (0,1)");
    // P(X > n0) = binomial_tail(n0 + 1); ascending scan, N is a few hundred.
    for (int n0 = 1; n0 <= N; ++n0) {
        const double exceed = n0 == N ? 0.0 : binomial_tail(n0 + 1, N, p);
        if (exceed < alpha_adjusted) return n0;
    }
    return std::nullopt;
}

AggregationReport aggregate(std::span<const BinaryNetwork> ensemble, double alpha) {
    if (ensemble.empty()) throw Error("aggregate: empty ensemble");
    if (alpha <= 0.0 || alpha >= 1.0) throw Error("aggregate: alpha must be in (0,1)");

    AggregationReport report;
    report.alpha = alpha;
    report.counts = ensemble_counts(ensemble);
    report.n_tests = report.counts.distinct();
    report.p_hat = estimate_link_probability(report.counts, kCategoryCount);
    report.result.meta.method = "aggregate";

    if (report.n_tests == 0) {
        report.degenerate = true;
        return report;
    }
    report.alpha_adjusted = alpha / report.n_tests;
    report.threshold =
        occurrence_threshold(report.counts.ensemble_size(), report.p_hat, report.alpha_adjusted);
    if (!report.threshold) return report;  // nothing can be significant

    for (int i = 0; i < kCategoryCount; ++i)
        for (int j = i + 1; j < kCategoryCount; ++j)
            if (report.counts.count(i, j) >= *report.threshold) report.result.add_edge(i, j);
    return report;
}

namespace {
const std::string kStName = "ST";
const std::string kTsName = "TS";
}  // namespace

std::optional<AggregationOrder> order_from_name(const std::string& name) {
    if (name == kStName) return AggregationOrder::SecuritiesThenTime;
    if (name == kTsName) return AggregationOrder::TimeThenSecurities;
    return std::nullopt;
}

const std::string& to_string(AggregationOrder o) {
    return o == AggregationOrder::SecuritiesThenTime ? kStName : kTsName;
}

MultilayerResult multilayer_aggregate(const EnsembleGrid& grid, AggregationOrder order,
                                      double alpha) {
    MultilayerResult result;
    const int S = grid.n_securities(), T = grid.n_windows();
    const bool securities_first = order == AggregationOrder::SecuritiesThenTime;
    const int groups = securities_first ? T : S;

    std::vector<BinaryNetwork> level_two;
    level_two.reserve(groups);
    for (int g = 0; g < groups; ++g) {
        std::vector<BinaryNetwork> members;
        if (securities_first) {
            members.reserve(S);
            for (int s = 0; s < S; ++s) members.push_back(grid.at(s, g));
        } else {
            members.reserve(T);
            for (int t = 0; t < T; ++t) members.push_back(grid.at(g, t));
        }
        AggregationReport rep = aggregate(members, alpha);
        rep.result.meta.window_label = securities_first ? "window " + std::to_string(g) : "";
        rep.result.meta.security_id = securities_first ? "" : "security " + std::to_string(g);
        level_two.push_back(rep.result);
        result.first_level.push_back(std::move(rep));
    }
    result.second_level = aggregate(level_two, alpha);
    result.final_network = result.second_level.result;
    result.final_network.meta.method = "multilayer-" + to_string(order);
    return result;
}

}  // namespace invnet
