// Statistically validated aggregation of a network ensemble: edge occurrence
// counts, the Erdos-Renyi-style ensemble link probability, the binomial tail
// test with Bonferroni correction, and the two-level (security/time)
// aggregation in either order.
#pragma once

#include <span>

#include "invnet/types.hpp"

namespace invnet {

// counts(i,j) = number of ensemble members containing edge {i,j}.
WeightedCountNetwork ensemble_counts(std::span<const BinaryNetwork> ensemble);

// p_hat = total edge count in the ensemble / (N * M(M-1)/2).
double estimate_link_probability(const WeightedCountNetwork& counts, int n_nodes);

// P(X >= n_ij) for X ~ Binomial(N, p); exact incremental summation.
double binomial_tail(int n_ij, int N, double p);

// Smallest count n0 such that observing an edge MORE than n0 times is
// already below alpha_adjusted, i.e. P(X > n0) < alpha_adjusted; an edge
// with count >= n0 is then significant. Empty when no count n0 <= N works.
std::optional<int> occurrence_threshold(int N, double p, double alpha_adjusted);

// Full procedure: counts, p_hat, Bonferroni over the distinct observed
// edges, threshold, and the surviving-edge network. An all-empty ensemble
// comes back flagged degenerate with an empty result.
AggregationReport aggregate(std::span<const BinaryNetwork> ensemble, double alpha);

enum class AggregationOrder { SecuritiesThenTime, TimeThenSecurities };

std::optional<AggregationOrder> order_from_name(const std::string& name);  // "ST" / "TS"
const std::string& to_string(AggregationOrder o);

struct MultilayerResult {
    BinaryNetwork final_network;
    // One report per first-level group: per window for ST, per security for TS.
    std::vector<AggregationReport> first_level;
    AggregationReport second_level;
};

// ST: aggregate each window's column across securities, then aggregate the
// per-window networks over time. TS: rows first, then across securities.
// The two orders generally do not commute.
MultilayerResult multilayer_aggregate(const EnsembleGrid& grid, AggregationOrder order,
                                      double alpha);

}  // namespace invnet
