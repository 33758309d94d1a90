// Network inference from an MI matrix: C3NET (each node keeps its single
// strongest significant MI link) and MST (Kruskal on -MI weights), plus the
// bootstrapped ensemble driver for one (security, window) cell.
#pragma once

#include <cstdint>
#include <span>

#include "invnet/types.hpp"

namespace invnet {

enum class Method { C3Net, Mst };

const std::string& to_string(Method m);
std::optional<Method> method_from_name(const std::string& name);

// For each node with at least one significant pair, add the edge to its
// maximum-MI significant partner. Ties break on the canonical pair order.
// Result has at most one edge per node before deduplication.
BinaryNetwork c3net(const MIMatrix& mi, const PairMask& mask);

// Spanning tree over the eligible nodes, weights -MI, greedy ascending
// insertion (equal weights break on the canonical pair order). A disconnected
// eligible set yields a spanning forest with meta.forest_warning set.
BinaryNetwork mst(const MIMatrix& mi);

struct EnsembleParams {
    int bootstrap_replicas = 100;  // B; 0 = single inference on the raw data
    Method method = Method::C3Net;
    double alpha_mi = 0.01;
    int null_replicas = 100;       // R
    int min_active_days = 5;
    std::uint64_t seed = 0;
};

// Replica b: bootstrap_resample(seed ^ b) -> build_net_volume -> mi_matrix
// (-> significance_mask for C3NET) -> method. The MI null distribution is
// estimated once from the unresampled transactions and shared by all
// replicas. A replica whose resample leaves fewer than 2 eligible categories
// contributes an empty network instead of aborting the ensemble.
std::vector<BinaryNetwork> infer_bootstrap_ensemble(
    std::span<const CategorizedTransaction> txns, std::span<const Date> calendar,
    const EnsembleParams& params);

}  // namespace invnet
