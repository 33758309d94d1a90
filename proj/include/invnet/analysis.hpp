// Network comparison (edge/node overlaps, Jaccard, degree-sequence Spearman)
// and per-node centralities (degree, load, closeness).
#pragma once

#include <span>

#include "invnet/types.hpp"

namespace invnet {

struct SetOverlap {
    int only_a = 0;
    int both = 0;
    int only_b = 0;
    double jaccard = 1.0;  // 1.0 when both sets are empty
};

struct NetworkComparison {
    SetOverlap links;
    SetOverlap nodes;        // active nodes = degree >= 1
    double degree_spearman;  // over the full 99-node universe, average ranks
};

NetworkComparison compare_networks(const BinaryNetwork& a, const BinaryNetwork& b);

struct NodeCentrality {
    double degree = 0.0;     // fraction of the other active nodes it touches
    double load = 0.0;       // fraction of shortest paths passing through it
    double closeness = 0.0;  // 1 / mean distance within its component; 0 if isolated
};

// One entry per category. Shortest paths are unweighted; disconnected graphs
// are handled per component.
std::vector<NodeCentrality> centrality_report(const BinaryNetwork& g);

struct OccurrenceTable {
    std::vector<Edge> edges;            // by occurrence count desc, then pair order
    std::vector<int> counts;            // parallel to edges
    int n_members = 0;
    std::vector<std::uint8_t> presence; // edges.size() x n_members, row-major

    bool present(std::size_t row, int member) const {
        return presence[row * static_cast<std::size_t>(n_members) + member] != 0;
    }
};

// The top_k most re-occurring edges and their per-member presence.
OccurrenceTable occurrence_matrix(std::span<const BinaryNetwork> ensemble, int top_k);

}  // namespace invnet
