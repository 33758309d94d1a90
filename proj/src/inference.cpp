#include "invnet/inference.hpp"

#include <algorithm>
#include <numeric>

#include "invnet/mi.hpp"
#include "invnet/netvolume.hpp"
#include "invnet/rng.hpp"

namespace invnet {

namespace {
const std::string kC3NetName = "c3net";
const std::string kMstName = "mst";

// Union-find with path halving.
struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};
}  // namespace

const std::string& to_string(Method m) { return m == Method::C3Net ? kC3NetName : kMstName; }

std::optional<Method> method_from_name(const std::string& name) {
    if (name == kC3NetName) return Method::C3Net;
    if (name == kMstName) return Method::Mst;
    return std::nullopt;
}

BinaryNetwork c3net(const MIMatrix& mi, const PairMask& mask) {
    BinaryNetwork net;
    net.meta.method = kC3NetName;
    net.meta.n_eligible = mi.n_eligible();
    for (int i = 0; i < kCategoryCount; ++i) {
        if (!mi.eligible(i)) continue;
        double best = -1.0;
        int best_j = -1;
        for (int j = 0; j < kCategoryCount; ++j) {
            if (j == i || !mi.has(i, j) || !mask.at(i, j)) continue;
            const double v = mi.at(i, j);
            if (v > best) {
                best = v;
                best_j = j;
            } else if (v == best && best_j >= 0 && Edge(i, j) < Edge(i, best_j)) {
                best_j = j;
            }
        }
        if (best_j >= 0) net.add_edge(i, best_j);
    }
    return net;
}

BinaryNetwork mst(const MIMatrix& mi) {
    if (mi.n_eligible() < 2) throw Error("mst: need at least 2 eligible nodes");

    struct WeightedEdge {
        double neg_mi;
        Edge e;
    };
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < kCategoryCount; ++i)
        for (int j = i + 1; j < kCategoryCount; ++j)
            if (mi.has(i, j)) edges.push_back({-mi.at(i, j), Edge(i, j)});
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        if (a.neg_mi != b.neg_mi) return a.neg_mi < b.neg_mi;
        return a.e < b.e;
    });

    BinaryNetwork net;
    net.meta.method = kMstName;
    net.meta.n_eligible = mi.n_eligible();
    DisjointSet ds(kCategoryCount);
    int added = 0;
    for (const auto& we : edges) {
        if (ds.unite(we.e.a, we.e.b)) {
            net.add_edge(we.e);
            ++added;
        }
    }
    net.meta.forest_warning = added < mi.n_eligible() - 1;
    return net;
}

std::vector<BinaryNetwork> infer_bootstrap_ensemble(
    std::span<const CategorizedTransaction> txns, std::span<const Date> calendar,
    const EnsembleParams& params) {
    if (txns.empty()) throw Error("infer_bootstrap_ensemble: empty transaction set");
    if (params.bootstrap_replicas < 0) throw Error("negative bootstrap replica count");

    std::vector<double> null_values;
    if (params.method == Method::C3Net)
        null_values = null_mi_distribution(txns, params.null_replicas, calendar, params.seed,
                                           params.min_active_days);

    auto infer_one = [&](std::span<const CategorizedTransaction> sample) -> BinaryNetwork {
        MIMatrix mi;
        try {
            mi = mi_matrix(build_net_volume(sample, calendar), params.min_active_days);
        } catch (const Error&) {
            // Sparse resamples can drop below 2 eligible categories; such a
            // replica carries no relationships.
            BinaryNetwork empty;
            empty.meta.method = to_string(params.method);
            empty.meta.n_eligible = 0;
            return empty;
        }
        if (params.method == Method::C3Net)
            return c3net(mi, significance_mask(mi, null_values, params.alpha_mi));
        return mst(mi);
    };

    std::vector<BinaryNetwork> ensemble;
    if (params.bootstrap_replicas == 0) {
        ensemble.push_back(infer_one(txns));
        return ensemble;
    }
    ensemble.reserve(params.bootstrap_replicas);
    for (int b = 0; b < params.bootstrap_replicas; ++b) {
        auto sample =
            bootstrap_resample(txns, substream_seed(params.seed, 0, static_cast<std::uint64_t>(b)));
        ensemble.push_back(infer_one(sample));
    }
    return ensemble;
}

}  // namespace invnet
