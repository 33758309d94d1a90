#include "invnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "invnet/aggregate.hpp"

namespace invnet {

namespace {

SetOverlap overlap(const std::vector<int>& a, const std::vector<int>& b) {
    SetOverlap o;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() || ib < b.size()) {
        if (ib == b.size() || (ia < a.size() && a[ia] < b[ib])) {
            ++o.only_a;
            ++ia;
        } else if (ia == a.size() || b[ib] < a[ia]) {
            ++o.only_b;
            ++ib;
        } else {
            ++o.both;
            ++ia;
            ++ib;
        }
    }
    const int uni = o.only_a + o.both + o.only_b;
    o.jaccard = uni == 0 ? 1.0 : static_cast<double>(o.both) / uni;
    return o;
}

// Average ranks (ties share the mean rank).
std::vector<double> average_ranks(const std::vector<int>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

NetworkComparison compare_networks(const BinaryNetwork& a, const BinaryNetwork& b) {
    NetworkComparison cmp;

    auto edge_keys = [](const BinaryNetwork& g) {
        std::vector<int> keys;
        for (const auto& e : g.edges()) keys.push_back(pair_index(e.a, e.b));
        return keys;  // already sorted by construction
    };
    cmp.links = overlap(edge_keys(a), edge_keys(b));
    cmp.nodes = overlap(a.active_nodes(), b.active_nodes());

    std::vector<int> da(kCategoryCount), db(kCategoryCount);
    for (int i = 0; i < kCategoryCount; ++i) {
        da[i] = a.degree(i);
        db[i] = b.degree(i);
    }
    if (da == db) {
        cmp.degree_spearman = 1.0;
    } else {
        auto ra = average_ranks(da), rb = average_ranks(db);
        double ma = 0, mb = 0;
        for (int i = 0; i < kCategoryCount; ++i) {
            ma += ra[i];
            mb += rb[i];
        }
        ma /= kCategoryCount;
        mb /= kCategoryCount;
        double cab = 0, caa = 0, cbb = 0;
        for (int i = 0; i < kCategoryCount; ++i) {
            cab += (ra[i] - ma) * (rb[i] - mb);
            caa += (ra[i] - ma) * (ra[i] - ma);
            cbb += (rb[i] - mb) * (rb[i] - mb);
        }
        cmp.degree_spearman = (caa == 0 || cbb == 0) ? 0.0 : cab / std::sqrt(caa * cbb);
    }
    return cmp;
}

std::vector<NodeCentrality> centrality_report(const BinaryNetwork& g) {
    std::vector<NodeCentrality> out(kCategoryCount);
    const auto active = g.active_nodes();
    const int n_active = static_cast<int>(active.size());

    if (n_active >= 2)
        for (int v : active)
            out[v].degree = static_cast<double>(g.degree(v)) / (n_active - 1);

    // Brandes accumulation over every source; counts each unordered pair twice.
    std::vector<double> betweenness(kCategoryCount, 0.0);
    long long connected_ordered_pairs = 0;
    std::vector<long long> dist_sum(kCategoryCount, 0);
    std::vector<int> reach(kCategoryCount, 0);

    std::vector<int> dist(kCategoryCount), order;
    std::vector<double> sigma(kCategoryCount), delta(kCategoryCount);
    std::vector<std::vector<int>> preds(kCategoryCount);

    for (int s : active) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        order.clear();

        std::deque<int> queue{s};
        dist[s] = 0;
        sigma[s] = 1.0;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (int w : active) {
                if (w == v || !g.has_edge(v, w)) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int w = *it;
            for (int v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) {
                betweenness[w] += delta[w];
                connected_ordered_pairs += 1;
                dist_sum[s] += dist[w];
                reach[s] += 1;
            }
        }
    }

    if (connected_ordered_pairs > 0)
        for (int v : active)
            out[v].load = betweenness[v] / static_cast<double>(connected_ordered_pairs);
    for (int v : active)
        if (reach[v] > 0)
            out[v].closeness = static_cast<double>(reach[v]) / static_cast<double>(dist_sum[v]);
    return out;
}

OccurrenceTable occurrence_matrix(std::span<const BinaryNetwork> ensemble, int top_k) {
    if (ensemble.empty()) throw Error("occurrence_matrix: empty ensemble");
    OccurrenceTable table;
    table.n_members = static_cast<int>(ensemble.size());

    const auto counts = ensemble_counts(ensemble);
    std::vector<std::pair<int, Edge>> ranked;
    for (int i = 0; i < kCategoryCount; ++i)
        for (int j = i + 1; j < kCategoryCount; ++j)
            if (counts.count(i, j) > 0) ranked.push_back({counts.count(i, j), Edge(i, j)});
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    if (top_k < static_cast<int>(ranked.size())) ranked.resize(std::max(top_k, 0));

    table.presence.assign(ranked.size() * static_cast<std::size_t>(table.n_members), 0);
    for (std::size_t r = 0; r < ranked.size(); ++r) {
        table.edges.push_back(ranked[r].second);
        table.counts.push_back(ranked[r].first);
        for (int m = 0; m < table.n_members; ++m)
            if (ensemble[m].has_edge(ranked[r].second.a, ranked[r].second.b))
                table.presence[r * table.n_members + m] = 1;
    }
    return table;
}

}  // namespace invnet
