#include "doctest.h"

#include <cmath>

#include "invnet/analysis.hpp"
#include "invnet/rng.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace invnet;
using testutil::net;

TEST_CASE("comparing a network with itself") {
    const auto g = net({{0, 1}, {1, 2}, {3, 4}});
    const auto cmp = compare_networks(g, g);
    CHECK(cmp.links.only_a == 0);
    CHECK(cmp.links.only_b == 0);
    CHECK(cmp.links.both == 3);
    CHECK(cmp.links.jaccard == 1.0);
    CHECK(cmp.nodes.jaccard == 1.0);
    CHECK(cmp.degree_spearman == 1.0);
}

TEST_CASE("edge-disjoint networks have zero link Jaccard") {
    const auto a = net({{0, 1}, {2, 3}});
    const auto b = net({{4, 5}, {6, 7}});
    const auto cmp = compare_networks(a, b);
    CHECK(cmp.links.both == 0);
    CHECK(cmp.links.jaccard == 0.0);
    CHECK(cmp.nodes.both == 0);
}

TEST_CASE("node overlap 0/34/4 gives the reference Jaccard 0.8947") {
    // a: 34 shared active nodes; b: the same 34 plus 4 extra
    BinaryNetwork a, b;
    for (int k = 0; k < 17; ++k) {
        a.add_edge(2 * k, 2 * k + 1);  // nodes 0..33 active in a
        b.add_edge(2 * k, 2 * k + 1);
    }
    b.add_edge(90, 91);
    b.add_edge(92, 93);
    const auto cmp = compare_networks(a, b);
    CHECK(cmp.nodes.only_a == 0);
    CHECK(cmp.nodes.both == 34);
    CHECK(cmp.nodes.only_b == 4);
    CHECK(cmp.nodes.jaccard == doctest::Approx(0.8947).epsilon(5e-5));
}

TEST_CASE("comparison is symmetric up to swapping the diff fields") {
    Rng rng(44);
    BinaryNetwork a, b;
    for (int k = 0; k < 25; ++k) {
        a.add_edge(static_cast<int>(rng.uniform_below(50)),
                   50 + static_cast<int>(rng.uniform_below(49)));
        b.add_edge(static_cast<int>(rng.uniform_below(50)),
                   50 + static_cast<int>(rng.uniform_below(49)));
    }
    const auto ab = compare_networks(a, b);
    const auto ba = compare_networks(b, a);
    CHECK(ab.links.only_a == ba.links.only_b);
    CHECK(ab.links.only_b == ba.links.only_a);
    CHECK(ab.links.both == ba.links.both);
    CHECK(ab.links.jaccard == ba.links.jaccard);
    CHECK(ab.degree_spearman == doctest::Approx(ba.degree_spearman).epsilon(1e-12));
}

TEST_CASE("star center has normalized degree 1") {
    BinaryNetwork g;
    const int k = 7;
    for (int leaf = 1; leaf <= k; ++leaf) g.add_edge(0, leaf);
    const auto rows = centrality_report(g);
    CHECK(rows[0].degree == 1.0);
    CHECK(rows[1].degree == doctest::Approx(1.0 / k));
    CHECK(rows[0].load > rows[1].load);
    CHECK(rows[0].closeness == 1.0);
}

TEST_CASE("path graph: middle node carries 1 of 3 pair paths") {
    const auto g = net({{10, 20}, {20, 30}});
    const auto rows = centrality_report(g);
    CHECK(rows[20].load == doctest::Approx(1.0 / 3.0));
    CHECK(rows[10].load == 0.0);
    CHECK(rows[30].load == 0.0);
    CHECK(rows[20].closeness == 1.0);
    CHECK(rows[10].closeness == doctest::Approx(2.0 / 3.0));
    // isolated nodes stay at zero by convention
    CHECK(rows[0].degree == 0.0);
    CHECK(rows[0].closeness == 0.0);
}

TEST_CASE("two components are handled without infinities") {
    const auto g = net({{0, 1}, {1, 2}, {50, 51}});
    const auto rows = centrality_report(g);
    CHECK(rows[1].closeness == 1.0);
    CHECK(rows[50].closeness == 1.0);
    for (int i = 0; i < kCategoryCount; ++i) {
        CHECK(std::isfinite(rows[i].closeness));
        CHECK(rows[i].degree >= 0.0);
        CHECK(rows[i].degree <= 1.0);
    }
}

TEST_CASE("centralities match shortest-path enumeration on random graphs up to 6 nodes") {
    Rng rng(31);
    for (int round = 0; round < 120; ++round) {
        const int n = 3 + static_cast<int>(rng.uniform_below(4));
        BinaryNetwork g;
        std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
        bool any = false;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.uniform01() < 0.5) {
                    g.add_edge(i, j);
                    adj[i][j] = adj[j][i] = 1;
                    any = true;
                }
        if (!any) continue;
        std::vector<double> load, closeness;
        oracle::centrality_enumerate(adj, load, closeness);
        const auto rows = centrality_report(g);
        for (int v = 0; v < n; ++v) {
            CHECK(rows[v].load == doctest::Approx(load[v]).epsilon(1e-12));
            CHECK(rows[v].closeness == doctest::Approx(closeness[v]).epsilon(1e-12));
        }
    }
}

TEST_CASE("occurrence matrix ranks edges and keeps presence per member") {
    std::vector<BinaryNetwork> ensemble(3);
    ensemble[0] = net({{0, 1}, {2, 3}});
    ensemble[1] = net({{0, 1}, {4, 5}});
    ensemble[2] = net({{0, 1}, {2, 3}, {6, 7}});

    const auto table = occurrence_matrix(ensemble, 10);
    REQUIRE(table.edges.size() == 4);
    CHECK(table.edges[0] == Edge(0, 1));
    CHECK(table.counts[0] == 3);
    CHECK(table.edges[1] == Edge(2, 3));
    CHECK(table.counts[1] == 2);
    // ties at count 1 break on the pair order
    CHECK(table.edges[2] == Edge(4, 5));
    CHECK(table.edges[3] == Edge(6, 7));
    // hand-built presence grid
    CHECK(table.present(0, 0));
    CHECK(table.present(0, 1));
    CHECK(table.present(0, 2));
    CHECK(table.present(1, 0));
    CHECK_FALSE(table.present(1, 1));
    CHECK(table.present(1, 2));
    CHECK_FALSE(table.present(2, 0));
    CHECK(table.present(2, 1));
    CHECK_FALSE(table.present(2, 2));
}

TEST_CASE("occurrence matrix truncation") {
    std::vector<BinaryNetwork> ensemble = {net({{0, 1}, {2, 3}, {4, 5}})};
    CHECK(occurrence_matrix(ensemble, 0).edges.empty());
    CHECK(occurrence_matrix(ensemble, 2).edges.size() == 2);
    CHECK(occurrence_matrix(ensemble, 99).edges.size() == 3);
}

TEST_CASE("a full-count row is all true") {
    std::vector<BinaryNetwork> ensemble(6, net({{7, 9}}));
    const auto table = occurrence_matrix(ensemble, 1);
    REQUIRE(table.edges.size() == 1);
    for (int m = 0; m < 6; ++m) CHECK(table.present(0, m));
}
