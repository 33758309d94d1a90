// _invnet: python bindings for the main operations: categorization, MI,
// C3NET/MST inference from an MI matrix, and the statistical aggregation.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "invnet/aggregate.hpp"
#include "invnet/analysis.hpp"
#include "invnet/categorize.hpp"
#include "invnet/inference.hpp"
#include "invnet/mi.hpp"

namespace py = pybind11;
using namespace invnet;

namespace {

Date parse_date_or_throw(const std::string& iso) {
    auto d = Date::parse(iso);
    if (!d) throw Error("bad ISO date: " + iso);
    return *d;
}

using NamedEdge = std::pair<std::string, std::string>;

BinaryNetwork network_from_edges(const std::vector<NamedEdge>& edges) {
    BinaryNetwork net;
    for (const auto& [a, b] : edges) {
        auto ca = CategoryId::parse(a);
        auto cb = CategoryId::parse(b);
        if (!ca || !cb) throw Error("unknown category in edge (" + a + ", " + b + ")");
        net.add_edge(ca->index(), cb->index());
    }
    return net;
}

std::vector<NamedEdge> edges_to_names(const BinaryNetwork& net) {
    std::vector<NamedEdge> out;
    for (const auto& e : net.edges())
        out.emplace_back(CategoryId::from_index(e.a).name(), CategoryId::from_index(e.b).name());
    return out;
}

// Square matrix over the first n categories; NaN or negative = absent pair.
MIMatrix mi_from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 2 || n > kCategoryCount)
        throw Error("MI matrix must be square with 2..99 rows");
    MIMatrix mi;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) throw Error("MI matrix must be square");
        mi.set_eligible(i, true);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = rows[i][j];
            if (std::isnan(v) || v < 0) continue;
            mi.set(i, j, v, false);
        }
    return mi;
}

py::dict report_to_dict(const AggregationReport& report) {
    py::dict d;
    d["p_hat"] = report.p_hat;
    d["n_tests"] = report.n_tests;
    d["alpha"] = report.alpha;
    d["alpha_adjusted"] = report.alpha_adjusted;
    d["threshold"] = report.threshold ? py::cast(*report.threshold) : py::none();
    d["degenerate"] = report.degenerate;
    d["edges"] = edges_to_names(report.result);
    py::list counts;
    for (int i = 0; i < kCategoryCount; ++i)
        for (int j = i + 1; j < kCategoryCount; ++j)
            if (report.counts.count(i, j) > 0)
                counts.append(py::make_tuple(CategoryId::from_index(i).name(),
                                             CategoryId::from_index(j).name(),
                                             report.counts.count(i, j)));
    d["counts"] = counts;
    return d;
}

}  // namespace

PYBIND11_MODULE(_invnet, m) {
    m.doc() = "Investor-category trading networks: bootstrapped MI inference and "
              "statistically validated ensemble aggregation.";

    m.def("category_universe", [] {
        std::vector<std::string> names;
        for (const auto& c : category_universe()) names.push_back(c.name());
        return names;
    }, "All 99 category names in canonical order.");

    m.def("age_group", [](int birth_year, const std::string& trade_date) {
        return to_string(age_group(birth_year, parse_date_or_throw(trade_date)));
    }, py::arg("birth_year"), py::arg("trade_date"),
       "Household age group for a birth year at a trade date (ISO).");

    m.def("assign_category",
          [](const std::string& sector, std::optional<int> birth_year, const std::string& region,
             const std::string& trade_date) {
              auto s = sector_from_code(sector);
              if (!s) throw Error("unknown sector code: " + sector);
              auto r = region_from_name(region);
              if (!r) throw Error("unknown region: " + region);
              return assign_category({*s, birth_year, *r}, parse_date_or_throw(trade_date)).name();
          },
          py::arg("sector_code"), py::arg("birth_year"), py::arg("region"), py::arg("trade_date"),
          "Category name for a sector code (HH/NF/FI/GG/NP), birth year and region.");

    m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) {
        return pearson(x, y);
    }, py::arg("x"), py::arg("y"), "Population-moment correlation; None on zero variance.");

    m.def("mi_from_rho", [](double rho) { return mi_from_rho(rho).value; }, py::arg("rho"),
          "Gaussian mutual information -0.5*ln(1-rho^2), in nats.");

    m.def("binomial_tail", &binomial_tail, py::arg("n_ij"), py::arg("n"), py::arg("p"),
          "P(X >= n_ij) for X ~ Binomial(n, p).");

    m.def("occurrence_threshold",
          [](int N, double p, double alpha_adjusted) { return occurrence_threshold(N, p, alpha_adjusted); },
          py::arg("n"), py::arg("p"), py::arg("alpha_adjusted"),
          "Minimal significant occurrence count, or None when nothing can be significant.");

    m.def("c3net",
          [](const std::vector<std::vector<double>>& mi,
             const std::vector<std::vector<bool>>& significant) {
              MIMatrix matrix = mi_from_rows(mi);
              PairMask mask;
              const int n = static_cast<int>(mi.size());
              if (static_cast<int>(significant.size()) != n)
                  throw Error("mask shape must match the MI matrix");
              for (int i = 0; i < n; ++i)
                  for (int j = i + 1; j < n; ++j)
                      if (significant[i][j]) mask.set(i, j, true);
              std::vector<std::pair<int, int>> edges;
              for (const auto& e : c3net(matrix, mask).edges()) edges.emplace_back(e.a, e.b);
              return edges;
          },
          py::arg("mi"), py::arg("significant"),
          "Strongest significant link per node; index pairs over the given matrix.");

    m.def("mst",
          [](const std::vector<std::vector<double>>& mi) {
              std::vector<std::pair<int, int>> edges;
              for (const auto& e : mst(mi_from_rows(mi)).edges()) edges.emplace_back(e.a, e.b);
              return edges;
          },
          py::arg("mi"), "Minimum spanning tree on -MI weights; index pairs.");

    m.def("aggregate",
          [](const std::vector<std::vector<NamedEdge>>& ensemble, double alpha) {
              std::vector<BinaryNetwork> nets;
              for (const auto& edges : ensemble) nets.push_back(network_from_edges(edges));
              return report_to_dict(aggregate(nets, alpha));
          },
          py::arg("ensemble"), py::arg("alpha") = 0.01,
          "Statistically validated aggregation of an ensemble of edge lists.");

    m.def("multilayer_aggregate",
          [](const std::vector<std::vector<std::vector<NamedEdge>>>& grid_edges,
             const std::string& order, double alpha) {
              const int S = static_cast<int>(grid_edges.size());
              if (S == 0) throw Error("empty grid");
              const int T = static_cast<int>(grid_edges[0].size());
              EnsembleGrid grid(S, T);
              for (int s = 0; s < S; ++s) {
                  if (static_cast<int>(grid_edges[s].size()) != T)
                      throw Error("ragged grid");
                  for (int t = 0; t < T; ++t) grid.at(s, t) = network_from_edges(grid_edges[s][t]);
              }
              auto o = order_from_name(order);
              if (!o) throw Error("order must be ST or TS");
              return edges_to_names(multilayer_aggregate(grid, *o, alpha).final_network);
          },
          py::arg("grid"), py::arg("order"), py::arg("alpha") = 0.01,
          "Two-level aggregation of an S x T grid of edge lists; returns the final edges.");

    m.def("compare",
          [](const std::vector<NamedEdge>& a, const std::vector<NamedEdge>& b) {
              const auto cmp = compare_networks(network_from_edges(a), network_from_edges(b));
              py::dict d;
              d["links"] = py::make_tuple(cmp.links.only_a, cmp.links.both, cmp.links.only_b,
                                          cmp.links.jaccard);
              d["nodes"] = py::make_tuple(cmp.nodes.only_a, cmp.nodes.both, cmp.nodes.only_b,
                                          cmp.nodes.jaccard);
              d["degree_spearman"] = cmp.degree_spearman;
              return d;
          },
          py::arg("a"), py::arg("b"), "Edge/node overlap and degree-sequence Spearman.");

    m.def("centrality",
          [](const std::vector<NamedEdge>& edges) {
              const auto rows = centrality_report(network_from_edges(edges));
              py::dict d;
              for (int i = 0; i < kCategoryCount; ++i)
                  if (rows[i].degree > 0 || rows[i].closeness > 0)
                      d[py::cast(CategoryId::from_index(i).name())] = py::make_tuple(
                          rows[i].degree, rows[i].load, rows[i].closeness);
              return d;
          },
          py::arg("edges"), "Degree, load and closeness for every active category.");
}
