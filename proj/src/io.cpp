#include "invnet/io.hpp"

#include "invnet/categorize.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace invnet {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<long long> parse_int(const std::string& s) {
    const std::string t = trim(s);
    long long value = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || p != t.data() + t.size()) return std::nullopt;
    return value;
}

}  // namespace

PostalMap load_postal_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open postal map: " + path);
    PostalMap map;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || trim(line).empty()) continue;  // header
        auto fields = split_csv_line(line);
        if (fields.size() < 2)
            throw Error("postal map line " + std::to_string(line_no) + ": expected 2 columns");
        auto region = region_from_name(trim(fields[1]));
        if (!region)
            throw Error("postal map line " + std::to_string(line_no) + ": unknown region '" +
                        trim(fields[1]) + "'");
        map[trim(fields[0])] = *region;
    }
    return map;
}

void write_postal_map(const std::string& path, const PostalMap& map) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "postal_code,region\n";
    for (const auto& [code, region] : map) out << code << "," << to_string(region) << "\n";
}

IngestResult ingest_csv(const std::string& path, const PostalMap& postal,
                        const IngestOptions& options) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open transactions: " + path);

    IngestResult result;
    std::string line;
    if (!std::getline(in, line)) throw Error("empty transaction file: " + path);

    auto header = split_csv_line(trim(line));
    std::map<std::string, int> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[trim(header[i])] = static_cast<int>(i);
    for (const char* name : {"trade_date", "investor_id", "sector_code", "birth_year",
                             "postal_code", "security_id", "signed_volume"})
        if (!col.count(name)) throw Error(std::string("missing column '") + name + "' in " + path);

    std::map<std::string, std::set<std::string>> investors_by_security;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        auto reject = [&](const std::string& reason) {
            result.rejects.push_back({line_no, reason, line});
        };
        if (fields.size() < header.size()) {
            reject("columns");
            continue;
        }

        auto date = Date::parse(trim(fields[col["trade_date"]]));
        if (!date) {
            reject("date");
            continue;
        }
        if ((options.period_begin && *date < *options.period_begin) ||
            (options.period_end && *options.period_end < *date)) {
            reject("period");
            continue;
        }
        auto sector = sector_from_code(trim(fields[col["sector_code"]]));
        if (!sector) {
            reject("sector");
            continue;
        }
        const std::string birth_raw = trim(fields[col["birth_year"]]);
        std::optional<int> birth_year;
        if (*sector == Sector::Household) {
            auto year = parse_int(birth_raw);
            if (!year || *year <= 0 || date->year() - *year <= 0) {
                reject("age");
                continue;
            }
            birth_year = static_cast<int>(*year);
        } else if (!birth_raw.empty()) {
            reject("age");  // birth year present iff household
            continue;
        }
        auto region_it = postal.find(trim(fields[col["postal_code"]]));
        if (region_it == postal.end()) {
            reject("postal");
            continue;
        }
        auto volume = parse_int(trim(fields[col["signed_volume"]]));
        if (!volume || *volume == 0) {
            reject("volume");
            continue;
        }

        Transaction tx;
        tx.trade_date = *date;
        tx.investor_id = trim(fields[col["investor_id"]]);
        tx.sector = *sector;
        tx.birth_year = birth_year;
        tx.region = region_it->second;
        tx.security_id = trim(fields[col["security_id"]]);
        tx.signed_volume = *volume;

        InvestorMeta meta{tx.sector, tx.birth_year, tx.region};
        result.summary.per_category[assign_category(meta, tx.trade_date).name()] += 1;
        result.summary.per_security[tx.security_id] += 1;
        investors_by_security[tx.security_id].insert(tx.investor_id);
        if (result.summary.accepted == 0 || tx.trade_date < result.summary.first_date)
            result.summary.first_date = tx.trade_date;
        if (result.summary.accepted == 0 || result.summary.last_date < tx.trade_date)
            result.summary.last_date = tx.trade_date;
        result.summary.accepted += 1;
        result.transactions.push_back(std::move(tx));
    }
    for (const auto& [sec, ids] : investors_by_security)
        result.summary.security_investors[sec] = static_cast<long long>(ids.size());
    result.summary.rejected = static_cast<long long>(result.rejects.size());
    return result;
}

void write_transactions_csv(const std::string& path, std::span<const Transaction> txns,
                            const std::map<Region, std::string>& region_codes) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "trade_date,investor_id,sector_code,birth_year,postal_code,security_id,signed_volume\n";
    for (const auto& t : txns) {
        auto code = region_codes.find(t.region);
        if (code == region_codes.end()) throw Error("no postal code for " + to_string(t.region));
        out << t.trade_date.to_string() << ',' << t.investor_id << ',' << sector_code(t.sector)
            << ',';
        if (t.birth_year) out << *t.birth_year;
        out << ',' << code->second << ',' << t.security_id << ',' << t.signed_volume << "\n";
    }
}

nlohmann::json network_to_json(const BinaryNetwork& net) {
    nlohmann::json j;
    j["schema"] = "invnet-network/1";
    auto nodes = nlohmann::json::array();
    for (const auto& c : category_universe()) nodes.push_back(c.name());
    j["nodes"] = std::move(nodes);
    auto edges = nlohmann::json::array();
    for (const auto& e : net.edges())
        edges.push_back({CategoryId::from_index(e.a).name(), CategoryId::from_index(e.b).name()});
    j["edges"] = std::move(edges);
    j["metadata"] = {{"method", net.meta.method},
                     {"security_id", net.meta.security_id},
                     {"window_label", net.meta.window_label},
                     {"forest_warning", net.meta.forest_warning},
                     {"n_eligible", net.meta.n_eligible},
                     {"provenance", net.meta.provenance}};
    return j;
}

BinaryNetwork network_from_json(const nlohmann::json& j) {
    BinaryNetwork net;
    for (const auto& e : j.at("edges")) {
        auto a = CategoryId::parse(e.at(0).get<std::string>());
        auto b = CategoryId::parse(e.at(1).get<std::string>());
        if (!a || !b) throw Error("unknown category in network edge list");
        net.add_edge(a->index(), b->index());
    }
    if (j.contains("metadata")) {
        const auto& m = j["metadata"];
        net.meta.method = m.value("method", "");
        net.meta.security_id = m.value("security_id", "");
        net.meta.window_label = m.value("window_label", "");
        net.meta.forest_warning = m.value("forest_warning", false);
        net.meta.n_eligible = m.value("n_eligible", -1);
        if (m.contains("provenance"))
            net.meta.provenance =
                m["provenance"].get<std::map<std::string, std::string>>();
    }
    return net;
}

void write_network_json(const std::string& path, const BinaryNetwork& net) {
    write_text_file(path, network_to_json(net).dump(2) + "\n");
}

BinaryNetwork read_network_json(const std::string& path) {
    return network_from_json(nlohmann::json::parse(read_text_file(path)));
}

nlohmann::json report_to_json(const AggregationReport& report) {
    nlohmann::json j;
    j["schema"] = "invnet-report/1";
    j["p_hat"] = report.p_hat;
    j["n_tests"] = report.n_tests;
    j["alpha"] = report.alpha;
    j["alpha_adjusted"] = report.alpha_adjusted;
    j["degenerate"] = report.degenerate;
    j["ensemble_size"] = report.counts.ensemble_size();
    if (report.threshold)
        j["threshold"] = *report.threshold;
    else
        j["threshold"] = nullptr;
    j["result"] = network_to_json(report.result);
    auto counts = nlohmann::json::array();
    for (int i = 0; i < kCategoryCount; ++i)
        for (int k = i + 1; k < kCategoryCount; ++k)
            if (report.counts.count(i, k) > 0)
                counts.push_back({CategoryId::from_index(i).name(),
                                  CategoryId::from_index(k).name(), report.counts.count(i, k)});
    j["counts"] = std::move(counts);
    return j;
}

void write_report_json(const std::string& path, const AggregationReport& report) {
    write_text_file(path, report_to_json(report).dump(2) + "\n");
}

void write_edge_list_csv(const std::string& path, const BinaryNetwork& net) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "source,target\n";
    for (const auto& e : net.edges())
        out << CategoryId::from_index(e.a).name() << ',' << CategoryId::from_index(e.b).name()
            << "\n";
}

namespace {
// Five sector classes of the network plots.
const char* node_color(CategoryId c) {
    switch (c.sector_or_age()) {
        case SectorOrAge::FinancialInsurance: return "#00caff";
        case SectorOrAge::Government: return "#ff6b6b";
        case SectorOrAge::NonFinancial: return "#7bd148";
        case SectorOrAge::NonProfit: return "#ea8615";
        default: return "#c686e9";  // households, all age groups
    }
}
}  // namespace

void write_dot(const std::string& path, const BinaryNetwork& net) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "graph invnet {\n  node [style=filled];\n";
    for (int v : net.active_nodes()) {
        const CategoryId c = CategoryId::from_index(v);
        out << "  \"" << c.name() << "\" [fillcolor=\"" << node_color(c) << "\"];\n";
    }
    for (const auto& e : net.edges())
        out << "  \"" << CategoryId::from_index(e.a).name() << "\" -- \""
            << CategoryId::from_index(e.b).name() << "\";\n";
    out << "}\n";
}

void write_occurrence_csv(const std::string& path, const OccurrenceTable& table) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "source,target,count";
    for (int m = 0; m < table.n_members; ++m) out << ",m" << m;
    out << "\n";
    for (std::size_t r = 0; r < table.edges.size(); ++r) {
        out << CategoryId::from_index(table.edges[r].a).name() << ','
            << CategoryId::from_index(table.edges[r].b).name() << ',' << table.counts[r];
        for (int m = 0; m < table.n_members; ++m) out << ',' << (table.present(r, m) ? 1 : 0);
        out << "\n";
    }
}

void write_comparison_csv(const std::string& path, const NetworkComparison& cmp) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    char buf[256];
    out << "links_only_a,links_both,links_only_b,links_jaccard,"
           "nodes_only_a,nodes_both,nodes_only_b,nodes_jaccard,degree_spearman\n";
    std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.6f,%d,%d,%d,%.6f,%.6f\n", cmp.links.only_a,
                  cmp.links.both, cmp.links.only_b, cmp.links.jaccard, cmp.nodes.only_a,
                  cmp.nodes.both, cmp.nodes.only_b, cmp.nodes.jaccard, cmp.degree_spearman);
    out << buf;
}

void write_centrality_csv(const std::string& path, std::span<const NodeCentrality> rows) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "category,degree,load,closeness\n";
    char buf[192];
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f\n",
                      CategoryId::from_index(i).name().c_str(), rows[i].degree, rows[i].load,
                      rows[i].closeness);
        out << buf;
    }
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) { return fnv1a64(read_text_file(path)); }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

}  // namespace invnet
