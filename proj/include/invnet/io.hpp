// File formats: transaction CSV ingestion with postal-code mapping and
// reject collection, network/report JSON, edge-list CSV, DOT, occurrence and
// comparison tables, and the run manifest hash.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "json.hpp"

#include "invnet/analysis.hpp"
#include "invnet/types.hpp"

namespace invnet {

using PostalMap = std::map<std::string, Region>;

// CSV with header "postal_code,region"; region by canonical name.
PostalMap load_postal_map(const std::string& path);
void write_postal_map(const std::string& path, const PostalMap& map);

struct RejectedRow {
    int line = 0;           // 1-based, header = line 1
    std::string reason;     // "columns", "date", "sector", "age", "postal", "volume", "period"
    std::string raw;
};

struct IngestSummary {
    std::map<std::string, long long> per_category;  // category name -> row count
    std::map<std::string, long long> per_security;
    std::map<std::string, long long> security_investors;
    Date first_date;
    Date last_date;
    long long accepted = 0;
    long long rejected = 0;
};

struct IngestResult {
    std::vector<Transaction> transactions;
    std::vector<RejectedRow> rejects;
    IngestSummary summary;
};

struct IngestOptions {
    std::optional<Date> period_begin;  // declared dataset period; rows outside reject
    std::optional<Date> period_end;
};

// Columns located by header name: trade_date, investor_id, sector_code,
// birth_year, postal_code, security_id, signed_volume. Extra columns
// (e.g. gender) are accepted and ignored.
IngestResult ingest_csv(const std::string& path, const PostalMap& postal,
                        const IngestOptions& options = {});

void write_transactions_csv(const std::string& path, std::span<const Transaction> txns,
                            const std::map<Region, std::string>& region_codes);

// ---- network / report serialization ----

nlohmann::json network_to_json(const BinaryNetwork& net);
BinaryNetwork network_from_json(const nlohmann::json& j);
void write_network_json(const std::string& path, const BinaryNetwork& net);
BinaryNetwork read_network_json(const std::string& path);

nlohmann::json report_to_json(const AggregationReport& report);
void write_report_json(const std::string& path, const AggregationReport& report);

// Header "source,target"; rows in the canonical category-pair order.
void write_edge_list_csv(const std::string& path, const BinaryNetwork& net);

// Undirected graphviz output; active nodes only, filled with the five
// sector-class colors.
void write_dot(const std::string& path, const BinaryNetwork& net);

void write_occurrence_csv(const std::string& path, const OccurrenceTable& table);

void write_comparison_csv(const std::string& path, const NetworkComparison& cmp);

void write_centrality_csv(const std::string& path, std::span<const NodeCentrality> rows);

// ---- manifest ----

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace invnet
