// Domain types shared by every module: the 99-category node universe,
// transaction records, net-volume and MI matrices, binary networks and the
// aggregation report. All types are immutable-after-construction value types
// and safe to share across parallel workers.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "invnet/date.hpp"

namespace invnet {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

enum class Sector : std::uint8_t {
    Household,
    NonFinancial,
    FinancialInsurance,
    Government,
    NonProfit,
};

enum class Region : std::uint8_t {
    Helsinki,
    RestUusimaa,
    EasternTavastia,
    SouthWest,
    WesternTavastia,
    CentralFinland,
    SouthEast,
    Ostrobothnia,
    NorthernSavonia,
    EasternFinland,
    NorthernFinland,
};

enum class AgeGroup : std::uint8_t {
    UnderAged,   // (0, 18]
    Young,       // (18, 30]
    MiddleAged,  // (30, 50]
    Mature,      // (50, 64]
    Retired,     // (64, +inf)
};

// Node identity axis 1: the four non-household sectors followed by the five
// household age groups. The enum order is the major key of the CategoryId
// total order and is frozen; serialized output depends on it.
enum class SectorOrAge : std::uint8_t {
    FinancialInsurance,
    Government,
    NonFinancial,
    NonProfit,
    UnderAged,
    Young,
    MiddleAged,
    Mature,
    Retired,
};

inline constexpr int kRegionCount = 11;
inline constexpr int kSectorOrAgeCount = 9;
inline constexpr int kCategoryCount = kSectorOrAgeCount * kRegionCount;  // 99
inline constexpr int kPairCount = kCategoryCount * (kCategoryCount - 1) / 2;

const std::string& to_string(Sector s);
const std::string& to_string(Region r);
const std::string& to_string(AgeGroup g);
const std::string& to_string(SectorOrAge s);
std::optional<Sector> sector_from_code(const std::string& code);    // HH NF FI GG NP
const std::string& sector_code(Sector s);
std::optional<Region> region_from_name(const std::string& name);
std::optional<SectorOrAge> sector_or_age_from_name(const std::string& name);

// One of the 99 investor categories. Total order: sector-or-age major,
// region minor; ties everywhere in the project break on this order.
class CategoryId {
public:
    CategoryId() = default;
    CategoryId(SectorOrAge soa, Region region)
        : index_(static_cast<std::uint8_t>(static_cast<int>(soa) * kRegionCount +
                                           static_cast<int>(region))) {}

    static CategoryId from_index(int index) {
        if (index < 0 || index >= kCategoryCount)
            throw Error("category index out of range: " + std::to_string(index));
        CategoryId c;
        c.index_ = static_cast<std::uint8_t>(index);
        return c;
    }

    int index() const { return index_; }
    SectorOrAge sector_or_age() const { return static_cast<SectorOrAge>(index_ / kRegionCount); }
    Region region() const { return static_cast<Region>(index_ % kRegionCount); }
    bool is_household() const { return static_cast<int>(sector_or_age()) >= 4; }

    std::string name() const;  // "Middle-Aged|Helsinki"
    static std::optional<CategoryId> parse(const std::string& name);

    friend auto operator<=>(CategoryId a, CategoryId b) = default;

private:
    std::uint8_t index_ = 0;
};

// All 99 categories in the canonical order.
const std::vector<CategoryId>& category_universe();

// One signed trade record; the bootstrap resampling unit.
struct Transaction {
    Date trade_date;
    std::string investor_id;
    Sector sector = Sector::Household;
    std::optional<int> birth_year;  // present iff sector == Household
    Region region = Region::Helsinki;
    std::string security_id;
    std::int64_t signed_volume = 0;  // >0 buy, <0 sell, never 0
};

// Transaction with its category resolved at the original trade date. The
// resampling and net-volume machinery works on these.
struct CategorizedTransaction {
    Date date;
    CategoryId category;
    std::int64_t volume = 0;
};

// Unordered category pair, canonicalized a < b.
struct Edge {
    std::uint8_t a = 0;
    std::uint8_t b = 0;

    Edge() = default;
    Edge(int i, int j) {
        if (i == j) throw Error("self-loop edge");
        a = static_cast<std::uint8_t>(i < j ? i : j);
        b = static_cast<std::uint8_t>(i < j ? j : i);
    }
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Triangular index of pair {i,j}, i != j, over n nodes.
inline int pair_index(int i, int j, int n = kCategoryCount) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

// Daily net traded volume per category for one security. Values stay in
// exact 64-bit integers; statistics convert to double at the point of use.
class NetVolumeMatrix {
public:
    NetVolumeMatrix() = default;
    explicit NetVolumeMatrix(std::vector<Date> dates)
        : dates_(std::move(dates)),
          values_(dates_.size() * static_cast<std::size_t>(kCategoryCount), 0) {}

    int n_days() const { return static_cast<int>(dates_.size()); }
    const std::vector<Date>& dates() const { return dates_; }

    std::int64_t& at(int day, int category) {
        return values_[static_cast<std::size_t>(day) * kCategoryCount + category];
    }
    std::int64_t at(int day, int category) const {
        return values_[static_cast<std::size_t>(day) * kCategoryCount + category];
    }

    std::int64_t column_sum(int category) const {
        std::int64_t s = 0;
        for (int t = 0; t < n_days(); ++t) s += at(t, category);
        return s;
    }
    std::int64_t total() const {
        std::int64_t s = 0;
        for (auto v : values_) s += v;
        return s;
    }

private:
    std::vector<Date> dates_;
    std::vector<std::int64_t> values_;
};

// Symmetric pairwise MI in nats. Pairs touching an ineligible node are
// absent; has() gates every read.
class MIMatrix {
public:
    MIMatrix()
        : values_(kPairCount, -1.0), saturated_(kPairCount, 0), eligible_(kCategoryCount, 0) {}

    bool eligible(int i) const { return eligible_[i] != 0; }
    void set_eligible(int i, bool v) { eligible_[i] = v ? 1 : 0; }
    int n_eligible() const {
        int k = 0;
        for (auto e : eligible_) k += e;
        return k;
    }

    bool has(int i, int j) const {
        return i != j && eligible_[i] && eligible_[j] && values_[pair_index(i, j)] >= 0.0;
    }
    double at(int i, int j) const { return values_[pair_index(i, j)]; }
    bool saturated(int i, int j) const { return saturated_[pair_index(i, j)] != 0; }

    void set(int i, int j, double mi, bool saturated) {
        values_[pair_index(i, j)] = mi;
        saturated_[pair_index(i, j)] = saturated ? 1 : 0;
    }

private:
    std::vector<double> values_;
    std::vector<std::uint8_t> saturated_;
    std::vector<std::uint8_t> eligible_;
};

// Symmetric boolean pair matrix (the MI significance mask).
class PairMask {
public:
    PairMask() : bits_(kPairCount, 0) {}
    bool at(int i, int j) const { return i != j && bits_[pair_index(i, j)] != 0; }
    void set(int i, int j, bool v) { bits_[pair_index(i, j)] = v ? 1 : 0; }
    int count() const {
        int k = 0;
        for (auto b : bits_) k += b;
        return k;
    }

private:
    std::vector<std::uint8_t> bits_;
};

struct NetworkMeta {
    std::string method;        // "c3net", "mst", "aggregate", ...
    std::string security_id;
    std::string window_label;
    bool forest_warning = false;  // mst ran on a disconnected eligible set
    int n_eligible = -1;          // eligible nodes at inference time, -1 = n/a
    std::map<std::string, std::string> provenance;  // parameter set that produced it
};

// Undirected simple graph on the 99-category universe.
class BinaryNetwork {
public:
    BinaryNetwork() : adj_(kPairCount, 0) {}

    NetworkMeta meta;

    void add_edge(int i, int j) {
        if (i == j) throw Error("self-loop rejected");
        adj_[pair_index(i, j)] = 1;
    }
    void add_edge(Edge e) { add_edge(e.a, e.b); }
    bool has_edge(int i, int j) const { return i != j && adj_[pair_index(i, j)] != 0; }

    int edge_count() const {
        int k = 0;
        for (auto b : adj_) k += b;
        return k;
    }

    // Edges in canonical (a,b) order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (int i = 0; i < kCategoryCount; ++i)
            for (int j = i + 1; j < kCategoryCount; ++j)
                if (adj_[pair_index(i, j)]) out.emplace_back(i, j);
        return out;
    }

    int degree(int i) const {
        int k = 0;
        for (int j = 0; j < kCategoryCount; ++j)
            if (j != i && adj_[pair_index(i, j)]) ++k;
        return k;
    }

    // Nodes with degree >= 1.
    std::vector<int> active_nodes() const {
        std::vector<int> out;
        for (int i = 0; i < kCategoryCount; ++i)
            if (degree(i) > 0) out.push_back(i);
        return out;
    }

    bool same_edges(const BinaryNetwork& other) const { return adj_ == other.adj_; }

private:
    std::vector<std::uint8_t> adj_;
};

// Edge occurrence counts over an ensemble of N networks (Eq. 1 weights).
class WeightedCountNetwork {
public:
    WeightedCountNetwork() : counts_(kPairCount, 0) {}
    explicit WeightedCountNetwork(int ensemble_size)
        : ensemble_size_(ensemble_size), counts_(kPairCount, 0) {}

    int ensemble_size() const { return ensemble_size_; }
    int count(int i, int j) const { return counts_[pair_index(i, j)]; }
    void add(int i, int j, int delta = 1) { counts_[pair_index(i, j)] += delta; }

    long long total() const {
        long long s = 0;
        for (auto c : counts_) s += c;
        return s;
    }
    int distinct() const {
        int k = 0;
        for (auto c : counts_) k += c > 0;
        return k;
    }

private:
    int ensemble_size_ = 0;
    std::vector<int> counts_;
};

// S securities x T windows matrix of cell networks (the main matrix of the
// two-layer picture).
class EnsembleGrid {
public:
    EnsembleGrid(int n_securities, int n_windows)
        : s_(n_securities), t_(n_windows), cells_(static_cast<std::size_t>(s_) * t_) {
        if (n_securities < 1 || n_windows < 1) throw Error("empty ensemble grid");
    }

    int n_securities() const { return s_; }
    int n_windows() const { return t_; }
    BinaryNetwork& at(int s, int t) { return cells_[static_cast<std::size_t>(s) * t_ + t]; }
    const BinaryNetwork& at(int s, int t) const {
        return cells_[static_cast<std::size_t>(s) * t_ + t];
    }

    int window_months = 0;       // 0 = whole period
    Date window_start;

private:
    int s_, t_;
    std::vector<BinaryNetwork> cells_;
};

struct AggregationReport {
    double p_hat = 0.0;
    int n_tests = 0;
    double alpha = 0.0;
    double alpha_adjusted = 0.0;
    std::optional<int> threshold;  // empty when nothing can be significant
    bool degenerate = false;       // empty ensemble / p_hat == 0
    BinaryNetwork result;
    WeightedCountNetwork counts;
};

}  // namespace invnet
