#include "invnet/types.hpp"

#include <array>

namespace invnet {

namespace {

const std::array<std::string, 5> kSectorNames = {
    "Household", "Non-Financial", "Financial-Insurance", "Government", "Non-Profit"};
const std::array<std::string, 5> kSectorCodes = {"HH", "NF", "FI", "GG", "NP"};

const std::array<std::string, kRegionCount> kRegionNames = {
    "Helsinki",        "Rest-Uusimaa",     "Eastern-Tavastia", "South-West",
    "Western-Tavastia", "Central-Finland", "South-East",       "Ostrobothnia",
    "Northern-Savonia", "Eastern-Finland", "Northern-Finland"};

const std::array<std::string, 5> kAgeGroupNames = {
    "Under-Aged", "Young", "Middle-Aged", "Mature", "Retired"};

const std::array<std::string, kSectorOrAgeCount> kSectorOrAgeNames = {
    "Financial-Insurance", "Government", "Non-Financial", "Non-Profit",
    "Under-Aged",          "Young",      "Middle-Aged",   "Mature",
    "Retired"};

}  // namespace

const std::string& to_string(Sector s) { return kSectorNames[static_cast<int>(s)]; }
const std::string& sector_code(Sector s) { return kSectorCodes[static_cast<int>(s)]; }
const std::string& to_string(Region r) { return kRegionNames[static_cast<int>(r)]; }
const std::string& to_string(AgeGroup g) { return kAgeGroupNames[static_cast<int>(g)]; }
const std::string& to_string(SectorOrAge s) { return kSectorOrAgeNames[static_cast<int>(s)]; }

std::optional<Sector> sector_from_code(const std::string& code) {
    for (std::size_t i = 0; i < kSectorCodes.size(); ++i)
        if (kSectorCodes[i] == code) return static_cast<Sector>(i);
    return std::nullopt;
}

std::optional<Region> region_from_name(const std::string& name) {
    for (int i = 0; i < kRegionCount; ++i)
        if (kRegionNames[i] == name) return static_cast<Region>(i);
    return std::nullopt;
}

std::optional<SectorOrAge> sector_or_age_from_name(const std::string& name) {
    for (int i = 0; i < kSectorOrAgeCount; ++i)
        if (kSectorOrAgeNames[i] == name) return static_cast<SectorOrAge>(i);
    return std::nullopt;
}

std::string CategoryId::name() const {
    return to_string(sector_or_age()) + "|" + to_string(region());
}

std::optional<CategoryId> CategoryId::parse(const std::string& name) {
    auto sep = name.find('|');
    if (sep == std::string::npos) return std::nullopt;
    auto soa = sector_or_age_from_name(name.substr(0, sep));
    auto region = region_from_name(name.substr(sep + 1));
    if (!soa || !region) return std::nullopt;
    return CategoryId(*soa, *region);
}

const std::vector<CategoryId>& category_universe() {
    static const std::vector<CategoryId> universe = [] {
        std::vector<CategoryId> u;
        u.reserve(kCategoryCount);
        for (int i = 0; i < kCategoryCount; ++i) u.push_back(CategoryId::from_index(i));
        return u;
    }();
    return universe;
}

}  // namespace invnet
