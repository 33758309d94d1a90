#include "invnet/netvolume.hpp"

#include <algorithm>
#include <unordered_map>

#include "invnet/rng.hpp"

namespace invnet {

std::vector<Date> make_calendar(std::span<const CategorizedTransaction> txns) {
    std::vector<Date> dates;
    dates.reserve(txns.size());
    for (const auto& t : txns) dates.push_back(t.date);
    std::sort(dates.begin(), dates.end());
    dates.erase(std::unique(dates.begin(), dates.end()), dates.end());
    return dates;
}

NetVolumeMatrix build_net_volume(std::span<const CategorizedTransaction> txns,
                                 std::span<const Date> calendar) {
    NetVolumeMatrix m(std::vector<Date>(calendar.begin(), calendar.end()));
    std::unordered_map<std::int32_t, int> day_of;
    day_of.reserve(calendar.size());
    for (std::size_t i = 0; i < calendar.size(); ++i)
        day_of.emplace(calendar[i].days_since_epoch(), static_cast<int>(i));
    for (const auto& t : txns) {
        auto it = day_of.find(t.date.days_since_epoch());
        if (it == day_of.end())
            throw Error("transaction date " + t.date.to_string() + " outside calendar");
        m.at(it->second, t.category.index()) += t.volume;
    }
    return m;
}

std::vector<CategorizedTransaction> bootstrap_resample(
    std::span<const CategorizedTransaction> txns, std::uint64_t seed) {
    if (txns.empty()) throw Error("bootstrap resample of an empty transaction set");
    Rng rng(seed);
    const std::uint64_t n = txns.size();
    std::vector<CategorizedTransaction> out;
    out.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) out.push_back(txns[rng.uniform_below(n)]);
    return out;
}

std::vector<CategorizedTransaction> null_resample(
    std::span<const CategorizedTransaction> txns, std::uint64_t seed) {
    if (txns.empty()) throw Error("null resample of an empty transaction set");
    Rng rng(seed);
    const std::uint64_t n = txns.size();
    std::vector<CategorizedTransaction> out(n);
    for (auto& o : out) o.date = txns[rng.uniform_below(n)].date;
    for (auto& o : out) o.volume = txns[rng.uniform_below(n)].volume;
    for (auto& o : out) o.category = txns[rng.uniform_below(n)].category;
    return out;
}

}  // namespace invnet
