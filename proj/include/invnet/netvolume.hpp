// Net-volume matrix construction and the two resampling schemes: whole-record
// bootstrap (replica datasets for ensemble inference) and per-column null
// resampling (dates, volumes and categories drawn independently, destroying
// all cross-column association; feeds the MI null distribution).
#pragma once

#include <cstdint>
#include <span>

#include "invnet/types.hpp"

namespace invnet {

// Sorted unique trade dates present in the set; the trading calendar is the
// union of observed dates, never a fabricated exchange calendar.
std::vector<Date> make_calendar(std::span<const CategorizedTransaction> txns);

// Cell (t, c) = signed-volume sum of the transactions at date t in category c.
// Throws if a transaction date is not in the calendar.
NetVolumeMatrix build_net_volume(std::span<const CategorizedTransaction> txns,
                                 std::span<const Date> calendar);

// Uniform resample with replacement of whole records; output size == input size.
std::vector<CategorizedTransaction> bootstrap_resample(
    std::span<const CategorizedTransaction> txns, std::uint64_t seed);

// Dates, volumes and categories each resampled with replacement independently.
std::vector<CategorizedTransaction> null_resample(
    std::span<const CategorizedTransaction> txns, std::uint64_t seed);

}  // namespace invnet
