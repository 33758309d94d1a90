// Assignment of transactions to the 99 investor categories. Age is the
// calendar-year difference between trade date and year of birth, resolved
// per transaction, so one investor can move between age groups over time.
#pragma once

#include <span>

#include "invnet/types.hpp"

namespace invnet {

struct InvestorMeta {
    Sector sector = Sector::Household;
    std::optional<int> birth_year;
    Region region = Region::Helsinki;
};

// Maps age = year(trade_date) - birth_year onto the half-open intervals
// (0,18], (18,30], (30,50], (50,64], (64,+inf). Age <= 0 is a data error.
AgeGroup age_group(int birth_year, Date trade_date);

CategoryId assign_category(const InvestorMeta& meta, Date trade_date);

CategorizedTransaction categorize(const Transaction& t);

std::vector<CategorizedTransaction> categorize_all(std::span<const Transaction> txns);

}  // namespace invnet
