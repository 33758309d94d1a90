#include "invnet/categorize.hpp"

namespace invnet {

AgeGroup age_group(int birth_year, Date trade_date) {
    const int age = trade_date.year() - birth_year;
    if (age <= 0)
        throw Error("invalid age " + std::to_string(age) + " (birth year " +
                    std::to_string(birth_year) + ", trade date " + trade_date.to_string() + ")");
    if (age <= 18) return AgeGroup::UnderAged;
    if (age <= 30) return AgeGroup::Young;
    if (age <= 50) return AgeGroup::MiddleAged;
    if (age <= 64) return AgeGroup::Mature;
    return AgeGroup::Retired;
}

CategoryId assign_category(const InvestorMeta& meta, Date trade_date) {
    if (meta.sector == Sector::Household) {
        if (!meta.birth_year)
            throw Error("household record is missing a birth year");
        AgeGroup g = age_group(*meta.birth_year, trade_date);
        auto soa = static_cast<SectorOrAge>(4 + static_cast<int>(g));
        return CategoryId(soa, meta.region);
    }
    SectorOrAge soa;
    switch (meta.sector) {
        case Sector::NonFinancial: soa = SectorOrAge::NonFinancial; break;
        case Sector::FinancialInsurance: soa = SectorOrAge::FinancialInsurance; break;
        case Sector::Government: soa = SectorOrAge::Government; break;
        case Sector::NonProfit: soa = SectorOrAge::NonProfit; break;
        default: throw Error("unreachable sector");
    }
    return CategoryId(soa, meta.region);
}

CategorizedTransaction categorize(const Transaction& t) {
    if (t.signed_volume == 0)
        throw Error("zero-volume transaction (investor " + t.investor_id + ")");
    InvestorMeta meta{t.sector, t.birth_year, t.region};
    return CategorizedTransaction{t.trade_date, assign_category(meta, t.trade_date),
                                  t.signed_volume};
}

std::vector<CategorizedTransaction> categorize_all(std::span<const Transaction> txns) {
    std::vector<CategorizedTransaction> out;
    out.reserve(txns.size());
    for (const auto& t : txns) out.push_back(categorize(t));
    return out;
}

}  // namespace invnet
