// Synthetic transaction generator with planted inter-category couplings.
// Daily net volumes come from correlated normals; each daily net volume is
// decomposed into one or more signed integer transactions, so transaction-
// level bootstrapping stays meaningful.
#pragma once

#include <cstdint>
#include <utility>

#include "invnet/types.hpp"

namespace invnet {

struct PlantedPair {
    CategoryId a;
    CategoryId b;
    double rho = 0.0;  // signed target correlation, |rho| < 1
    // Half-open [begin, end) day-index ranges where the coupling is active;
    // empty = the whole period. Outside the ranges the pair draws independently.
    std::vector<std::pair<int, int>> active_ranges;

    bool active_on(int day) const {
        if (active_ranges.empty()) return true;
        for (const auto& [b_, e_] : active_ranges)
            if (day >= b_ && day < e_) return true;
        return false;
    }
};

struct SynthConfig {
    int n_securities = 1;
    int n_days = 250;
    Date start_date = Date::from_ymd(2004, 1, 2);
    std::vector<PlantedPair> planted;
    double tx_rate = 3.0;          // mean transactions per category-day
    std::vector<double> category_rate;  // optional per-category override, size 0 or 99
    double volume_sigma = 1000.0;  // daily net volume standard deviation (shares)
    double overshoot = 0.35;       // relative piece-size jitter in the decomposition
    std::uint64_t seed = 1;
};

struct SynthResult {
    std::vector<Transaction> transactions;          // all securities, date-major order
    std::vector<std::string> security_ids;
    std::vector<Date> calendar;                     // weekdays, length n_days
    std::vector<Edge> planted_edges;
    // Rounded latent daily net volumes, one matrix per security; the daily
    // sums of the generated transactions reproduce these exactly.
    std::vector<NetVolumeMatrix> latent;
};

SynthResult generate(const SynthConfig& config);

}  // namespace invnet
