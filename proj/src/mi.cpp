#include "invnet/mi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "invnet/netvolume.hpp"
#include "invnet/rng.hpp"

namespace invnet {

namespace {
constexpr double kRhoClamp = 1.0 - 1e-12;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error("pearson: series must have equal length >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sy += y[k];
    }
    const double mx = sx / n, my = sy / n;
    double cxy = 0, cxx = 0, cyy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = x[k] - mx, dy = y[k] - my;
        cxy += dx * dy;
        cxx += dx * dx;
        cyy += dy * dy;
    }
    if (cxx <= 0.0 || cyy <= 0.0) return std::nullopt;
    double rho = (cxy / n) / (std::sqrt(cxx / n) * std::sqrt(cyy / n));
    return std::clamp(rho, -1.0, 1.0);
}

MiValue mi_from_rho(double rho) {
    if (std::abs(rho) > 1.0) throw Error("mi_from_rho: |rho| > 1");
    bool saturated = false;
    if (std::abs(rho) >= kRhoClamp) {
        rho = rho < 0 ? -kRhoClamp : kRhoClamp;
        saturated = true;
    }
    return MiValue{-0.5 * std::log1p(-rho * rho), saturated};
}

std::vector<std::uint8_t> eligible_categories(const NetVolumeMatrix& m, int min_active_days) {
    std::vector<std::uint8_t> eligible(kCategoryCount, 0);
    const int days = m.n_days();
    for (int c = 0; c < kCategoryCount; ++c) {
        int active = 0;
        std::int64_t first = m.at(0, c);
        bool varies = false;
        for (int t = 0; t < days; ++t) {
            const std::int64_t v = m.at(t, c);
            if (v != 0) ++active;
            if (v != first) varies = true;
        }
        eligible[c] = (varies && active >= min_active_days) ? 1 : 0;
    }
    return eligible;
}

MIMatrix mi_matrix(const NetVolumeMatrix& m, int min_active_days) {
    if (m.n_days() < 2) throw Error("mi_matrix: need at least 2 days");
    MIMatrix out;
    auto eligible = eligible_categories(m, min_active_days);
    int n_eligible = 0;
    for (int c = 0; c < kCategoryCount; ++c) {
        out.set_eligible(c, eligible[c] != 0);
        n_eligible += eligible[c];
    }
    if (n_eligible < 2) throw Error("mi_matrix: fewer than 2 eligible categories");

    const int days = m.n_days();
    std::vector<std::vector<double>> cols(kCategoryCount);
    for (int c = 0; c < kCategoryCount; ++c) {
        if (!eligible[c]) continue;
        cols[c].resize(days);
        for (int t = 0; t < days; ++t) cols[c][t] = static_cast<double>(m.at(t, c));
    }
    for (int i = 0; i < kCategoryCount; ++i) {
        if (!eligible[i]) continue;
        for (int j = i + 1; j < kCategoryCount; ++j) {
            if (!eligible[j]) continue;
            auto rho = pearson(cols[i], cols[j]);
            if (!rho) continue;  // unreachable for eligible columns
            MiValue v = mi_from_rho(*rho);
            out.set(i, j, v.value, v.saturated);
        }
    }
    return out;
}

std::vector<double> null_mi_distribution(std::span<const CategorizedTransaction> txns,
                                         int replicas, std::span<const Date> calendar,
                                         std::uint64_t seed, int min_active_days) {
    if (replicas < 1) throw Error("null_mi_distribution: need at least 1 replica");
    std::vector<double> pooled;
    for (int r = 0; r < replicas; ++r) {
        auto sample = null_resample(txns, substream_seed(seed, 1, static_cast<std::uint64_t>(r)));
        auto volume = build_net_volume(sample, calendar);
        auto mi = mi_matrix(volume, min_active_days);
        for (int i = 0; i < kCategoryCount; ++i)
            for (int j = i + 1; j < kCategoryCount; ++j)
                if (mi.has(i, j)) pooled.push_back(mi.at(i, j));
    }
    return pooled;
}

double empirical_quantile(std::vector<double> values, double level) {
    if (values.empty()) throw Error("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    if (level <= 0.0) return values.front();
    if (level >= 1.0) return values.back();
    const auto idx = static_cast<std::size_t>(
        std::ceil(level * static_cast<double>(values.size() - 1)));
    return values[idx];
}

PairMask significance_mask(const MIMatrix& mi, std::span<const double> null_values,
                           double alpha_mi) {
    PairMask mask;
    double cut;
    if (alpha_mi >= 1.0) {
        cut = -std::numeric_limits<double>::infinity();
    } else {
        if (null_values.empty()) throw Error("significance_mask: empty null distribution");
        cut = empirical_quantile(std::vector<double>(null_values.begin(), null_values.end()),
                                 1.0 - alpha_mi);
    }
    for (int i = 0; i < kCategoryCount; ++i)
        for (int j = i + 1; j < kCategoryCount; ++j)
            if (mi.has(i, j) && mi.at(i, j) > cut) mask.set(i, j, true);
    return mask;
}

}  // namespace invnet
