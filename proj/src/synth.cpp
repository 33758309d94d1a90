#include "invnet/synth.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "invnet/rng.hpp"

namespace invnet {

namespace {

bool is_weekday(Date d) {
    // 1970-01-01 was a Thursday; 0 = Sunday.
    const int dow = ((d.days_since_epoch() % 7) + 7 + 4) % 7;
    return dow >= 1 && dow <= 5;
}

// Age ranges per household group; Retired capped for plausible birth years.
constexpr std::array<std::pair<int, int>, 5> kAgeRanges = {
    {{1, 18}, {19, 30}, {31, 50}, {51, 64}, {65, 95}}};

void validate(const SynthConfig& c) {
    if (c.n_securities < 1 || c.n_days < 1) throw Error("synth: empty configuration");
    if (c.volume_sigma <= 0 || c.tx_rate <= 0) throw Error("synth: rates must be positive");
    if (!c.category_rate.empty() && static_cast<int>(c.category_rate.size()) != kCategoryCount)
        throw Error("synth: category_rate must have 99 entries");
    for (double r : c.category_rate)
        if (r <= 0) throw Error("synth: rates must be positive");
    std::vector<bool> used(kCategoryCount, false);
    for (const auto& p : c.planted) {
        if (p.a == p.b) throw Error("synth: planted pair with identical categories");
        if (std::abs(p.rho) >= 1.0) throw Error("synth: planted |rho| must be < 1");
        if (used[p.a.index()] || used[p.b.index()])
            throw Error("synth: planted pairs must not share a category");
        used[p.a.index()] = used[p.b.index()] = true;
        for (const auto& [beg, end] : p.active_ranges)
            if (beg < 0 || end > c.n_days || beg >= end)
                throw Error("synth: planted active range outside the period");
    }
}

// Split net volume v (!= 0) into `pieces` nonzero signed integers summing to
// v. Pieces stay near v/pieces with a relative jitter of `overshoot`, so the
// bootstrap's multiplicity noise perturbs daily sums without drowning the
// latent signal.
void decompose(std::int64_t v, int pieces, double overshoot, Rng& rng,
               std::vector<std::int64_t>& out) {
    out.clear();
    const double base = static_cast<double>(v) / pieces;
    for (int m = 0; m < pieces - 1; ++m) {
        auto piece =
            static_cast<std::int64_t>(std::llround(base * (1.0 + overshoot * rng.normal())));
        if (piece == 0) piece = v > 0 ? 1 : -1;
        out.push_back(piece);
    }
    std::int64_t last = v;
    for (auto p : out) last -= p;
    if (last == 0) {
        out[0] += 1;
        if (out[0] == 0) out[0] = 1;
        last = v;
        for (auto p : out) last -= p;
    }
    out.push_back(last);
}

}  // namespace

SynthResult generate(const SynthConfig& config) {
    validate(config);

    SynthResult result;
    result.calendar.reserve(config.n_days);
    Date d = config.start_date;
    while (static_cast<int>(result.calendar.size()) < config.n_days) {
        if (is_weekday(d)) result.calendar.push_back(d);
        d = Date(d.days_since_epoch() + 1);
    }
    for (const auto& p : config.planted) result.planted_edges.emplace_back(p.a.index(), p.b.index());

    // Which planted pair (if any) owns each category; pairs are node-disjoint.
    std::vector<int> pair_of(kCategoryCount, -1);
    for (std::size_t k = 0; k < config.planted.size(); ++k) {
        pair_of[config.planted[k].a.index()] = static_cast<int>(k);
        pair_of[config.planted[k].b.index()] = static_cast<int>(k);
    }

    std::vector<std::int64_t> pieces;
    for (int s = 0; s < config.n_securities; ++s) {
        char sec_name[16];
        std::snprintf(sec_name, sizeof(sec_name), "SEC%03d", s);
        result.security_ids.emplace_back(sec_name);

        Rng rng(substream_seed(config.seed, 3, static_cast<std::uint64_t>(s)));
        NetVolumeMatrix latent(result.calendar);

        for (int t = 0; t < config.n_days; ++t) {
            const Date date = result.calendar[t];

            // Latent standardized draws, planted pairs first so coupled
            // categories consume their correlated pair jointly.
            std::array<double, kCategoryCount> z;
            std::vector<bool> drawn(kCategoryCount, false);
            for (const auto& p : config.planted) {
                const double u = rng.normal();
                const double w = rng.normal();
                const double rho = p.active_on(t) ? p.rho : 0.0;
                z[p.a.index()] = u;
                z[p.b.index()] = rho * u + std::sqrt(1.0 - rho * rho) * w;
                drawn[p.a.index()] = drawn[p.b.index()] = true;
            }
            for (int c = 0; c < kCategoryCount; ++c)
                if (!drawn[c]) z[c] = rng.normal();

            for (int c = 0; c < kCategoryCount; ++c) {
                const auto v =
                    static_cast<std::int64_t>(std::llround(config.volume_sigma * z[c]));
                latent.at(t, c) = v;
                if (v == 0) continue;

                const double rate =
                    config.category_rate.empty() ? config.tx_rate : config.category_rate[c];
                const int n_pieces = 1 + rng.poisson(std::max(rate - 1.0, 0.0));
                decompose(v, n_pieces, config.overshoot, rng, pieces);

                const CategoryId cat = CategoryId::from_index(c);
                for (auto piece : pieces) {
                    Transaction tx;
                    tx.trade_date = date;
                    tx.security_id = sec_name;
                    tx.signed_volume = piece;
                    tx.region = cat.region();
                    if (cat.is_household()) {
                        tx.sector = Sector::Household;
                        const auto& range = kAgeRanges[static_cast<int>(cat.sector_or_age()) - 4];
                        const int age = range.first + static_cast<int>(rng.uniform_below(
                                            static_cast<std::uint64_t>(range.second - range.first + 1)));
                        tx.birth_year = date.year() - age;
                    } else {
                        switch (cat.sector_or_age()) {
                            case SectorOrAge::FinancialInsurance:
                                tx.sector = Sector::FinancialInsurance;
                                break;
                            case SectorOrAge::Government: tx.sector = Sector::Government; break;
                            case SectorOrAge::NonFinancial: tx.sector = Sector::NonFinancial; break;
                            default: tx.sector = Sector::NonProfit; break;
                        }
                    }
                    char inv[32];
                    std::snprintf(inv, sizeof(inv), "inv-%02d-%03d", c,
                                  static_cast<int>(rng.uniform_below(250)));
                    tx.investor_id = inv;
                    result.transactions.push_back(std::move(tx));
                }
            }
        }
        result.latent.push_back(std::move(latent));
    }
    return result;
}

}  // namespace invnet
