// Gaussian mutual information between category net-volume series:
// rho from population moments, I = -1/2 log(1 - rho^2) in nats, plus the
// permutation-style null distribution and the significance mask.
#pragma once

#include <cstdint>
#include <span>

#include "invnet/types.hpp"

namespace invnet {

// Population-moment Pearson correlation; nullopt when either series has zero
// variance (ineligible pair, not an error).
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct MiValue {
    double value = 0.0;
    bool saturated = false;  // |rho| was clamped away from 1
};

// Natural log; |rho| = 1 is clamped to 1 - 1e-12 so the result stays finite.
MiValue mi_from_rho(double rho);

// A category is eligible when its series has positive variance and at least
// min_active_days nonzero entries; near-constant series otherwise produce
// spurious saturated correlations.
inline constexpr int kDefaultMinActiveDays = 5;

std::vector<std::uint8_t> eligible_categories(const NetVolumeMatrix& m,
                                              int min_active_days = kDefaultMinActiveDays);

// Pairwise MI over all eligible categories. Throws if the matrix has fewer
// than 2 rows or fewer than 2 eligible categories.
MIMatrix mi_matrix(const NetVolumeMatrix& m, int min_active_days = kDefaultMinActiveDays);

// Pooled MI values from `replicas` rounds of null_resample -> build_net_volume
// -> mi_matrix. Null replica r draws its seed from substream family 1.
std::vector<double> null_mi_distribution(std::span<const CategorizedTransaction> txns,
                                         int replicas, std::span<const Date> calendar,
                                         std::uint64_t seed,
                                         int min_active_days = kDefaultMinActiveDays);

// Empirical quantile, "higher" interpolation (conservative).
double empirical_quantile(std::vector<double> values, double level);

// mask(i,j) = MI(i,j) > (1 - alpha_mi) null quantile. alpha_mi >= 1 passes
// every present pair.
PairMask significance_mask(const MIMatrix& mi, std::span<const double> null_values,
                           double alpha_mi);

}  // namespace invnet
