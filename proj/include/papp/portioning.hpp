#pragma once

#include <cstdint>

#include "papp/model.hpp"

namespace papp {

/// Assigns each voter to an approval-maximal approved party (global approval
/// scores, ties to the lowest party index); shares are assignment fractions.
Portioning conditional_utilitarian(const Election& election);

/// Exact average over all n! priority orders. Each order greedily shrinks the
/// feasible party set through the voters' approval sets and spreads the unit
/// mass uniformly over the final set. Requires n <= 10 (CapacityError above,
/// pointing at the sampled mode).
Portioning random_priority_exact(const Election& election);

/// Monte Carlo estimate of random priority over `trials` sampled orders.
Portioning random_priority_sampled(const Election& election, uint64_t seed, long long trials);

struct NashOptions {
    double tolerance = 1e-9; // KKT residual, scaled by n
    long long max_iterations = 2'000'000;
};

/// Maximizes sum_i w_i * log(share of A_i) over the simplex via a multiplicative
/// gradient fixed-point iteration; deterministic for fixed inputs. Throws
/// NumericalError (with the residual) if the tolerance is not reached.
Portioning nash(const Election& election, const NashOptions& options = {});

/// Rounds of "largest active approval bloc wins": the winning party takes
/// share |N_j|/n and its active approvers deactivate with it.
Portioning majoritarian(const Election& election);

} // namespace papp
