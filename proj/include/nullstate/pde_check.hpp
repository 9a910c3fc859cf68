#pragma once

#include <array>
#include <span>
#include <vector>

#include "nullstate/solutions.hpp"

namespace nullstate {

/**
 * Aggregated residual report for one solution handle.
 *
 * null_state[j] and ward[i] hold the maximum normalized residual over the
 * sampled points, evaluated at the per-point default step h = 1e-3 * min gap.
 * convergence_order holds one fitted order per null-state equation (empty
 * unless the sweep touches at least three decades, h_max/h_min >= 100);
 * entries are NaN when a fit is not meaningful (e.g. identically zero
 * residuals).
 */
struct ResidualReport {
    std::vector<double> null_state;
    std::array<double, 3> ward{};
    std::vector<double> step_sizes;
    std::vector<double> convergence_order;
};

/**
 * Normalized residual of the null-state equation centered on coordinate j
 * (1-based), evaluated with 4th-order central differences at step h.
 * Normalization is the sum of the absolute term magnitudes, so 0 means the
 * equation holds exactly and O(1) means it is violated.
 * Requires h < min_gap(pt)/4 (throws step_error otherwise).
 */
double null_state_residual(const SolutionHandle& f, const ConfigPoint& pt, int j, double h);

// Normalized residuals of the translation, dilation and inversion identities.
std::array<double, 3> ward_residuals(const SolutionHandle& f, const ConfigPoint& pt, double h);

// Max residuals over the sample at the default step, plus per-equation
// convergence orders fitted across the h sweep (absolute step values).
ResidualReport full_report(const SolutionHandle& f, std::span<const ConfigPoint> pts,
                           std::span<const double> h_sweep);

// True iff |F(x)| <= C prod_{i<j} |x_j-x_i|^{mu_ij(p)} on every sampled
// point, with mu_ij(p) = -p for gaps below 1 and +p otherwise.
bool growth_bound_probe(const SolutionHandle& f, double p, double c,
                        std::span<const ConfigPoint> pts);

} // namespace nullstate
