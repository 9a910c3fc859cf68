#pragma once

#include <span>
#include <string>
#include <vector>

#include "nullstate/diagrams.hpp"
#include "nullstate/solutions.hpp"

namespace nullstate {

/**
 * Result of one extrapolated collapse limit.
 *
 * value is the extrapolated limit of delta^{6/kappa-1} F along the ladder
 * delta_k = delta_0 * ratio^k (for outer collapses the ladder variable is
 * 1/(2R) instead); exponent_fit is the fitted leading power of the raw F
 * values in the ladder variable (NaN when F vanishes along the ladder);
 * stderr_ is the extrapolation uncertainty estimated from the final
 * Richardson stage.
 */
struct CollapseResult {
    double value = 0.0;
    double exponent_fit = 0.0;
    double stderr_ = 0.0;
    std::vector<double> deltas_used;
};

struct CollapseSchedule {
    int levels = 12;
    double ratio = 0.5;      // delta_{k+1} / delta_k
    double start_fraction = 0.125; // delta_0 as a fraction of the local scale
};

// A reduced handle produced by collapsing arcs of a parent handle.  The
// reduced evaluator reruns the inner extrapolation at every requested point,
// so evaluation cost grows geometrically with the number of nested collapses.
struct CollapsedHandle {
    SolutionHandle reduced;
    std::string parent_label;
    std::vector<std::pair<int, int>> collapsed_arcs;
};

/**
 * Interval collapse of the adjacent pair (x_i, x_{i+1}) of base_pt (i is
 * 1-based): extrapolates delta^{6/kappa-1} F with x_{i+1} = x_i + delta down
 * the ladder.  The schedule is bounded by a quarter of the gap to the next
 * coordinate.  Throws convergence_error when the ladder tail does not
 * stabilize.
 */
CollapseResult collapse_interval(const SolutionHandle& f, int i, const ConfigPoint& base_pt,
                                 const CollapseSchedule& sched = {});

/**
 * Outer collapse of the outermost pair of base_pt: extrapolates
 * (2R)^{6/kappa-1} F with (x_1, x_{2N}) = (-R, R), R growing geometrically
 * from 8x the span of the interior coordinates.
 */
CollapseResult collapse_outer(const SolutionHandle& f, const ConfigPoint& base_pt,
                              const CollapseSchedule& sched = {});

// Reduced handles for composing sequences of limits.  anchor_x fixes where
// the collapsed pair sits when the reduced evaluator reconstructs a full
// tuple (the limit itself is independent of this choice); anchor_scale sets
// the ladder scale.
CollapsedHandle collapse_to_handle_interval(const SolutionHandle& f, int i, double anchor_x,
                                            double anchor_scale,
                                            const CollapseSchedule& sched = {});
CollapsedHandle collapse_to_handle_outer(const SolutionHandle& f, double fallback_scale,
                                         const CollapseSchedule& sched = {});

enum class IntervalChannel { two_leg, identity, mixed };

/**
 * Classifies the interval (x_i, x_{i+1}) across the sample:
 *   two_leg  : extrapolated limit ~ 0 and exponent ~ 2/kappa (+-0.02)
 *   identity : limit bounded away from 0 and exponent ~ 1-6/kappa (+-0.02)
 *   mixed    : exponent lands strictly between the two channel powers
 * Throws classification_error when 8/kappa is a positive integer (the two
 * channel powers differ by an integer) or when the fit matches no channel.
 */
IntervalChannel classify_interval(const SolutionHandle& f, int i,
                                  std::span<const ConfigPoint> pts);

/**
 * Folds the collapses of an allowable sequence over the handle, starting
 * from the anchor coordinates, and returns the final scalar.  Convergence
 * failures are rethrown with the step index at which they occurred.
 */
double apply_sequence(const SolutionHandle& f, const LimitSequence& s, const ConfigPoint& anchor);

/**
 * The C_N-component dual vector: one representative allowable sequence per
 * equivalence class, classes in the canonical diagram order.  Guarded to
 * N <= 4; anchor must have min gap >= 1.
 */
std::vector<double> dual_vector(const SolutionHandle& f, const ConfigPoint& anchor);

} // namespace nullstate
