#include "nullstate/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nullstate/errors.hpp"

namespace nullstate {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Correction exponents of the ladder H(delta) = value + sum_q A_q delta^q.
// The two fusion branches contribute {8/k-1, 8/k, ...} and {2, 3, ...};
// outer ladders additionally pick up integer powers of 1/R from the
// coordinate map, starting at 1.
std::vector<double> correction_exponents(double kappa, bool outer) {
    const double q1 = 8.0 / kappa - 1.0;
    std::vector<double> exps;
    for (int k = 0; k < 3; ++k) exps.push_back(q1 + k);
    exps.push_back(2.0);
    exps.push_back(3.0);
    if (outer) exps.push_back(1.0);
    std::sort(exps.begin(), exps.end());
    exps.erase(std::unique(exps.begin(), exps.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-9; }),
               exps.end());
    // keep exponents that actually matter at double precision
    if (exps.size() > 4) exps.resize(4);
    return exps;
}

struct LadderFit {
    double value = 0.0;
    double stderr_ = 0.0;
};

// Successive Richardson elimination of the given exponents on a geometric
// ladder v_k = V + sum A_q rho^{qk}.  The uncertainty is the last correction
// applied in the final stage plus a roundoff floor.
LadderFit extrapolate_ladder(std::vector<double> v, std::span<const double> exponents,
                             double rho) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    const double floor = 32.0 * std::numeric_limits<double>::epsilon() * scale;

    double last_correction = 0.0;
    for (double q : exponents) {
        if (v.size() < 3) break;
        const double w = std::pow(rho, q);
        std::vector<double> next(v.size() - 1);
        for (std::size_t k = 0; k + 1 < v.size(); ++k) {
            next[k] = (v[k + 1] - w * v[k]) / (1.0 - w);
        }
        v = std::move(next);
    }
    last_correction = std::abs(v.back() - v[v.size() - 2]);
    return {v.back(), last_correction + floor};
}

// Divergence guard on the raw ladder: corrections of a genuine collapse
// shrink; three consecutive doublings of the tail differences mean the limit
// is not stabilizing.
void check_tail(const std::vector<double>& v, const char* what) {
    double scale = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw convergence_error(std::string(what) +
                                    ": ladder produced a nonfinite value before extrapolation");
        }
        scale = std::max(scale, std::abs(x));
    }
    int growth_streak = 0;
    for (std::size_t k = v.size() - 4; k + 1 < v.size(); ++k) {
        const double w0 = std::abs(v[k] - v[k - 1]);
        const double w1 = std::abs(v[k + 1] - v[k]);
        if (w1 > 2.0 * w0 && w1 > 1e-6 * scale) {
            ++growth_streak;
        } else {
            growth_streak = 0;
        }
    }
    if (growth_streak >= 3) {
        throw convergence_error(std::string(what) + ": non-monotone ladder tail, limit did not stabilize");
    }
}

// Leading power p of F ~ delta^p (A + ...) from the per-step log ratios,
// Aitken-accelerated twice to strip the slowest geometric correction.
double fit_leading_exponent(const std::vector<double>& fraw, double rho) {
    double scale = 0.0;
    for (double x : fraw) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return kNaN;

    std::vector<double> p;
    const double logr = std::log(rho);
    for (std::size_t k = 0; k + 1 < fraw.size(); ++k) {
        if (fraw[k] == 0.0 || fraw[k + 1] == 0.0 || fraw[k] * fraw[k + 1] < 0.0) return kNaN;
        p.push_back(std::log(fraw[k + 1] / fraw[k]) / logr);
    }
    auto aitken = [](const std::vector<double>& s) {
        std::vector<double> out;
        for (std::size_t k = 0; k + 2 < s.size(); ++k) {
            const double d2 = s[k + 2] - 2.0 * s[k + 1] + s[k];
            if (std::abs(d2) < 1e-14) {
                out.push_back(s[k + 2]);
            } else {
                const double d1 = s[k + 1] - s[k];
                out.push_back(s[k] - d1 * d1 / d2);
            }
        }
        return out;
    };
    auto a1 = aitken(p);
    if (a1.empty()) return p.back();
    auto a2 = aitken(a1);
    return a2.empty() ? a1.back() : a2.back();
}

struct LadderSpec {
    std::vector<double> deltas;   // ladder variable (delta, or 1/(2R))
    std::vector<double> h_values; // delta^{6/k-1} F samples
    std::vector<double> f_values; // raw F samples
};

CollapseResult finish(const SleKappa kappa, const LadderSpec& ladder, double rho, bool outer,
                      const char* what) {
    check_tail(ladder.h_values, what);
    const auto exps = correction_exponents(kappa.value(), outer);
    const auto fit = extrapolate_ladder(ladder.h_values, exps, rho);
    CollapseResult res;
    res.value = fit.value;
    res.stderr_ = fit.stderr_;
    res.exponent_fit = fit_leading_exponent(ladder.f_values, rho);
    res.deltas_used = ladder.deltas;
    return res;
}

// delta_0 for collapsing the pair at (anchor, anchor+delta): an eighth of
// the local scale, never more than a quarter of the room to the next
// coordinate on the right.
double interval_delta0(double avail, double pair_scale, double start_fraction) {
    double s = pair_scale;
    if (std::isfinite(avail)) s = std::min(avail / 2.0, s);
    if (!(s > 0.0)) throw domain_error("collapse_interval: no room for a delta schedule");
    return s * start_fraction;
}

LadderSpec run_interval_ladder(const SolutionHandle& f, std::span<const double> coords,
                               int left_idx, double anchor_x, double anchor_scale,
                               const CollapseSchedule& sched) {
    const double kappa = f.kappa().value();
    const double expo = 6.0 / kappa - 1.0;
    const std::size_t n = coords.size() + 2;

    // room to the next remaining coordinate on the right of the pair
    const bool has_right = static_cast<std::size_t>(left_idx) < coords.size();
    const double avail =
        has_right ? coords[left_idx] - anchor_x : std::numeric_limits<double>::infinity();
    if (has_right && !(avail > 0.0)) {
        throw domain_error("collapse_interval: anchor collides with the next coordinate");
    }
    if (left_idx > 0 && !(coords[left_idx - 1] < anchor_x)) {
        throw domain_error("collapse_interval: anchor collides with the previous coordinate");
    }
    const double delta0 = interval_delta0(avail, anchor_scale, sched.start_fraction);

    LadderSpec ladder;
    std::vector<double> probe(n);
    for (int k = 0; k < sched.levels; ++k) {
        const double delta = delta0 * std::pow(sched.ratio, k);
        std::size_t w = 0;
        for (int s = 0; s < left_idx; ++s) probe[w++] = coords[s];
        probe[w++] = anchor_x;
        probe[w++] = anchor_x + delta;
        for (std::size_t s = left_idx; s < coords.size(); ++s) probe[w++] = coords[s];
        const double fv = f.eval_raw(probe);
        ladder.deltas.push_back(delta);
        ladder.f_values.push_back(fv);
        ladder.h_values.push_back(std::pow(delta, expo) * fv);
    }
    return ladder;
}

LadderSpec run_outer_ladder(const SolutionHandle& f, std::span<const double> interior,
                            double fallback_scale, const CollapseSchedule& sched) {
    const double kappa = f.kappa().value();
    const double expo = 6.0 / kappa - 1.0;

    double span = fallback_scale;
    for (double x : interior) span = std::max(span, std::abs(x));
    if (!(span > 0.0)) span = 1.0;
    const double r0 = 8.0 * span;

    LadderSpec ladder;
    std::vector<double> probe(interior.size() + 2);
    const double growth = 1.0 / sched.ratio;
    for (int k = 0; k < sched.levels; ++k) {
        const double r = r0 * std::pow(growth, k);
        probe.front() = -r;
        std::copy(interior.begin(), interior.end(), probe.begin() + 1);
        probe.back() = r;
        const double fv = f.eval_raw(probe);
        ladder.deltas.push_back(1.0 / (2.0 * r));
        ladder.f_values.push_back(fv);
        ladder.h_values.push_back(std::pow(2.0 * r, expo) * fv);
    }
    return ladder;
}

bool is_degenerate_kappa(double kappa) {
    const double ratio = 8.0 / kappa;
    return std::abs(ratio - std::round(ratio)) < 1e-9 && ratio >= 1.0;
}

double ladder_magnitude(const LadderSpec& ladder) {
    double scale = 0.0;
    for (double h : ladder.h_values) scale = std::max(scale, std::abs(h));
    return scale;
}

} // namespace

CollapseResult collapse_interval(const SolutionHandle& f, int i, const ConfigPoint& base_pt,
                                 const CollapseSchedule& sched) {
    const int n_coords = 2 * f.n_pairs();
    if (base_pt.size() != static_cast<std::size_t>(n_coords)) {
        throw parameter_error("collapse_interval: point arity does not match the handle");
    }
    if (i < 1 || i >= n_coords) {
        throw parameter_error("collapse_interval: pair index must satisfy 1 <= i < 2N");
    }
    const auto x = base_pt.coords();
    std::vector<double> reduced;
    reduced.reserve(x.size() - 2);
    for (int s = 0; s < n_coords; ++s) {
        if (s != i - 1 && s != i) reduced.push_back(x[s]);
    }
    const double anchor_x = x[i - 1];
    const double anchor_scale = x[i] - x[i - 1];
    const auto ladder = run_interval_ladder(f, reduced, i - 1, anchor_x, anchor_scale, sched);
    return finish(f.kappa(), ladder, sched.ratio, false, "collapse_interval");
}

CollapseResult collapse_outer(const SolutionHandle& f, const ConfigPoint& base_pt,
                              const CollapseSchedule& sched) {
    const int n_coords = 2 * f.n_pairs();
    if (base_pt.size() != static_cast<std::size_t>(n_coords)) {
        throw parameter_error("collapse_outer: point arity does not match the handle");
    }
    const auto x = base_pt.coords();
    const std::vector<double> interior(x.begin() + 1, x.end() - 1);
    const double fallback = std::max({std::abs(x.front()), std::abs(x.back()), 1.0});
    const auto ladder = run_outer_ladder(f, interior, fallback, sched);
    return finish(f.kappa(), ladder, sched.ratio, true, "collapse_outer");
}

CollapsedHandle collapse_to_handle_interval(const SolutionHandle& f, int i, double anchor_x,
                                            double anchor_scale, const CollapseSchedule& sched) {
    const int n_coords = 2 * f.n_pairs();
    if (i < 1 || i >= n_coords) {
        throw parameter_error("collapse_to_handle_interval: pair index out of range");
    }
    if (f.n_pairs() < 2) {
        throw parameter_error("collapse_to_handle_interval: reduced arity would be zero; "
                              "use collapse_interval for the final limit");
    }
    const SleKappa kappa = f.kappa();
    const int left_idx = i - 1;
    auto parent = f; // value copy keeps the reduced handle self-contained
    auto eval = [parent, left_idx, anchor_x, anchor_scale, sched](std::span<const double> xi) {
        const auto ladder =
            run_interval_ladder(parent, xi, left_idx, anchor_x, anchor_scale, sched);
        return finish(parent.kappa(), ladder, sched.ratio, false, "collapsed evaluator").value;
    };
    SolutionHandle reduced(f.n_pairs() - 1, kappa, std::move(eval), f.label() + "/collapsed");
    return CollapsedHandle{std::move(reduced), f.label(), {{i, i + 1}}};
}

CollapsedHandle collapse_to_handle_outer(const SolutionHandle& f, double fallback_scale,
                                         const CollapseSchedule& sched) {
    if (f.n_pairs() < 2) {
        throw parameter_error("collapse_to_handle_outer: reduced arity would be zero; "
                              "use collapse_outer for the final limit");
    }
    const SleKappa kappa = f.kappa();
    auto parent = f;
    auto eval = [parent, fallback_scale, sched](std::span<const double> xi) {
        const auto ladder = run_outer_ladder(parent, xi, fallback_scale, sched);
        return finish(parent.kappa(), ladder, sched.ratio, true, "collapsed evaluator").value;
    };
    SolutionHandle reduced(f.n_pairs() - 1, kappa, std::move(eval), f.label() + "/collapsed");
    return CollapsedHandle{std::move(reduced), f.label(), {{1, 2 * f.n_pairs()}}};
}

IntervalChannel classify_interval(const SolutionHandle& f, int i,
                                  std::span<const ConfigPoint> pts) {
    const double kappa = f.kappa().value();
    if (is_degenerate_kappa(kappa)) {
        throw classification_error(
            "classify_interval: channel powers differ by an integer at kappa=8/r (kappa=" +
            std::to_string(kappa) + "); classification is disabled there");
    }
    if (pts.empty()) throw parameter_error("classify_interval: need a nonempty sample");

    const double p_identity = 1.0 - 6.0 / kappa;
    const double p_two_leg = 2.0 / kappa;
    constexpr double kExponentTol = 0.02;

    IntervalChannel verdict{};
    bool first = true;
    for (const auto& pt : pts) {
        // rebuild the ladder so the decision can see its magnitude
        const auto x = pt.coords();
        std::vector<double> reduced;
        for (std::size_t s = 0; s < x.size(); ++s) {
            if (s != static_cast<std::size_t>(i - 1) && s != static_cast<std::size_t>(i)) {
                reduced.push_back(x[s]);
            }
        }
        const CollapseSchedule sched{};
        const auto ladder =
            run_interval_ladder(f, reduced, i - 1, x[i - 1], x[i] - x[i - 1], sched);
        const auto res = finish(f.kappa(), ladder, sched.ratio, false, "classify_interval");
        const double ladder_scale = ladder_magnitude(ladder);

        IntervalChannel channel;
        const bool tiny = std::abs(res.value) <= 1e-7 * std::max(ladder_scale, 1e-300);
        if (tiny && std::abs(res.exponent_fit - p_two_leg) <= kExponentTol) {
            channel = IntervalChannel::two_leg;
        } else if (!tiny && std::abs(res.exponent_fit - p_identity) <= kExponentTol) {
            channel = IntervalChannel::identity;
        } else if (std::isfinite(res.exponent_fit) &&
                   res.exponent_fit > p_identity + kExponentTol &&
                   res.exponent_fit < p_two_leg - kExponentTol) {
            channel = IntervalChannel::mixed;
        } else {
            std::ostringstream os;
            os << "classify_interval: ambiguous fit, value=" << res.value
               << " exponent=" << res.exponent_fit << " expected identity power " << p_identity
               << " or two-leg power " << p_two_leg;
            throw classification_error(os.str());
        }
        if (first) {
            verdict = channel;
            first = false;
        } else if (channel != verdict) {
            throw classification_error(
                "classify_interval: sample points disagree on the fusion channel");
        }
    }
    return verdict;
}

double apply_sequence(const SolutionHandle& f, const LimitSequence& s, const ConfigPoint& anchor) {
    const auto check = validate_sequence(s);
    if (!check.ok) {
        throw parameter_error("apply_sequence: sequence is not allowable: " + check.violation);
    }
    if (s.diagram.n_pairs != f.n_pairs()) {
        throw parameter_error("apply_sequence: diagram size does not match the handle");
    }
    if (anchor.size() != static_cast<std::size_t>(2 * f.n_pairs())) {
        throw parameter_error("apply_sequence: anchor arity does not match the handle");
    }

    SolutionHandle current = f;
    std::vector<int> slots(2 * f.n_pairs()); // original 0-based slot per active position
    std::vector<double> coords(anchor.coords().begin(), anchor.coords().end());
    for (std::size_t k = 0; k < slots.size(); ++k) slots[k] = static_cast<int>(k);

    const int n = s.diagram.n_pairs;
    for (int step = 0; step < n; ++step) {
        const int arc = s.order[step];
        const auto [a, b] = s.diagram.pairs[arc]; // 1-based original endpoints
        const auto pa_it = std::find(slots.begin(), slots.end(), a - 1);
        const auto pb_it = std::find(slots.begin(), slots.end(), b - 1);
        const int pa = static_cast<int>(pa_it - slots.begin());
        const int pb = static_cast<int>(pb_it - slots.begin());
        const bool last = (step == n - 1);

        try {
            if (s.kinds[arc] == CollapseKind::interval_collapse) {
                if (pb != pa + 1) {
                    throw parameter_error("apply_sequence: interval collapse of a non-adjacent pair");
                }
                if (last) {
                    return collapse_interval(current, pa + 1, ConfigPoint(coords)).value;
                }
                const double anchor_x = coords[pa];
                const double scale = coords[pb] - coords[pa];
                current = collapse_to_handle_interval(current, pa + 1, anchor_x, scale).reduced;
            } else {
                if (pa != 0 || pb != static_cast<int>(slots.size()) - 1) {
                    throw parameter_error("apply_sequence: outer collapse of a non-outermost pair");
                }
                if (last) {
                    return collapse_outer(current, ConfigPoint(coords)).value;
                }
                const double fallback = std::max(
                    {std::abs(coords.front()), std::abs(coords.back()), 1.0});
                current = collapse_to_handle_outer(current, fallback).reduced;
            }
        } catch (const convergence_error& e) {
            std::ostringstream os;
            os << "apply_sequence: step " << step + 1 << " (arc " << a << "," << b
               << ") failed to converge: " << e.what();
            throw convergence_error(os.str());
        }

        coords.erase(coords.begin() + pb);
        coords.erase(coords.begin() + pa);
        slots.erase(slots.begin() + pb);
        slots.erase(slots.begin() + pa);
    }
    throw parameter_error("apply_sequence: empty sequence");
}

std::vector<double> dual_vector(const SolutionHandle& f, const ConfigPoint& anchor) {
    if (f.n_pairs() > 4) {
        throw parameter_error("dual_vector: cost guard allows N <= 4");
    }
    if (anchor.min_gap() < 1.0) {
        throw domain_error("dual_vector: anchor must be well separated (min gap >= 1)");
    }
    const auto diagrams = enumerate_diagrams(f.n_pairs());
    std::vector<double> v;
    v.reserve(diagrams.size());
    for (const auto& d : diagrams) {
        const auto seqs = allowable_sequences(d);
        v.push_back(apply_sequence(f, seqs.front(), anchor));
    }
    return v;
}

} // namespace nullstate
