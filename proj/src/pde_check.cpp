#include "nullstate/pde_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nullstate/errors.hpp"

namespace nullstate {

namespace {

constexpr double kDefaultStepFraction = 1e-3;
// Residuals below this are treated as exact when fitting convergence orders.
constexpr double kResidualFloor = 1e-13;

// All first and second partials of f at pt, 4th-order central differences.
struct Stencil {
    double f0 = 0.0;
    std::vector<double> d1;
    std::vector<double> d2;
};

Stencil make_stencil(const SolutionHandle& f, const ConfigPoint& pt, double h) {
    const auto x = pt.coords();
    const std::size_t n = x.size();
    if (!(h > 0.0) || !(h < pt.min_gap() / 4.0)) {
        throw step_error("finite-difference step must satisfy 0 < h < min_gap/4, h=" +
                         std::to_string(h) + " min_gap=" + std::to_string(pt.min_gap()));
    }
    Stencil st;
    st.d1.resize(n);
    st.d2.resize(n);
    st.f0 = f.eval_raw(x);
    std::vector<double> probe(x.begin(), x.end());
    for (std::size_t k = 0; k < n; ++k) {
        const double xk = x[k];
        auto at = [&](double offset) {
            probe[k] = xk + offset;
            return f.eval_raw(probe);
        };
        const double fp1 = at(h);
        const double fp2 = at(2.0 * h);
        const double fm1 = at(-h);
        const double fm2 = at(-2.0 * h);
        probe[k] = xk;
        st.d1[k] = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
        st.d2[k] = (-fp2 + 16.0 * fp1 - 30.0 * st.f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    }
    return st;
}

double null_state_from_stencil(const SolutionHandle& f, const ConfigPoint& pt, int j,
                               const Stencil& st) {
    const auto x = pt.coords();
    const double kappa = f.kappa().value();
    const double theta1 = (6.0 - kappa) / (2.0 * kappa);
    const int jj = j - 1;

    double value = (kappa / 4.0) * st.d2[jj];
    double magnitude = std::abs(value);
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (static_cast<int>(k) == jj) continue;
        const double dx = x[k] - x[jj];
        const double t1 = st.d1[k] / dx;
        const double t2 = -theta1 * st.f0 / (dx * dx);
        value += t1 + t2;
        magnitude += std::abs(t1) + std::abs(t2);
    }
    if (magnitude == 0.0) return 0.0;
    return std::abs(value) / magnitude;
}

std::array<double, 3> ward_from_stencil(const SolutionHandle& f, const ConfigPoint& pt,
                                        const Stencil& st) {
    const auto x = pt.coords();
    const double theta1 = one_leg_weight(f.kappa());

    double w1 = 0.0, m1 = 0.0;
    double w2 = 0.0, m2 = 0.0;
    double w3 = 0.0, m3 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        w1 += st.d1[k];
        m1 += std::abs(st.d1[k]);

        const double t2a = x[k] * st.d1[k];
        const double t2b = theta1 * st.f0;
        w2 += t2a + t2b;
        m2 += std::abs(t2a) + std::abs(t2b);

        const double t3a = x[k] * x[k] * st.d1[k];
        const double t3b = 2.0 * theta1 * x[k] * st.f0;
        w3 += t3a + t3b;
        m3 += std::abs(t3a) + std::abs(t3b);
    }
    auto norm = [](double v, double m) { return m == 0.0 ? 0.0 : std::abs(v) / m; };
    return {norm(w1, m1), norm(w2, m2), norm(w3, m3)};
}

// Least-squares slope of log(residual) vs log(h) over the truncation-
// dominated prefix: successive slopes below 1.5 mark the roundoff plateau
// and end the fit window.  NaN when fewer than three usable points remain.
double fit_order(std::span<const double> hs, std::span<const double> rs) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::size_t usable = 0;
    while (usable < rs.size() && rs[usable] > kResidualFloor) ++usable;
    std::size_t end = 1;
    while (end < usable) {
        const double slope = std::log(rs[end - 1] / rs[end]) / std::log(hs[end - 1] / hs[end]);
        if (slope < 1.5) break;
        ++end;
    }
    if (end < 3) return nan;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < end; ++i) {
        const double lx = std::log(hs[i]);
        const double ly = std::log(rs[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = end * sxx - sx * sx;
    if (denom == 0.0) return nan;
    return (end * sxy - sx * sy) / denom;
}

} // namespace

double null_state_residual(const SolutionHandle& f, const ConfigPoint& pt, int j, double h) {
    if (j < 1 || j > 2 * f.n_pairs()) {
        throw parameter_error("null_state_residual: j out of range 1..2N");
    }
    return null_state_from_stencil(f, pt, j, make_stencil(f, pt, h));
}

std::array<double, 3> ward_residuals(const SolutionHandle& f, const ConfigPoint& pt, double h) {
    return ward_from_stencil(f, pt, make_stencil(f, pt, h));
}

ResidualReport full_report(const SolutionHandle& f, std::span<const ConfigPoint> pts,
                           std::span<const double> h_sweep) {
    if (pts.empty()) throw parameter_error("full_report: need a nonempty point sample");
    const int n_eq = 2 * f.n_pairs();

    ResidualReport report;
    report.null_state.assign(n_eq, 0.0);
    report.step_sizes.assign(h_sweep.begin(), h_sweep.end());

    for (const auto& pt : pts) {
        const double h = kDefaultStepFraction * pt.min_gap();
        const Stencil st = make_stencil(f, pt, h);
        for (int j = 1; j <= n_eq; ++j) {
            report.null_state[j - 1] =
                std::max(report.null_state[j - 1], null_state_from_stencil(f, pt, j, st));
        }
        const auto w = ward_from_stencil(f, pt, st);
        for (int i = 0; i < 3; ++i) report.ward[i] = std::max(report.ward[i], w[i]);
    }

    if (h_sweep.size() >= 3) {
        const auto [hmin, hmax] = std::minmax_element(h_sweep.begin(), h_sweep.end());
        if (*hmax / *hmin >= 100.0) {
            std::vector<double> hs(h_sweep.begin(), h_sweep.end());
            std::sort(hs.begin(), hs.end(), std::greater<>());
            std::vector<std::vector<double>> max_res(n_eq, std::vector<double>(hs.size(), 0.0));
            for (std::size_t ih = 0; ih < hs.size(); ++ih) {
                for (const auto& pt : pts) {
                    const Stencil st = make_stencil(f, pt, hs[ih]);
                    for (int j = 1; j <= n_eq; ++j) {
                        max_res[j - 1][ih] = std::max(max_res[j - 1][ih],
                                                      null_state_from_stencil(f, pt, j, st));
                    }
                }
            }
            report.convergence_order.resize(n_eq);
            for (int j = 0; j < n_eq; ++j) {
                report.convergence_order[j] = fit_order(hs, max_res[j]);
            }
        }
    }
    return report;
}

bool growth_bound_probe(const SolutionHandle& f, double p, double c,
                        std::span<const ConfigPoint> pts) {
    for (const auto& pt : pts) {
        const auto x = pt.coords();
        double bound = c;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t j = i + 1; j < x.size(); ++j) {
                const double gap = std::abs(x[j] - x[i]);
                bound *= std::pow(gap, gap < 1.0 ? -p : p);
            }
        }
        if (std::abs(f.eval_raw(x)) > bound) return false;
    }
    return true;
}

} // namespace nullstate
