#pragma once

// Independent brute-force oracles used by the test suites.  Everything here
// is deliberately naive and shares no code with the library implementations
// it checks.

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracles {

// Adaptive Simpson quadrature.
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 60);
}

// K(m) straight from the defining integral.
inline double elliptic_k_quadrature(double m) {
    return integrate(
        [m](double theta) {
            const double s = std::sin(theta);
            return 1.0 / std::sqrt(1.0 - m * s * s);
        },
        0.0, std::numbers::pi / 2.0, 1e-14);
}

// E(m), for the logarithmic-branch hypergeometric identity.
inline double elliptic_e_quadrature(double m) {
    return integrate(
        [m](double theta) {
            const double s = std::sin(theta);
            return std::sqrt(1.0 - m * s * s);
        },
        0.0, std::numbers::pi / 2.0, 1e-14);
}

// Euler integral for 2F1, valid for c > b > 0 and z < 1:
//   2F1(a,b;c|z) = 1/B(b,c-b) int_0^1 t^{b-1} (1-t)^{c-b-1} (1-zt)^{-a} dt.
// Callers keep b >= 1 and c-b >= 1 so the integrand stays bounded.
inline double hyp2f1_quadrature(double a, double b, double c, double z) {
    const double beta = std::tgamma(b) * std::tgamma(c - b) / std::tgamma(c);
    const double val = integrate(
        [a, b, c, z](double t) {
            return std::pow(t, b - 1.0) * std::pow(1.0 - t, c - b - 1.0) *
                   std::pow(1.0 - z * t, -a);
        },
        0.0, 1.0, 1e-14);
    return val / beta;
}

// All perfect matchings of 1..2n as sorted pair lists (no crossing filter).
inline void all_matchings_rec(std::vector<int>& free_pts,
                              std::vector<std::pair<int, int>>& current,
                              std::vector<std::vector<std::pair<int, int>>>& out) {
    if (free_pts.empty()) {
        out.push_back(current);
        return;
    }
    const int first = free_pts.front();
    for (std::size_t j = 1; j < free_pts.size(); ++j) {
        const int partner = free_pts[j];
        std::vector<int> rest;
        for (std::size_t k = 1; k < free_pts.size(); ++k) {
            if (k != j) rest.push_back(free_pts[k]);
        }
        current.emplace_back(first, partner);
        all_matchings_rec(rest, current, out);
        current.pop_back();
    }
}

inline std::vector<std::vector<std::pair<int, int>>> all_perfect_matchings(int n_pairs) {
    std::vector<int> pts;
    for (int i = 1; i <= 2 * n_pairs; ++i) pts.push_back(i);
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> current;
    all_matchings_rec(pts, current, out);
    return out;
}

inline bool has_crossing(const std::vector<std::pair<int, int>>& pairs) {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        for (std::size_t q = 0; q < pairs.size(); ++q) {
            if (p == q) continue;
            const auto [i, j] = pairs[p];
            const auto [k, l] = pairs[q];
            if (i < k && k < j && j < l) return true;
        }
    }
    return false;
}

} // namespace oracles
