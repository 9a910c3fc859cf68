#include "nullstate/solutions.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

#include "nullstate/errors.hpp"
#include "nullstate/specfun.hpp"

namespace nullstate {

namespace {

// Signed cross-ratio from the labelled 4-tuple; exactly Moebius-invariant,
// so it stays in (0,1) on every chamber image of the ordered chamber.
double cross_ratio_raw(std::span<const double> x) {
    const double num = (x[1] - x[0]) * (x[3] - x[2]);
    const double den = (x[2] - x[0]) * (x[3] - x[1]);
    return num / den;
}

} // namespace

ConfigPoint::ConfigPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2 || coords_.size() % 2 != 0) {
        throw parameter_error("ConfigPoint: need an even number (>= 2) of coordinates");
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!std::isfinite(coords_[i])) throw parameter_error("ConfigPoint: nonfinite coordinate");
        if (i > 0 && !(coords_[i] > coords_[i - 1])) {
            std::ostringstream os;
            os << "ConfigPoint: coordinates must be strictly increasing, got x[" << i - 1
               << "]=" << coords_[i - 1] << " x[" << i << "]=" << coords_[i];
            throw parameter_error(os.str());
        }
    }
}

double ConfigPoint::min_gap() const {
    double g = coords_[1] - coords_[0];
    for (std::size_t i = 2; i < coords_.size(); ++i) {
        g = std::min(g, coords_[i] - coords_[i - 1]);
    }
    return g;
}

SolutionHandle::SolutionHandle(int n_pairs, SleKappa kappa, Evaluator eval, std::string label,
                               SolutionClaims claims)
    : n_pairs_(n_pairs), kappa_(kappa), eval_(std::move(eval)), label_(std::move(label)),
      claims_(std::move(claims)) {
    if (n_pairs_ < 1) throw parameter_error("SolutionHandle: n_pairs must be positive");
    if (!eval_) throw parameter_error("SolutionHandle: missing evaluator");
}

double SolutionHandle::operator()(const ConfigPoint& pt) const {
    if (pt.size() != static_cast<std::size_t>(2 * n_pairs_)) {
        throw parameter_error("SolutionHandle: point arity " + std::to_string(pt.size()) +
                              " does not match 2N=" + std::to_string(2 * n_pairs_));
    }
    return eval_(pt.coords());
}

double SolutionHandle::eval_raw(std::span<const double> coords) const {
    if (coords.size() != static_cast<std::size_t>(2 * n_pairs_)) {
        throw parameter_error("SolutionHandle: raw tuple arity mismatch");
    }
    return eval_(coords);
}

CrossRatio::CrossRatio(double lambda) : lambda_(lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw domain_error("CrossRatio: lambda must lie in (0,1), got " + std::to_string(lambda));
    }
}

CrossRatio CrossRatio::from_point(const ConfigPoint& pt) {
    if (pt.size() != 4) throw parameter_error("CrossRatio::from_point needs 2N=4 coordinates");
    return CrossRatio(cross_ratio_raw(pt.coords()));
}

SolutionHandle s1_solution(SleKappa k, double scale) {
    const double expo = 1.0 - 6.0 / k.value();
    return SolutionHandle(
        1, k,
        [scale, expo](std::span<const double> x) {
            return scale * std::pow(std::abs(x[1] - x[0]), expo);
        },
        "s1", SolutionClaims{true, true, std::nullopt});
}

std::pair<double, double> g_functions(SleKappa k, CrossRatio lam) {
    const double kappa = k.value();
    const double a = 4.0 / kappa;
    const double b = 1.0 - 4.0 / kappa;
    const double c = 8.0 / kappa;
    const double l = lam.value();
    auto g1 = [&](double u) {
        return std::pow(u, 2.0 / kappa) * std::pow(1.0 - u, 1.0 - 6.0 / kappa) *
               gauss_2f1(a, b, c, u);
    };
    return {g1(l), g1(1.0 - l)};
}

SolutionHandle s2_solution(SleKappa k, double c1, double c2) {
    const double kappa = k.value();
    const double expo = 1.0 - 6.0 / kappa;
    return SolutionHandle(
        2, k,
        [kappa, expo, c1, c2](std::span<const double> x) {
            const double lambda = cross_ratio_raw(x);
            assert(lambda > 0.0 && lambda < 1.0);
            const auto [g1, g2] = g_functions(SleKappa(kappa), CrossRatio(lambda));
            const double pref = std::pow(std::abs((x[3] - x[1]) * (x[2] - x[0])), expo);
            return pref * (c1 * g1 + c2 * g2);
        },
        "s2", SolutionClaims{true, true, std::nullopt});
}

SolutionHandle counterexample_solution(SleKappa k, int n_pairs) {
    if (n_pairs < 1) throw parameter_error("counterexample_solution: n_pairs must be positive");
    const double expo = 2.0 / k.value();
    const int n_points = 2 * n_pairs;
    return SolutionHandle(
        n_pairs, k,
        [expo, n_points](std::span<const double> x) {
            double prod = 1.0;
            for (int i = 0; i < n_points; ++i) {
                for (int j = i + 1; j < n_points; ++j) {
                    prod *= std::pow(std::abs(x[j] - x[i]), expo);
                }
            }
            return prod;
        },
        "counterexample", SolutionClaims{true, false, std::nullopt});
}

SolutionHandle constant_solution(SleKappa k, int n_pairs, double value) {
    const bool solves = std::abs(k.value() - 6.0) < 1e-12;
    return SolutionHandle(
        n_pairs, k, [value](std::span<const double>) { return value; }, "constant",
        SolutionClaims{solves, solves, std::nullopt});
}

SolutionHandle zero_solution(SleKappa k, int n_pairs) {
    return SolutionHandle(
        n_pairs, k, [](std::span<const double>) { return 0.0; }, "zero",
        SolutionClaims{true, true, std::nullopt});
}

double mobius_transform_check(const SolutionHandle& f, const MobiusMap& map,
                              const ConfigPoint& pt) {
    const double det = map.a * map.d - map.b * map.c;
    if (!(det > 0.0)) {
        throw parameter_error("mobius_transform_check: need ad - bc > 0");
    }
    const double theta1 = one_leg_weight(f.kappa());
    const auto x = pt.coords();

    std::vector<double> image(x.size());
    double deriv_product_pow = 1.0;
    double scale = 0.0;
    for (double xi : x) scale = std::max(scale, std::abs(xi));
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double den = map.c * x[i] + map.d;
        if (std::abs(den) < 1e-12 * std::max(1.0, scale * std::abs(map.c))) {
            throw domain_error("mobius_transform_check: image coordinate at infinity");
        }
        image[i] = (map.a * x[i] + map.b) / den;
        deriv_product_pow *= std::pow(det / (den * den), theta1);
    }

    const double original = f.eval_raw(x);
    const double transformed = f.eval_raw(image) * deriv_product_pow;
    const double denom = std::abs(original);
    if (denom == 0.0) return std::abs(transformed);
    return std::abs(transformed - original) / denom;
}

} // namespace nullstate
