#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nullstate/params.hpp"

namespace nullstate {

/**
 * Strictly ordered coordinate tuple x_1 < ... < x_{2N}, the common domain of
 * all solution handles.  Construction validates ordering and parity.
 */
class ConfigPoint {
  public:
    explicit ConfigPoint(std::vector<double> coords);

    std::span<const double> coords() const { return coords_; }
    std::size_t size() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    double min_gap() const;

  private:
    std::vector<double> coords_;
};

struct SolutionClaims {
    bool satisfies_null_state = false;
    bool satisfies_ward = false;
    std::optional<std::vector<double>> known_dual;
};

/**
 * An evaluable function on the ordered chamber, carrying N and kappa plus
 * analytic metadata.  Immutable after construction; evaluation is reentrant.
 *
 * Evaluators are written in permutation-covariant form (absolute coordinate
 * differences, label-invariant cross-ratios), so eval_raw extends each
 * closed form across chamber boundaries the way the covariant continuation
 * demands.  This is what the Moebius covariance check relies on when a map
 * wraps coordinates around infinity.
 */
class SolutionHandle {
  public:
    using Evaluator = std::function<double(std::span<const double>)>;

    SolutionHandle(int n_pairs, SleKappa kappa, Evaluator eval, std::string label,
                   SolutionClaims claims = {});

    // Evaluation on the ordered chamber; checks arity.
    double operator()(const ConfigPoint& pt) const;

    // Evaluation at an arbitrary coordinate tuple of the right arity (no
    // ordering requirement).  Used by stencils, collapse ladders and the
    // covariant extension.
    double eval_raw(std::span<const double> coords) const;

    int n_pairs() const { return n_pairs_; }
    SleKappa kappa() const { return kappa_; }
    const std::string& label() const { return label_; }
    const SolutionClaims& claims() const { return claims_; }

  private:
    int n_pairs_;
    SleKappa kappa_;
    Evaluator eval_;
    std::string label_;
    SolutionClaims claims_;
};

// Cross-ratio lambda = (x2-x1)(x4-x3) / [(x3-x1)(x4-x2)], in (0,1) on the
// ordered chamber.
class CrossRatio {
  public:
    explicit CrossRatio(double lambda);
    static CrossRatio from_point(const ConfigPoint& pt); // requires N=2
    double value() const { return lambda_; }

  private:
    double lambda_;
};

// N=1 solution F(x1,x2) = C (x2-x1)^{1-6/kappa}.
SolutionHandle s1_solution(SleKappa k, double scale);

// Hypergeometric blocks G1(lambda) and G2(lambda) := G1(1-lambda), where
// G1(l) = l^{2/k} (1-l)^{1-6/k} 2F1(4/k, 1-4/k; 8/k | l).
std::pair<double, double> g_functions(SleKappa k, CrossRatio lam);

// N=2 solution F = [(x4-x2)(x3-x1)]^{1-6/kappa} [C1 G1(lambda) + C2 G2(lambda)].
SolutionHandle s2_solution(SleKappa k, double c1, double c2);

// prod_{i<j} (x_j-x_i)^{2/kappa}: solves the null-state system but only the
// first Ward identity.
SolutionHandle counterexample_solution(SleKappa k, int n_pairs);

// Constant handle (solves the full system iff kappa = 6) and the zero handle.
SolutionHandle constant_solution(SleKappa k, int n_pairs, double value);
SolutionHandle zero_solution(SleKappa k, int n_pairs);

// x -> (a x + b)/(c x + d) with ad - bc > 0 (upper half-plane automorphism).
struct MobiusMap {
    double a, b, c, d;
};

/**
 * Relative violation of the covariance law
 *   F(x') prod_i f'(x_i)^{theta_1} = F(x)
 * under the Moebius image x' of pt.  Zero for an exactly covariant handle.
 * Throws domain_error if the image has a coordinate at infinity.
 */
double mobius_transform_check(const SolutionHandle& f, const MobiusMap& map,
                              const ConfigPoint& pt);

} // namespace nullstate
