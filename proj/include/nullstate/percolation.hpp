#pragma once

#include <cstdint>

namespace nullstate {

enum class LatticeKind { square_bond, triangular_site };

/**
 * Rectangle of width_cells x height_cells with wired left/right sides and
 * free top/bottom, at bond/site density p_open.
 *
 * For square_bond the vertex grid is (width_cells+1) columns x height_cells
 * rows; this dual-consistent counting makes the left-right crossing
 * probability at p=1/2 satisfy P(W,H) + P(H,W) = 1 exactly, so the W = H
 * square is exactly self-dual.  Continuum aspect ratio R = W/H.
 */
struct LatticeSpec {
    LatticeKind kind = LatticeKind::square_bond;
    int width_cells = 0;
    int height_cells = 0;
    double p_open = 0.5;

    double aspect_ratio() const;
    void validate() const; // throws parameter_error on bad sizes or density
};

struct TrialBatch {
    LatticeSpec spec;
    long n_trials = 0;
    std::uint64_t seed = 0;
    long crossings = 0;
    double p_hat = 0.0;
    double stderr_ = 0.0; // sqrt(p_hat (1-p_hat) / n)
};

/**
 * Samples n_trials independent lattices and counts left-right crossings
 * (union-find with two wired terminals, connectivity queried once per
 * trial).  Identical (spec, n_trials, seed) reproduce identical counts for
 * any thread count; threads = 0 picks a hardware default.
 */
TrialBatch run_batch(const LatticeSpec& spec, long n_trials, std::uint64_t seed,
                     int threads = 0);

/**
 * Continuum left-right crossing probability of a rectangle with aspect
 * ratio R: inverts R = K(1-m)/K(m) for the modulus m by bisection, then
 * evaluates 3 Gamma(2/3)/Gamma(1/3)^2 m^{1/3} 2F1(1/3,2/3;4/3|m).
 */
double cardy_probability(double aspect_ratio);

// The modulus m solving K(1-m)/K(m) = R; exposed for round-trip tests.
double cardy_modulus(double aspect_ratio);

struct CompareReport {
    TrialBatch batch;
    double cardy = 0.0;
    double z_score = 0.0;
    double allowance = 0.0; // max(3 stderr, 2/min(W,H))
    bool pass = false;
};

// Monte Carlo estimate vs the formula at the spec's aspect ratio.
CompareReport compare(const LatticeSpec& spec, long n_trials, std::uint64_t seed,
                      int threads = 0);

} // namespace nullstate
