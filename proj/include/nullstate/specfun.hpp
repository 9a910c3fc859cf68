#pragma once

namespace nullstate {

struct HyperParams {
    double a;
    double b;
    double c;
    double z;
};

/**
 * Gauss hypergeometric function 2F1(a,b;c|z) for real parameters and z < 1.
 *
 * The series is summed directly for z in [0,1/2] (or whenever it terminates),
 * mapped by the Pfaff transformation for z < 0, and by the 1-z connection
 * formula for z in [1/2,1).  When c-a-b is an integer the logarithmic form of
 * the connection formula is used, so the kappa = 8/r family evaluates to full
 * precision.
 *
 * Throws parameter_error if c is a nonpositive integer, domain_error if
 * z >= 1, convergence_error if the series fails to converge in 10000 terms.
 */
double gauss_2f1(double a, double b, double c, double z);
double gauss_2f1(const HyperParams& p);

/**
 * Complete elliptic integral of the first kind, parameter convention:
 *
 *   K(m) = \int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta),   0 < m < 1.
 *
 * Computed by the arithmetic-geometric mean: K(m) = pi / (2 agm(1, sqrt(1-m))).
 * Throws domain_error for m outside (0,1).
 */
double elliptic_k(double m);

// Digamma function for real x (poles at nonpositive integers). Used by the
// logarithmic hypergeometric branch; exposed for testing.
double digamma(double x);

} // namespace nullstate
