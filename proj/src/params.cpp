#include "nullstate/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nullstate/errors.hpp"

namespace nullstate {

SleKappa::SleKappa(double kappa) : kappa_(kappa) {
    if (!(kappa > 0.0 && kappa < 8.0)) {
        throw parameter_error("SleKappa: kappa must lie in (0,8), got " + std::to_string(kappa));
    }
}

double central_charge(SleKappa k) {
    const double kappa = k.value();
    return (6.0 - kappa) * (3.0 * kappa - 8.0) / (2.0 * kappa);
}

double one_leg_weight(SleKappa k) {
    const double kappa = k.value();
    return (6.0 - kappa) / (2.0 * kappa);
}

double s_leg_weight(int s, SleKappa k) {
    if (s < 0) throw parameter_error("s_leg_weight: s must be nonnegative, got " + std::to_string(s));
    const double kappa = k.value();
    return s * (2.0 * s + 4.0 - kappa) / (2.0 * kappa);
}

double kac_weight(KacIndex idx, SleKappa k) {
    if (idx.r < 1 || idx.s < 1) {
        throw parameter_error("kac_weight: indices must be positive integers, got r=" +
                              std::to_string(idx.r) + " s=" + std::to_string(idx.s));
    }
    const double kappa = k.value();
    const double cross = (kappa > 4.0) ? (kappa * idx.r - 4.0 * idx.s)
                                       : (kappa * idx.s - 4.0 * idx.r);
    return (cross * cross - (kappa - 4.0) * (kappa - 4.0)) / (16.0 * kappa);
}

double potts_q(SleKappa k, PottsPhase phase) {
    const double kappa = k.value();
    if (phase == PottsPhase::dense) {
        if (!(kappa >= 4.0)) {
            throw domain_error("potts_q: dense phase requires 4 <= kappa < 8, got " +
                               std::to_string(kappa));
        }
        const double c = std::cos(4.0 * std::numbers::pi / kappa);
        return 4.0 * c * c;
    }
    if (!(kappa <= 4.0)) {
        throw domain_error("potts_q: dilute phase requires 0 < kappa <= 4, got " +
                           std::to_string(kappa));
    }
    const double c = std::cos(std::numbers::pi * kappa / 4.0);
    return 4.0 * c * c;
}

} // namespace nullstate
