#pragma once

namespace nullstate {

// SLE speed, restricted to the window (0,8) used throughout.
class SleKappa {
  public:
    explicit SleKappa(double kappa);
    double value() const { return kappa_; }

  private:
    double kappa_;
};

struct KacIndex {
    int r;
    int s;
};

enum class PottsPhase { dense, dilute };

// Central charge c(kappa) = (6-kappa)(3kappa-8)/(2kappa).
double central_charge(SleKappa k);

// One-leg boundary weight theta_1 = (6-kappa)/(2kappa).
double one_leg_weight(SleKappa k);

// s-leg boundary weight theta_s = s(2s+4-kappa)/(2kappa); s=0 is the identity.
double s_leg_weight(int s, SleKappa k);

// Kac weight h_{r,s}, piecewise in kappa:
//   [(kappa r - 4s)^2 - (kappa-4)^2] / (16 kappa)   for kappa > 4,
//   [(kappa s - 4r)^2 - (kappa-4)^2] / (16 kappa)   for kappa <= 4.
double kac_weight(KacIndex idx, SleKappa k);

// Potts/random-cluster state count:
//   dense  (4 <= kappa < 8): Q = 4 cos^2(4 pi / kappa)
//   dilute (0 < kappa <= 4): Q = 4 cos^2(pi kappa / 4)
// Throws domain_error on a phase/kappa mismatch.
double potts_q(SleKappa k, PottsPhase phase);

} // namespace nullstate
