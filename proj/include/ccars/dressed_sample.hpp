#pragma once

namespace ccars {

/// One time sample of the dressed-state analysis of the two-level system.
struct DressedSample {
  double t;
  double theta;      ///< mixing angle of T(t)
  double theta_dot;  ///< non-adiabatic parameter
  double lambda1;    ///< lower dressed energy
  double lambda2;    ///< upper dressed energy
  double e1;         ///< bare energy H_se(1,1)
  double e2;         ///< bare energy H_se(2,2)
};

}  // namespace ccars
