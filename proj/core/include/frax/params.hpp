#pragma once

#include <string>

namespace frax {

/// Analytic parameter bundle shared by every module.
///
/// `n` is the spatial dimension, `s` the extension order, `beta` the
/// derivative order, `gamma` the auxiliary order of (-Delta)^{gamma/2},
/// `p`, `q`, `q0` integrability exponents and `alpha` the weight exponent of
/// sigma = t^alpha. Each operation checks its own admissibility window.
struct Params {
  int n = 1;
  double s = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double p = 2.0;
  double q = 2.0;
  double q0 = 2.0;
  double alpha = 0.0;

  // Throws ParameterError unless 1 <= n <= 3 and 0 < s < 2.
  void validate() const;
};

void require_order(double s);
void require_dimension(int n);

std::string describe(const Params& prm);

}  // namespace frax
