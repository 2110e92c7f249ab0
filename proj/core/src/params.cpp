#include "frax/params.hpp"

#include <cmath>
#include <sstream>

#include "frax/errors.hpp"

namespace frax {

void require_order(double s) {
  if (!(s > 0.0 && s < 2.0)) {
    std::ostringstream os;
    os << "extension order s must lie in (0, 2), got " << s;
    throw ParameterError(os.str());
  }
}

void require_dimension(int n) {
  if (n < 1 || n > 3) {
    std::ostringstream os;
    os << "dimension n must be 1, 2 or 3, got " << n;
    throw ParameterError(os.str());
  }
}

void Params::validate() const {
  require_dimension(n);
  require_order(s);
  if (!std::isfinite(beta) || !std::isfinite(gamma) || !std::isfinite(alpha)) {
    throw ParameterError("beta, gamma and alpha must be finite");
  }
}

std::string describe(const Params& prm) {
  std::ostringstream os;
  os << "n=" << prm.n << " s=" << prm.s << " beta=" << prm.beta << " gamma=" << prm.gamma
     << " p=" << prm.p << " q=" << prm.q << " q0=" << prm.q0 << " alpha=" << prm.alpha;
  return os.str();
}

}  // namespace frax
