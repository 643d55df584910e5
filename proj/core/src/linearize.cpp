#include "folia/linearize.hpp"

#include "folia/error.hpp"

namespace folia {

Series1 linearize_1d(const Series1& g) {
  if (g[0].is_zero()) fail(ErrorCode::ZeroLinearCoefficient, "normal_forms", "g(0) must be nonzero");
  const int n = g.order() + 1;
  Series1 phi(n);
  phi.set(1, Coefficient(1));
  for (int m = 2; m <= n; ++m) {
    Coefficient acc;
    for (int k = 1; k < m; ++k) {
      if (!g[k].is_zero() && !phi[m - k].is_zero()) acc += Coefficient(m - k) * phi[m - k] * g[k];
    }
    phi.set(m, -acc / (Coefficient(m - 1) * g[0]));
  }
  return phi;
}

}  // namespace folia
