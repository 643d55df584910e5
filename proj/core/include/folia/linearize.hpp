#pragma once

#include "folia/series.hpp"

namespace folia {

/// Tangent-to-identity phi with phi' * y g(y) = g(0) * phi, i.e. phi pushes
/// y g(y) dy forward to g(0) y dy. For g of order M the result is exact to
/// order M + 1.
Series1 linearize_1d(const Series1& g);

}  // namespace folia
