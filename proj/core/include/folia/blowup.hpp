#pragma once

#include <optional>
#include <vector>

#include "folia/classify.hpp"
#include "folia/vfield.hpp"

namespace folia {

enum class BlowupChartKind {
  TChart,  ///< y = t x, coordinates (x, t), divisor {x = 0}
  SChart,  ///< x = s y, coordinates (s, y), divisor {y = 0}
};
std::string to_string(BlowupChartKind c);

struct BlowupChart {
  BlowupChartKind chart = BlowupChartKind::TChart;
  PlanarVectorField field;
  Axis exceptional_divisor = Axis::YAxis;
  int rescale_power = 0;  ///< power of the divisor equation divided out
  /// The transformed field vanishes along the whole divisor.
  bool dicritical = false;
};

/// Quadratic blow-up of a singular field in one chart. The transformed field
/// loses rescale_power + 1 orders of truncation.
BlowupChart blow_up(const PlanarVectorField& X, BlowupChartKind chart);

struct CascadePoint {
  int step = 0;  ///< blow-up after which the point is read off
  BlowupChartKind chart = BlowupChartKind::TChart;
  EigenData eigen;
  SingularityClass cls;
  std::optional<Coefficient> mu;  ///< formal invariant, saddle-nodes only
};

struct CascadeReport {
  std::vector<BlowupChart> steps;
  /// The -1 saddles at the successive corners, then the final saddle-node.
  std::vector<CascadePoint> singular_points;
};

/// n successive blow-ups of the saddle-node of an x^2 dx + (y + x f(y)) dy
/// field with f(0) = 0, each one centered at the saddle-node left by the
/// previous step.
CascadeReport cascade(const PlanarVectorField& X, int n);

}  // namespace folia
