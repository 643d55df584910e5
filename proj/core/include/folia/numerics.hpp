#pragma once

#include <complex>
#include <string>
#include <vector>

#include "folia/vfield.hpp"

namespace folia {

using Complex = std::complex<double>;

/// Floating-point copy of an exact field: the only exact-to-float frontier.
class NumericField {
 public:
  struct Term {
    int i, j;
    Complex c;
  };

  static NumericField from_exact(const PlanarVectorField& X);

  Complex fx(Complex x, Complex y) const;
  Complex fy(Complex x, Complex y) const;
  /// fy(x, Y + d) / fx(x, Y + d) as a series in d up to degree n.
  std::vector<Complex> slope_jet(Complex x, Complex Y, int n) const;
  /// fy(x, 0) == 0 for all x.
  bool x_axis_invariant() const;

  const std::vector<Term>& fx_terms() const { return fx_; }
  const std::vector<Term>& fy_terms() const { return fy_; }

 private:
  std::vector<Term> fx_, fy_;
};

/// A path in the x-line: a circle around `center` (counterclockwise unless
/// reversed) or a segment from x0 to x1. The transversal is {x = start()}.
struct PathSpec {
  enum class Kind { Circle, Segment };
  Kind kind = Kind::Circle;
  Complex center{0, 0};
  double radius = 1;
  bool counterclockwise = true;
  Complex x0{0, 0}, x1{1, 0};

  double tolerance = 1e-10;
  /// |fx| below this along the lift raises SingularEncounter.
  double singular_threshold = 1e-12;
  double min_step = 1e-14;

  static PathSpec circle(double radius, Complex center = {0, 0});
  static PathSpec segment(Complex x0, Complex x1);
  PathSpec reversed() const;

  Complex point(double s) const;
  Complex velocity(double s) const;
  Complex start() const { return point(0); }
};

/// Endpoint y of the lift of the path to the leaf through (start, y0),
/// integrating dy/dx = fy/fx along the path.
Complex integrate_leaf(const NumericField& X, const PathSpec& path, Complex y0);
Complex integrate_leaf(const PlanarVectorField& X, const PathSpec& path, Complex y0);

/// Jet y -> sum_{n=1..j} coeffs[n] y^n of the transport map at y = 0
/// (coeffs[0] = 0). error[n] compares runs at tolerance and tolerance/32.
struct HolonomyJet {
  int jet_order = 0;
  std::vector<Complex> coeffs;
  std::vector<double> error;

  Complex multiplier() const { return coeffs.at(1); }
};

/// Variational-equation jet along {y = 0}, which must be invariant.
HolonomyJet holonomy_jet(const PlanarVectorField& X, const PathSpec& path, int jet_order);
/// Cross-check: Cauchy sums of integrate_leaf over a circle |y0| = rho.
HolonomyJet holonomy_jet_sampled(const PlanarVectorField& X, const PathSpec& path, int jet_order,
                                 double rho = 0.05, int samples = 32);

/// Jets indexed by degree with zero constant term; the result has the
/// smaller of the two orders.
std::vector<Complex> compose_jets(const std::vector<Complex>& outer, const std::vector<Complex>& inner);
std::vector<Complex> invert_jet(const std::vector<Complex>& jet);

/// h with h(phi(y)) = multiplier * h(y) to order j, h(y) = y + O(y^2).
struct KoenigsVerdict {
  std::vector<Complex> linearizer;
  double residual = 0;
  int order = 0;
  std::string verdict;  ///< "Linearizable-to-order-j"
};
KoenigsVerdict koenigs_check(const std::vector<Complex>& phi);

}  // namespace folia
