#include "folia/numerics.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

#include "folia/error.hpp"

namespace folia {

namespace {

const char* kModule = "numerics";

using State = std::vector<Complex>;

Complex eval(const std::vector<NumericField::Term>& terms, Complex x, Complex y) {
  Complex r = 0;
  for (const auto& t : terms) r += t.c * std::pow(x, t.i) * std::pow(y, t.j);
  return r;
}

/// p(x, Y + d) as a polynomial in d truncated at degree n.
std::vector<Complex> shifted(const std::vector<NumericField::Term>& terms, Complex x, Complex Y, int n) {
  std::vector<Complex> r(static_cast<std::size_t>(n) + 1);
  for (const auto& t : terms) {
    const Complex base = t.c * std::pow(x, t.i);
    double binom = 1;
    for (int m = 0; m <= std::min(t.j, n); ++m) {
      r[static_cast<std::size_t>(m)] += base * binom * std::pow(Y, t.j - m);
      binom = binom * (t.j - m) / (m + 1);
    }
  }
  return r;
}

std::vector<Complex> mul_jets(const std::vector<Complex>& a, const std::vector<Complex>& b, std::size_t n) {
  std::vector<Complex> r(n + 1);
  for (std::size_t i = 0; i < a.size() && i <= n; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) r[i + j] += a[i] * b[j];
  return r;
}

/// Dense state [Y, a_1..a_j]: base value and transport jet coefficients.
struct JetSystem {
  const NumericField& field;
  const PathSpec& path;
  int j;

  void operator()(const State& s, State& ds, double t) const {
    const Complex x = path.point(t), dx = path.velocity(t);
    if (std::abs(field.fx(x, s[0])) < path.singular_threshold)
      fail(ErrorCode::SingularEncounter, kModule, "dx-component vanishes along the lift");
    const std::vector<Complex> F = field.slope_jet(x, s[0], j);
    ds.assign(s.size(), 0);
    ds[0] = F[0] * dx;
    // d' = sum_m F_m d^m with d = sum_n a_n e^n
    const std::size_t n = static_cast<std::size_t>(j);
    std::vector<Complex> d(s.begin(), s.end());
    d[0] = 0;
    std::vector<Complex> power(n + 1);
    power[0] = 1;
    for (int m = 1; m <= j; ++m) {
      power = mul_jets(power, d, n);
      for (std::size_t k = 1; k <= n; ++k) ds[k] += F[static_cast<std::size_t>(m)] * power[k] * dx;
    }
  }
};

State run(const NumericField& field, const PathSpec& path, State s, int j, double tol) {
  namespace ode = boost::numeric::odeint;
  using Stepper = ode::runge_kutta_dopri5<State, double, State, double>;
  auto stepper = ode::make_controlled(tol, tol, Stepper());
  JetSystem sys{field, path, j};
  double t = 0, dt = 1e-3;
  while (t < 1) {
    dt = std::min(dt, 1 - t);
    if (stepper.try_step(sys, s, t, dt) == ode::fail) {
      if (dt < path.min_step) fail(ErrorCode::StepUnderflow, kModule, "step size underflow");
    }
  }
  return s;
}

}  // namespace

NumericField NumericField::from_exact(const PlanarVectorField& X) {
  NumericField r;
  X.fx().for_each_nonzero([&](int i, int j, const Coefficient& c) { r.fx_.push_back({i, j, c.to_complex()}); });
  X.fy().for_each_nonzero([&](int i, int j, const Coefficient& c) { r.fy_.push_back({i, j, c.to_complex()}); });
  return r;
}

Complex NumericField::fx(Complex x, Complex y) const { return eval(fx_, x, y); }
Complex NumericField::fy(Complex x, Complex y) const { return eval(fy_, x, y); }

std::vector<Complex> NumericField::slope_jet(Complex x, Complex Y, int n) const {
  const std::vector<Complex> p = shifted(fy_, x, Y, n), q = shifted(fx_, x, Y, n);
  std::vector<Complex> r(static_cast<std::size_t>(n) + 1);
  for (std::size_t k = 0; k < r.size(); ++k) {
    Complex acc = p[k];
    for (std::size_t i = 1; i <= k; ++i) acc -= q[i] * r[k - i];
    r[k] = acc / q[0];
  }
  return r;
}

bool NumericField::x_axis_invariant() const {
  return std::all_of(fy_.begin(), fy_.end(), [](const Term& t) { return t.j > 0 || t.c == Complex(0); });
}

PathSpec PathSpec::circle(double radius, Complex center) {
  PathSpec p;
  p.kind = Kind::Circle;
  p.radius = radius;
  p.center = center;
  return p;
}

PathSpec PathSpec::segment(Complex x0, Complex x1) {
  PathSpec p;
  p.kind = Kind::Segment;
  p.x0 = x0;
  p.x1 = x1;
  return p;
}

PathSpec PathSpec::reversed() const {
  PathSpec p = *this;
  if (kind == Kind::Circle)
    p.counterclockwise = !counterclockwise;
  else
    std::swap(p.x0, p.x1);
  return p;
}

Complex PathSpec::point(double s) const {
  if (kind == Kind::Segment) return x0 + s * (x1 - x0);
  const double th = 2 * std::numbers::pi * (counterclockwise ? s : -s);
  return center + radius * std::polar(1.0, th);
}

Complex PathSpec::velocity(double s) const {
  if (kind == Kind::Segment) return x1 - x0;
  const double w = 2 * std::numbers::pi * (counterclockwise ? 1 : -1);
  return Complex(0, w) * (point(s) - center);
}

Complex integrate_leaf(const NumericField& X, const PathSpec& path, Complex y0) {
  return run(X, path, State{y0}, 0, path.tolerance)[0];
}

Complex integrate_leaf(const PlanarVectorField& X, const PathSpec& path, Complex y0) {
  return integrate_leaf(NumericField::from_exact(X), path, y0);
}

HolonomyJet holonomy_jet(const PlanarVectorField& X, const PathSpec& path, int jet_order) {
  if (jet_order < 1) fail(ErrorCode::ConstraintViolated, kModule, "jet order must be >= 1");
  const NumericField field = NumericField::from_exact(X);
  if (!field.x_axis_invariant()) fail(ErrorCode::AxisNotInvariant, kModule, "{y = 0} is not invariant");
  State s0(static_cast<std::size_t>(jet_order) + 1);
  s0[1] = 1;
  const State coarse = run(field, path, s0, jet_order, path.tolerance);
  const State fine = run(field, path, s0, jet_order, path.tolerance / 32);
  HolonomyJet h;
  h.jet_order = jet_order;
  h.coeffs = fine;
  h.coeffs[0] = 0;
  h.error.resize(fine.size());
  for (std::size_t n = 1; n < fine.size(); ++n) h.error[n] = std::abs(fine[n] - coarse[n]);
  return h;
}

HolonomyJet holonomy_jet_sampled(const PlanarVectorField& X, const PathSpec& path, int jet_order, double rho,
                                 int samples) {
  const NumericField field = NumericField::from_exact(X);
  auto cauchy = [&](double tol) {
    PathSpec p = path;
    p.tolerance = tol;
    std::vector<Complex> values(static_cast<std::size_t>(samples));
    for (int m = 0; m < samples; ++m)
      values[static_cast<std::size_t>(m)] =
          integrate_leaf(field, p, std::polar(rho, 2 * std::numbers::pi * m / samples));
    std::vector<Complex> c(static_cast<std::size_t>(jet_order) + 1);
    for (int n = 1; n <= jet_order; ++n) {
      Complex acc = 0;
      for (int m = 0; m < samples; ++m)
        acc += values[static_cast<std::size_t>(m)] * std::polar(1.0, -2 * std::numbers::pi * m * n / samples);
      c[static_cast<std::size_t>(n)] = acc / (static_cast<double>(samples) * std::pow(rho, n));
    }
    return c;
  };
  const std::vector<Complex> coarse = cauchy(path.tolerance), fine = cauchy(path.tolerance / 32);
  HolonomyJet h;
  h.jet_order = jet_order;
  h.coeffs = fine;
  h.error.resize(fine.size());
  for (std::size_t n = 1; n < fine.size(); ++n) h.error[n] = std::abs(fine[n] - coarse[n]);
  return h;
}

std::vector<Complex> compose_jets(const std::vector<Complex>& outer, const std::vector<Complex>& inner) {
  const std::size_t n = std::min(outer.size(), inner.size()) - 1;
  std::vector<Complex> r(n + 1), power(n + 1);
  power[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    power = mul_jets(power, inner, n);
    for (std::size_t k = 0; k <= n; ++k) r[k] += outer[m] * power[k];
  }
  return r;
}

std::vector<Complex> invert_jet(const std::vector<Complex>& jet) {
  const std::size_t n = jet.size() - 1;
  if (n < 1 || jet[1] == Complex(0)) fail(ErrorCode::SingularLinearPart, kModule, "jet is not invertible");
  std::vector<Complex> g(n + 1);
  g[1] = 1.0 / jet[1];
  // fix the degree-k coefficient of jet o g one degree at a time
  for (std::size_t k = 2; k <= n; ++k) {
    const std::vector<Complex> c = compose_jets(jet, std::vector<Complex>(g.begin(), g.begin() + static_cast<long>(k) + 1));
    g[k] = -c[k] / jet[1];
  }
  return g;
}

KoenigsVerdict koenigs_check(const std::vector<Complex>& phi) {
  const int j = static_cast<int>(phi.size()) - 1;
  const Complex lambda = phi.at(1);
  const double mod = std::abs(lambda);
  if (mod == 0 || std::abs(mod - 1) < 1e-12)
    fail(ErrorCode::NonHyperbolic, kModule, "multiplier modulus is 0 or 1");
  const std::size_t n = static_cast<std::size_t>(j);
  // powers[m] = phi^m
  std::vector<std::vector<Complex>> powers(n + 1);
  powers[0].assign(n + 1, 0);
  powers[0][0] = 1;
  for (std::size_t m = 1; m <= n; ++m) powers[m] = mul_jets(powers[m - 1], phi, n);
  std::vector<Complex> h(n + 1);
  h[1] = 1;
  for (std::size_t k = 2; k <= n; ++k) {
    Complex acc = 0;
    for (std::size_t m = 1; m < k; ++m) acc += h[m] * powers[m][k];
    h[k] = acc / (lambda - std::pow(lambda, static_cast<double>(k)));
  }
  KoenigsVerdict v;
  v.linearizer = h;
  v.order = j;
  const std::vector<Complex> lhs = compose_jets(h, phi);
  for (std::size_t k = 1; k <= n; ++k) v.residual = std::max(v.residual, std::abs(lhs[k] - lambda * h[k]));
  v.verdict = "Linearizable-to-order-" + std::to_string(j);
  return v;
}

}  // namespace folia
