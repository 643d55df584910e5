#include "folia/blowup.hpp"

#include <algorithm>

#include "folia/error.hpp"
#include "folia/named_forms.hpp"
#include "folia/normal_forms.hpp"

namespace folia {

namespace {

constexpr const char* kModule = "blowup";

/// f(x, t x) (TChart) or f(s y, y) (SChart), kept to total degree `order`.
Series2 substitute(const Series2& f, BlowupChartKind chart, int order) {
  Series2 r(order);
  f.for_each_nonzero([&](int i, int j, const Coefficient& c) {
    // TChart: x^i (t x)^j = x^{i+j} t^j; SChart: (s y)^i y^j = s^i y^{i+j}
    const int a = chart == BlowupChartKind::TChart ? i + j : i;
    const int b = chart == BlowupChartKind::TChart ? j : i + j;
    if (a + b <= order) r.add_to(a, b, c);
  });
  return r;
}

int valuation_or(const Series2& s, Var v, int fallback) {
  const auto val = s.valuation_in(v);
  return val ? *val : fallback;
}

}  // namespace

std::string to_string(BlowupChartKind c) { return c == BlowupChartKind::TChart ? "TChart" : "SChart"; }

BlowupChart blow_up(const PlanarVectorField& X, BlowupChartKind chart) {
  if (!X.singular_at_origin()) fail(ErrorCode::NonSingularInput, kModule, "field is regular at the origin");
  const int N = X.order();
  const bool tchart = chart == BlowupChartKind::TChart;
  const Var e = tchart ? Var::X : Var::Y;  // divisor variable
  // Work at order 2N so every substituted term is kept, then truncate.
  const int wide = 2 * N + 2;
  const Series2 P = substitute(X.fx(), chart, wide), Q = substitute(X.fy(), chart, wide);
  const Series2 t = tchart ? Series2::y(wide) : Series2::x(wide);
  // along the divisor variable: e' = (dot e); along the other: (dot w - w dot e) / e
  const Series2 dot_e = tchart ? P : Q;
  const Series2 numer = tchart ? Q - t * P : P - t * Q;
  const Series2 dot_w = tchart ? numer.divided_by_monomial(1, 0).extended(wide) : numer.divided_by_monomial(0, 1).extended(wide);

  const int r = std::max(0, std::min(valuation_or(dot_e, e, wide) - 1, valuation_or(dot_w, e, wide)));
  const int out = N - r - 1;
  if (out < 1) fail(ErrorCode::TruncationTooShallow, kModule, "order " + std::to_string(N) + " too low to blow up");
  auto lower = [&](const Series2& s) {
    const Series2 d = tchart ? s.divided_by_monomial(r, 0) : s.divided_by_monomial(0, r);
    return d.truncated(out);
  };
  BlowupChart res;
  res.chart = chart;
  res.rescale_power = r;
  res.exceptional_divisor = tchart ? Axis::YAxis : Axis::XAxis;
  res.field = tchart ? PlanarVectorField(lower(dot_e), lower(dot_w)) : PlanarVectorField(lower(dot_w), lower(dot_e));
  const Series2& along = tchart ? res.field.fy() : res.field.fx();
  res.dicritical = along.restrict_to_axis(tchart ? Var::Y : Var::X).is_zero();
  return res;
}

CascadeReport cascade(const PlanarVectorField& X, int n) {
  const auto form = recognize(X);
  const bool ok = form && (form->kind == NamedKind::Ecalle2 ||
                           (form->kind == NamedKind::FormalModel && form->k == 1));
  if (!ok) fail(ErrorCode::NotEcalle2, kModule, "input is not of the form x^2 dx + (y + x f(y)) dy with f(0) = 0");

  CascadeReport report;
  PlanarVectorField current = X;
  for (int step = 1; step <= n; ++step) {
    const BlowupChart corner = blow_up(current, BlowupChartKind::SChart);
    const SingularityClass sc = classify(corner.field);
    report.singular_points.push_back({step, BlowupChartKind::SChart, sc.eigen, sc, std::nullopt});
    BlowupChart next = blow_up(current, BlowupChartKind::TChart);
    current = next.field;
    report.steps.push_back(corner);
    report.steps.push_back(std::move(next));
  }
  const SingularityClass sn = classify(current);
  CascadePoint last{n, BlowupChartKind::TChart, sn.eigen, sn, std::nullopt};
  if (sn.kind == ClassKind::SaddleNode) last.mu = dulac_prenormalize(current, 0).mu;
  report.singular_points.push_back(std::move(last));
  return report;
}

}  // namespace folia
