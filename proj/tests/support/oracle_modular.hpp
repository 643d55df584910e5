#pragma once

// Independent high-precision reference for the modular derivative: Spouge's
// Gamma approximation at 100 digits with the reflection formula, and terms
// summed in the opposite order.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <map>

#include "folia/coefficient.hpp"

namespace oracle {

using C100 = boost::multiprecision::cpp_complex_100;
using R100 = boost::multiprecision::cpp_bin_float_100;

inline R100 to_r100(const folia::Rational& r) {
  return R100(r.get_num().get_str()) / R100(r.get_den().get_str());
}
inline C100 to_c100(const folia::Coefficient& c) { return {to_r100(c.re()), to_r100(c.im())}; }

inline C100 spouge_gamma(C100 z) {
  const R100 pi = boost::math::constants::pi<R100>();
  if (z.real() < R100(0.5)) return C100(pi) / (sin(C100(pi) * z) * spouge_gamma(C100(R100(1)) - z));
  const int a = 70;
  z -= R100(1);
  C100 sum = sqrt(C100(2 * pi));
  R100 fact = 1;
  for (int k = 1; k < a; ++k) {
    if (k > 1) fact *= R100(k - 1);
    const R100 ck = ((k % 2) ? R100(1) : R100(-1)) / fact * pow(R100(a - k), R100(k) - R100(0.5)) * exp(R100(a - k));
    sum += C100(ck) / (z + R100(k));
  }
  const C100 base = z + R100(a);
  return exp((z + R100(0.5)) * log(base) - base) * sum;
}

struct ElizarovReference {
  std::map<int, C100> dphi;
  C100 dt;
};

inline bool gamma_pole(const C100& z) {
  return z.imag() == 0 && z.real() <= 0 && z.real() == floor(z.real());
}

inline ElizarovReference elizarov_reference(const folia::Coefficient& mu_c,
                                            const std::map<std::pair<int, int>, folia::Coefficient>& f) {
  const R100 pi = boost::math::constants::pi<R100>();
  const C100 mu = to_c100(mu_c), i(R100(0), R100(1));
  ElizarovReference r;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    const auto [m, n] = it->first;
    const C100 c = to_c100(it->second);
    if (gamma_pole(R100(1 + m) + mu * R100(n == -1 ? -1 : n))) continue;
    if (n >= 1) {
      const C100 nn(static_cast<long>(n));
      const C100 term = pow(nn, mu * nn - R100(1)) * exp(R100(-2) * pi * i * nn * mu) * R100(m) /
                        spouge_gamma(R100(1 + m) + mu * nn) * c * R100(folia::pow(folia::Coefficient(-n), m).re().get_num().get_str());
      r.dphi[n] += term;
    } else if (n == -1) {
      const C100 term = pow(C100(R100(-1)), -mu) * exp(R100(2) * pi * i * mu) * R100(m) /
                        spouge_gamma(R100(1 + m) - mu) * c;
      r.dt += term;
    }
  }
  return r;
}

}  // namespace oracle
