#include "support.hpp"

#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace rslab::testing {

const Lab& lab() {
  static const Lab instance = [] {
    Lab l;
    l.tau = tau_table(100000);
    l.ct = rankin_coeffs(l.tau);
    l.C = estimate_main_constant(l.ct);
    return l;
  }();
  return instance;
}

std::vector<boost::multiprecision::cpp_int> tau_by_q_expansion(std::size_t N) {
  using boost::multiprecision::cpp_int;
  using Poly = std::vector<cpp_int>;
  // coefficients of q^0 .. q^{N-1}
  auto mul = [N](const Poly& a, const Poly& b) {
    Poly c(N, 0);
    for (std::size_t i = 0; i < N; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; i + j < N; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
  };
  Poly e(N, 0);
  e[0] = 1;
  for (std::size_t n = 1; n < N; ++n) {
    // multiply by (1 - q^n)
    for (std::size_t k = N - 1; k >= n; --k) e[k] -= e[k - n];
  }
  const Poly e2 = mul(e, e);
  const Poly e3 = mul(e2, e);
  const Poly e6 = mul(e3, e3);
  const Poly e12 = mul(e6, e6);
  const Poly e24 = mul(e12, e12);
  return {e24.begin(), e24.begin() + static_cast<std::ptrdiff_t>(N)};  // tau(n) = e24[n-1]
}

double voronoi_oracle(double xi, std::size_t N, const CoeffTable& ct, double x) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big pi = boost::math::constants::pi<Big>();
  const Big bx = x;
  const Big phase = Big(0.5) * (Big(0.5) - Big(xi)) * pi;
  const Big expo = -(Big(5) + 2 * Big(xi)) / 8;
  Big sum = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    const Big bn = n;
    sum += Big(ct.c(n)) * pow(bn, expo) * cos(8 * pi * pow(bx * bn, Big(0.25)) + phase);
  }
  const Big pre = pow(2 * pi, -1 - Big(xi)) * pow(bx, (Big(3) - 2 * Big(xi)) / 8);
  return static_cast<double>(pre * sum);
}

double integral_of_delta(const ErrorTermEvaluator& ev, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [&](double u) { return u < 1.0 ? -ev.C() * u : ev.riesz_error(u); };
  double total = 0.0;
  double lo = a;
  while (lo < b) {
    const double hi = std::min(b, std::floor(lo) + 1.0);
    total += gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-14);
    lo = hi;
  }
  return total;
}

double integral_of_delta_sq(const ErrorTermEvaluator& ev, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [&](double u) {
    const double d = ev.riesz_error(u);
    return d * d;
  };
  double total = 0.0;
  double lo = a;
  while (lo < b) {
    const double hi = std::min(b, std::floor(lo) + 1.0);
    total += gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-14);
    lo = hi;
  }
  return total;
}

}  // namespace rslab::testing
