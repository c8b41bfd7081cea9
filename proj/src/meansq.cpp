#include "rslab/meansq.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "rslab/error.hpp"
#include "rslab/numeric.hpp"

namespace rslab {

std::string to_string(QuadratureMethod m) {
  return m == QuadratureMethod::exact_piecewise ? "exact_piecewise" : "gauss_panels";
}

namespace {

void check_range(double lo, double hi, const ErrorTermEvaluator& ev) {
  if (!(lo >= 1.0) || !(hi >= lo)) throw std::invalid_argument("mean square: need 1 <= lo <= hi");
  if (hi > static_cast<double>(ev.coeffs().n_max())) {
    throw InsufficientTable("mean square: upper end " + std::to_string(hi) + " exceeds n_max = " +
                            std::to_string(ev.coeffs().n_max()));
  }
}

// Visits the pieces [u0, u1] of [lo, hi] cut at the integers, with n = floor(u0).
template <class F>
void for_each_unit_piece(double lo, double hi, F&& f) {
  double u0 = lo;
  while (u0 < hi) {
    const double n = std::floor(u0);
    const double u1 = std::min(hi, n + 1.0);
    f(static_cast<std::size_t>(n), u0, u1);
    u0 = u1;
  }
}

template <class G>
MeanSquareResult gauss_integral(double lo, double hi, double xi, G&& value) {
  static const GaussLegendre low(8);
  static const GaussLegendre high(16);
  CompensatedSum<double> i8;
  CompensatedSum<double> i16;
  for_each_unit_piece(lo, hi, [&](std::size_t, double u0, double u1) {
    // Evaluate strictly inside the piece so the step at u1 is never sampled.
    auto sq = [&](double u) {
      const double v = value(u);
      return v * v;
    };
    i8.add(low.integrate(sq, u0, u1));
    i16.add(high.integrate(sq, u0, u1));
  });
  MeanSquareResult r;
  r.X = lo;
  r.X_hi = hi;
  r.xi = xi;
  r.integral = i8.value();
  r.method = QuadratureMethod::gauss_panels;
  r.est_error = std::abs(i8.value() - i16.value());
  return r;
}

}  // namespace

MeanSquareResult integral_delta_sq(double lo, double hi, const ErrorTermEvaluator& ev, QuadratureMethod method) {
  check_range(lo, hi, ev);
  if (method == QuadratureMethod::gauss_panels) {
    return gauss_integral(lo, hi, ev.xi(), [&](double u) { return ev.riesz_error(u); });
  }
  if (ev.xi() != 0.0) throw std::invalid_argument("mean square: exact_piecewise needs xi = 0");
  const CoeffTable& ct = ev.coeffs();
  const long double C = ev.C();
  CompensatedSum<long double> acc;
  for_each_unit_piece(lo, hi, [&](std::size_t n, double u0, double u1) {
    const long double p = ct.prefix_c(n);
    const long double d0 = p - C * u0;
    const long double d1 = p - C * u1;
    acc.add((static_cast<long double>(u1) - u0) * (d0 * d0 + d0 * d1 + d1 * d1) / 3.0L);
  });
  MeanSquareResult r;
  r.X = lo;
  r.X_hi = hi;
  r.xi = 0.0;
  r.integral = static_cast<double>(acc.value());
  r.method = QuadratureMethod::exact_piecewise;
  r.est_error = DBL_EPSILON * r.integral;
  return r;
}

MeanSquareResult mean_square_delta(double X, const ErrorTermEvaluator& ev) {
  return mean_square_delta(X, ev, ev.xi() == 0.0 ? QuadratureMethod::exact_piecewise : QuadratureMethod::gauss_panels);
}

MeanSquareResult mean_square_delta(double X, const ErrorTermEvaluator& ev, QuadratureMethod method) {
  return integral_delta_sq(X, 2.0 * X, ev, method);
}

MeanSquareResult integral_delta1_sq(double lo, double hi, const ErrorTermEvaluator& ev, QuadratureMethod method) {
  check_range(lo, hi, ev);
  if (method == QuadratureMethod::gauss_panels) {
    auto r = gauss_integral(lo, hi, ev.xi(), [&](double u) { return ev.delta1(u); });
    return r;
  }
  const CoeffTable& ct = ev.coeffs();
  const long double C = ev.C();
  CompensatedSum<long double> acc;
  for_each_unit_piece(lo, hi, [&](std::size_t n, double u0, double u1) {
    // Delta_1(mid + w) = alpha + beta w + gamma w^2 on the piece.
    const long double p = ct.prefix_c(n);
    const long double q = ct.prefix_cn(n);
    const long double mid = 0.5L * (static_cast<long double>(u0) + u1);
    const long double h = 0.5L * (static_cast<long double>(u1) - u0);
    const long double alpha = mid * p - q - 0.5L * C * mid * mid;
    const long double beta = p - C * mid;
    const long double gamma = -0.5L * C;
    const long double h3 = h * h * h;
    acc.add(2.0L * h * alpha * alpha + (2.0L * h3 / 3.0L) * (beta * beta + 2.0L * alpha * gamma) +
            (2.0L * h3 * h * h / 5.0L) * gamma * gamma);
  });
  MeanSquareResult r;
  r.X = lo;
  r.X_hi = hi;
  r.xi = ev.xi();
  r.integral = static_cast<double>(acc.value());
  r.method = QuadratureMethod::exact_piecewise;
  r.est_error = DBL_EPSILON * r.integral;
  return r;
}

MeanSquareResult mean_square_delta1(double X, const ErrorTermEvaluator& ev, QuadratureMethod method) {
  return integral_delta1_sq(X, 2.0 * X, ev, method);
}

ExponentFit beta_fit(std::span<const MeanSquareResult> results) {
  if (results.size() < 5) throw std::invalid_argument("beta_fit: need at least 5 dyadic points");
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& r : results) {
    if (r.xi != results.front().xi) throw std::invalid_argument("beta_fit: mixed xi values");
    if (!(r.integral > 0.0)) throw std::invalid_argument("beta_fit: non-positive integral");
    lx.push_back(std::log(r.X));
    ly.push_back(std::log(r.integral));
  }
  const LineFit line = fit_line(lx, ly);
  ExponentFit fit;
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.stderr_slope = line.stderr_slope;
  fit.beta_hat = 0.5 * (line.slope - 1.0);
  fit.points = line.points;
  return fit;
}

std::vector<BoundsRow> bounds_table(std::span<const double> xis, const TheoryConstants& tc) {
  tc.validate();
  std::vector<BoundsRow> rows;
  rows.reserve(xis.size());
  for (double xi : xis) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("bounds_table: xi must lie in [0, 1]");
    BoundsRow r;
    r.xi = xi;
    r.lower_thm2 = (3.0 - 2.0 * xi) / 8.0;
    r.upper_thm2 = std::max((1.0 - xi) / 2.0, r.lower_thm2);
    r.upper_thm3 = (2.0 - 2.0 * xi) / (5.0 - 2.0 * tc.mu_half);
    r.thm3_valid = xi <= (1.0 + 2.0 * tc.mu_half) / 6.0;
    r.pointwise_14 = (3.0 - 2.0 * xi) / 5.0;
    r.thmA = tc.theta / (tc.theta + 1.0);
    rows.push_back(r);
  }
  return rows;
}

ExactBoundsRow bounds_row_exact(Fraction xi, Fraction mu_half, Fraction theta) {
  if (xi < Fraction(0) || xi > Fraction(1)) throw std::invalid_argument("bounds_row_exact: xi must lie in [0, 1]");
  ExactBoundsRow r;
  r.xi = xi;
  r.lower_thm2 = (Fraction(3) - 2 * xi) / 8;
  r.upper_thm2 = std::max((Fraction(1) - xi) / 2, r.lower_thm2);
  r.upper_thm3 = (Fraction(2) - 2 * xi) / (Fraction(5) - 2 * mu_half);
  r.thm3_valid = xi <= (Fraction(1) + 2 * mu_half) / 6;
  r.pointwise_14 = (Fraction(3) - 2 * xi) / 5;
  r.thmA = theta / (theta + 1);
  return r;
}

}  // namespace rslab
