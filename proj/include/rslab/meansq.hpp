#pragma once

// Mean squares of Delta(x; xi) and Delta_1(x), growth-exponent fits, and the
// table of theoretical exponent bounds.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "rslab/sums.hpp"
#include "rslab/zfun.hpp"

namespace rslab {

enum class QuadratureMethod { exact_piecewise, gauss_panels };

std::string to_string(QuadratureMethod m);

struct MeanSquareResult {
  double X = 0.0;   // left endpoint
  double X_hi = 0.0;
  double xi = 0.0;
  double integral = 0.0;
  QuadratureMethod method = QuadratureMethod::exact_piecewise;
  double est_error = 0.0;
};

/// int_{lo}^{hi} Delta^2(x; xi) dx. exact_piecewise is only available for
/// xi = 0, where Delta is linear on each [n, n+1). gauss_panels applies order-8
/// Gauss-Legendre on every unit interval and reports |I_8 - I_16| as est_error.
MeanSquareResult integral_delta_sq(double lo, double hi, const ErrorTermEvaluator& ev, QuadratureMethod method);

/// Dyadic block [X, 2X]; exact for xi = 0, Gauss panels otherwise.
MeanSquareResult mean_square_delta(double X, const ErrorTermEvaluator& ev);
MeanSquareResult mean_square_delta(double X, const ErrorTermEvaluator& ev, QuadratureMethod method);

/// int_{lo}^{hi} Delta_1^2(x) dx; Delta_1 is quadratic on unit intervals, so
/// exact_piecewise integrates the quartic in closed form.
MeanSquareResult integral_delta1_sq(double lo, double hi, const ErrorTermEvaluator& ev, QuadratureMethod method);

MeanSquareResult mean_square_delta1(double X, const ErrorTermEvaluator& ev,
                                    QuadratureMethod method = QuadratureMethod::exact_piecewise);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double beta_hat = 0.0;  // (slope - 1) / 2
  std::size_t points = 0;
};

/// OLS of log(integral) on log(X). Needs >= 5 results sharing one xi.
ExponentFit beta_fit(std::span<const MeanSquareResult> results);

struct BoundsRow {
  double xi = 0.0;
  double lower_thm2 = 0.0;    // (3 - 2 xi) / 8
  double upper_thm2 = 0.0;    // max((1 - xi)/2, (3 - 2 xi)/8)
  double upper_thm3 = 0.0;    // (2 - 2 xi) / (5 - 2 mu(1/2))
  bool thm3_valid = false;    // xi <= (1 + 2 mu(1/2)) / 6
  double pointwise_14 = 0.0;  // (3 - 2 xi) / 5
  double thmA = 0.0;          // theta / (theta + 1)
};

std::vector<BoundsRow> bounds_table(std::span<const double> xis, const TheoryConstants& tc = {});

using Fraction = boost::rational<std::int64_t>;

struct ExactBoundsRow {
  Fraction xi;
  Fraction lower_thm2;
  Fraction upper_thm2;
  Fraction upper_thm3;
  bool thm3_valid = false;
  Fraction pointwise_14;
  Fraction thmA;
};

/// Same arithmetic in exact rationals.
ExactBoundsRow bounds_row_exact(Fraction xi, Fraction mu_half = Fraction(32, 205), Fraction theta = Fraction(3, 2));

}  // namespace rslab
