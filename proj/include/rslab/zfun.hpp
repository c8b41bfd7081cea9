#pragma once

// zeta(s), the Rankin-Selberg zeta-function Z(s) continued to Re s > 3/5,
// B(s) = Z(s) / zeta(s), the functional-equation factor X(s), and the mean
// square of Z on the line Re s = 1.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rslab/coeffs.hpp"
#include "rslab/numeric.hpp"
#include "rslab/sums.hpp"

namespace rslab {

/// Parameters of the mean-square theory; defaults are the published values.
struct TheoryConstants {
  double mu_half = 32.0 / 205.0;  // Lindelof function at 1/2
  double theta = 1.5;             // mean-square exponent of B on the critical line
  int kappa = 12;

  /// Throws std::invalid_argument outside 0 <= mu_half <= 1/4, 1 <= theta <= 3/2.
  void validate() const;
};

/// Euler-Maclaurin; absolute error below 1e-10 for |Im s| <= 1e4.
/// Throws PoleError at s = 1.
Complex zeta_eval(Complex s);

struct ZValue {
  Complex value;
  double error_bound = 0.0;  // bound on the discarded tail past x_hi
  std::size_t x_hi = 0;
};

/// Z(s) through the continuation
///   Z(s) = sum_{n<=X} c_n n^{-s} + C X^{1-s}/(s-1) - Delta(X) X^{-s} + s int_X^inf Delta(x) x^{-s-1} dx,
/// with the integral done exactly on unit intervals up to x_hi and the rest
/// bounded through |Delta(x)| <= K x^{3/5}, K = 2 max_{x<=n_max} |Delta(x)| x^{-3/5}.
/// x_hi is the smallest integer making that bound < 1e-8, capped at n_max.
class ZFunction {
 public:
  ZFunction(const CoeffTable& ct, const MainTermConstant& C);

  const CoeffTable& coeffs() const { return *ct_; }
  const MainTermConstant& constant() const { return C_; }
  double tail_constant() const { return K_; }

  /// Throws OutOfDomain for Re s <= 0.65, InsufficientTable for X > n_max,
  /// invalid_argument for X < 1.
  ZValue operator()(Complex s, double X) const;

 private:
  const CoeffTable* ct_;
  MainTermConstant C_;
  double K_ = 0.0;
  std::vector<double> log_n_;
};

ZValue z_eval(Complex s, double X, const CoeffTable& ct, const MainTermConstant& C);

enum class BMode : unsigned { series = 1u, quotient = 2u, both = 3u };

struct BValues {
  std::optional<Complex> series;    // sum_{n<=n_max} b_n n^{-s}, Re s > 1.1
  std::optional<Complex> quotient;  // Z(s) / zeta(s), Re s > 0.65
};

/// Computes whichever requested modes are defined at s. Throws
/// DivisionSingularity when |zeta(s)| < 1e-12 in quotient mode.
BValues b_eval(Complex s, const ZFunction& z, const BTable& b, double X, BMode modes = BMode::both);

/// X(s) = (2 pi)^{4s-2} Gamma(12-s) Gamma(1-s) / (Gamma(s+11) Gamma(s)), via log-gamma.
/// Throws PoleError at poles of the gamma factors.
Complex chi_factor(Complex s, int kappa = 12);

/// d log|X(sigma+it)| / d log t by a central difference in log t.
double chi_log_slope(double sigma, double t, int kappa = 12);

struct ZLineSample {
  double t;
  Complex value;
};

struct LineMeanSquare {
  double T = 0.0;
  double X = 0.0;
  double integral = 0.0;       // int_1^T |Z(1+it)|^2 dt
  double main_term = 0.0;      // T sum_{n<=n_max} c_n^2 n^{-2}
  double difference = 0.0;     // integral - main_term
  double max_ratio_log = 0.0;  // max over nodes with t >= 2 of |Z(1+it)| / log t
  std::size_t nodes = 0;
  std::vector<ZLineSample> samples;  // only when requested, sorted by t
};

/// Composite Gauss-Legendre (order 8) on panels of width <= panel_width.
LineMeanSquare z_line_mean_square(double T, double X, const ZFunction& z, double panel_width = 0.25,
                                  bool keep_samples = false);

}  // namespace rslab
