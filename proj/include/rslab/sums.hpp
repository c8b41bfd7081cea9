#pragma once

// Riesz logarithmic means of c_n, their error terms Delta(x; xi), the integrated
// error term Delta_1(x), and the numerical estimate of the main-term constant C.

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "rslab/coeffs.hpp"

namespace rslab {

enum class ConstantMethod { prefix_fit, riesz_fit, b_series };

std::string to_string(ConstantMethod m);

struct MainTermConstant {
  double value = 0.0;
  double std_error = 0.0;
  ConstantMethod method = ConstantMethod::riesz_fit;
  std::pair<double, double> fit_range{0.0, 0.0};
  std::size_t n_max = 0;  // table size the estimate was measured on
};

/// Raised when the estimates are unusable; carries all three.
class EstimationFailure : public std::runtime_error {
 public:
  EstimationFailure(const std::string& what, std::array<MainTermConstant, 3> estimates)
      : std::runtime_error(what), estimates_(estimates) {}
  const std::array<MainTermConstant, 3>& estimates() const { return estimates_; }

 private:
  std::array<MainTermConstant, 3> estimates_;
};

/// The three raw estimates, in ConstantMethod order, without acceptance checks.
///
/// Each method is evaluated on the top half [N/2, N] and on three further
/// dyadic windows below it; the half-range of the four window values is the
/// drift term, combined in quadrature with the in-window statistical error.
///  - prefix_fit: OLS of sum_{n<=x} c_n on {1, x} at integer x.
///  - riesz_fit:  OLS of sum_{n<=x} c_n log(x/n) on {1, log x, x}; the log and
///                constant columns absorb the residue of Z(s) x^s / s^2 at s = 0.
///  - b_series:   window mean of the partial sums of b_n / n (Cesaro average).
std::array<MainTermConstant, 3> main_constant_candidates(const CoeffTable& ct);

/// Accepted value is riesz_fit. Throws EstimationFailure when its relative
/// error is >= 1%, or when any two methods differ by more than three combined
/// standard errors. Requires n_max >= 1e4.
MainTermConstant estimate_main_constant(const CoeffTable& ct);

/// Evaluates Delta(x; xi) = (1/Gamma(xi+1)) sum_{n<=x} c_n log^xi(x/n) - C x.
/// Holds a reference to the table, which must outlive the evaluator.
class ErrorTermEvaluator {
 public:
  ErrorTermEvaluator(const CoeffTable& ct, const MainTermConstant& C, double xi);
  ErrorTermEvaluator(const CoeffTable& ct, double C, double xi);

  const CoeffTable& coeffs() const { return *ct_; }
  const MainTermConstant& constant() const { return constant_; }
  double C() const { return constant_.value; }
  double xi() const { return xi_; }

  /// Same table and constant, different order.
  ErrorTermEvaluator with_xi(double xi) const { return {*ct_, constant_, xi}; }

  /// (1/Gamma(xi+1)) sum_{n<=x} c_n log^xi(x/n); O(1) for xi in {0, 1}.
  long double riesz_mean(double x) const;
  /// Direct O(x) compensated summation, ignoring the fast paths.
  long double riesz_mean_direct(double x) const;

  double riesz_error(double x) const;
  double riesz_error_direct(double x) const;

  /// Delta_1(x) = int_0^x Delta(u; 0) du, exactly (no quadrature), whatever xi is.
  double delta1(double x) const;

 private:
  void check_range(double x) const;

  const CoeffTable* ct_;
  MainTermConstant constant_;
  double xi_;
  double inv_gamma_;
};

inline double riesz_error(const ErrorTermEvaluator& ev, double x) { return ev.riesz_error(x); }
inline double delta1(const ErrorTermEvaluator& ev, double x) { return ev.delta1(x); }

struct IdentityReport {
  double max_stat = 0.0;  // max |Delta(x;1) - Delta_1(x)/x| x^{-0.1}
  double argmax = 0.0;
  std::size_t points = 0;
};

/// Requires ev1.xi() == 1 and grid inside [10, n_max].
IdentityReport delta1_identity_scan(const ErrorTermEvaluator& ev1, std::span<const double> grid);

}  // namespace rslab
