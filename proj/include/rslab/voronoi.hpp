#pragma once

// Truncated Voronoi-type expansion of Delta(x; xi):
//   V_xi(x, N) = (2 pi)^{-1-xi} x^{(3-2xi)/8}
//                * sum_{n<=N} c_n n^{-(5+2xi)/8} cos(8 pi (xn)^{1/4} + (1/2 - xi) pi / 2)

#include <cstddef>
#include <span>
#include <vector>

#include "rslab/coeffs.hpp"
#include "rslab/sums.hpp"

namespace rslab {

class VoronoiParams {
 public:
  VoronoiParams(double xi, std::size_t n_trunc);

  double xi() const { return xi_; }
  std::size_t n_trunc() const { return n_trunc_; }
  double phase_const() const { return phase_; }

 private:
  double xi_;
  std::size_t n_trunc_;
  double phase_;
};

/// Compensated sum of the oscillating terms, without the x^{(3-2xi)/8} and
/// (2 pi)^{-1-xi} prefactors. The cosine argument is reduced modulo 2 pi via
/// the fractional part of 4 (xn)^{1/4}, formed in long double.
double voronoi_trig_sum(const VoronoiParams& p, const CoeffTable& ct, double x);

/// V_xi(x, N). Throws InsufficientTable if N > n_max, invalid_argument if x < 1.
double voronoi_sum(const VoronoiParams& p, const CoeffTable& ct, double x);

struct ResidualRow {
  std::size_t N = 0;
  double rms_residual = 0.0;
  double rms_delta = 0.0;
};

/// RMS over xs of Delta(x; xi) - V_xi(x, N) for each N, with xi taken from ev.
/// Rows come back sorted by N.
std::vector<ResidualRow> residual_scan(const CoeffTable& ct, const ErrorTermEvaluator& ev,
                                       std::span<const double> xs, std::span<const std::size_t> Ns);

}  // namespace rslab
