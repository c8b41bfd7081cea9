#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rslab/coeffs.hpp"
#include "rslab/sums.hpp"

namespace rslab::testing {

/// Tables at the acceptance size, built once per process.
struct Lab {
  TauTable tau;
  CoeffTable ct;
  MainTermConstant C;
};
const Lab& lab();

/// tau(1..N) by expanding q prod_{n<N} (1 - q^n)^24 with dense big-integer
/// polynomial products.
std::vector<boost::multiprecision::cpp_int> tau_by_q_expansion(std::size_t N);

/// The Voronoi trig sum evaluated naively in 50-digit arithmetic, no range reduction.
double voronoi_oracle(double xi, std::size_t N, const CoeffTable& ct, double x);

/// int_a^b Delta(u; xi) du by Gauss-Kronrod on each unit piece between integers.
double integral_of_delta(const ErrorTermEvaluator& ev, double a, double b);

/// int_a^b Delta(u; xi)^2 du the same way, for 1 <= a <= b.
double integral_of_delta_sq(const ErrorTermEvaluator& ev, double a, double b);

}  // namespace rslab::testing
