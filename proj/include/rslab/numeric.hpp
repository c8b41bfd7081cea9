#pragma once

// Small numerical toolkit shared by the evaluators: compensated accumulation,
// Gauss-Legendre rules, Lanczos gamma, grids and straight-line regression.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rslab {

using Complex = std::complex<double>;

/// Neumaier's variant of Kahan summation.
template <class T>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(T init) : sum_(init) {}

  void add(T v) {
    const T t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(T v) {
    add(v);
    return *this;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

/// Componentwise compensated sum of complex values.
template <class T>
class CompensatedSum<std::complex<T>> {
 public:
  void add(std::complex<T> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  CompensatedSum& operator+=(std::complex<T> v) {
    add(v);
    return *this;
  }
  std::complex<T> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<T> re_;
  CompensatedSum<T> im_;
};

/// Pairwise (cascade) summation of a contiguous range.
double pairwise_sum(std::span<const double> values);

/// Gauss-Legendre rule on [-1, 1], nodes found by Newton iteration in long double.
class GaussLegendre {
 public:
  explicit GaussLegendre(int order);

  int order() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    CompensatedSum<double> acc;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      acc.add(weights_[i] * f(mid + half * nodes_[i]));
    }
    return half * acc.value();
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// log Gamma(z) by the Lanczos approximation (g = 7, nine terms), with upward
/// recurrence for Re z < 1/2. Only the real part is branch-independent; the
/// imaginary part is correct modulo 2*pi, which is all exp() needs.
/// Throws PoleError at non-positive integers.
Complex log_gamma(Complex z);

/// Real Gamma via the same Lanczos sum; for x > 0.
double gamma_real(double x);

/// n log-spaced points on [lo, hi] inclusive (n >= 2), or {lo} when n == 1.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// Ordinary least squares y ~ a + b x.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double stderr_slope = 0.0;
  double residual_rms = 0.0;
  std::size_t points = 0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace rslab
