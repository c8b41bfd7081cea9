#include "rslab/numeric.hpp"

#include <array>
#include <numbers>
#include <stdexcept>

#include "rslab/error.hpp"

namespace rslab {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

GaussLegendre::GaussLegendre(int order) {
  if (order < 1) throw std::invalid_argument("GaussLegendre: order must be >= 1");
  const int n = order;
  nodes_.resize(n);
  weights_.resize(n);
  const long double pi = std::numbers::pi_v<long double>;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0L;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    // Recompute derivative at the converged root.
    long double p0 = 1.0L;
    long double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0L : n * (x * p1 - p0) / (x * x - 1.0L);
    const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
    nodes_[i] = static_cast<double>(-x);
    nodes_[n - 1 - i] = static_cast<double>(x);
    weights_[i] = weights_[n - 1 - i] = static_cast<double>(w);
  }
  if (n % 2 == 1) nodes_[n / 2] = 0.0;
}

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(z) for Re z >= 1/2.
Complex lanczos_log_gamma(Complex z) {
  z -= 1.0;
  Complex x = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) {
    x += kLanczosCoeff[i] / (z + static_cast<double>(i));
  }
  const Complex t = z + kLanczosG + 0.5;
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return half_log_2pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

Complex log_gamma(Complex z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw PoleError("log_gamma: pole at non-positive integer " + std::to_string(z.real()));
  }
  Complex shift = 0.0;
  while (z.real() < 0.5) {
    shift -= std::log(z);
    z += 1.0;
  }
  return lanczos_log_gamma(z) + shift;
}

double gamma_real(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("gamma_real: argument must be positive");
  return std::exp(log_gamma(Complex(x, 0.0)).real());
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log_grid: need 0 < lo <= hi");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need at least two matched points");
  }
  const std::size_t n = x.size();
  long double mx = 0.0L;
  long double my = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double sxx = 0.0L;
  long double sxy = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0L) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit fit;
  fit.points = n;
  const long double slope = sxy / sxx;
  fit.slope = static_cast<double>(slope);
  fit.intercept = static_cast<double>(my - slope * mx);
  long double ssr = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double r = y[i] - (my + slope * (x[i] - mx));
    ssr += r * r;
  }
  fit.residual_rms = static_cast<double>(std::sqrt(ssr / n));
  fit.stderr_slope = n > 2 ? static_cast<double>(std::sqrt(ssr / (n - 2) / sxx)) : 0.0;
  return fit;
}

}  // namespace rslab
