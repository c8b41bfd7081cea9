#include "rslab/zfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rslab/error.hpp"

namespace rslab {

void TheoryConstants::validate() const {
  if (!(mu_half >= 0.0 && mu_half <= 0.25)) throw std::invalid_argument("TheoryConstants: mu_half outside [0, 1/4]");
  if (!(theta >= 1.0 && theta <= 1.5)) throw std::invalid_argument("TheoryConstants: theta outside [1, 3/2]");
  if (kappa != 12) throw std::invalid_argument("TheoryConstants: only kappa = 12 is supported");
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// zeta(2k) for k >= 1.
double zeta_even(int k) {
  if (k == 1) return std::numbers::pi * std::numbers::pi / 6.0;
  if (k == 2) return std::pow(std::numbers::pi, 4) / 90.0;
  double s = 0.0;
  for (int m = 200; m >= 1; --m) s += std::pow(static_cast<double>(m), -2.0 * k);
  return s;
}

Complex power(double log_n, Complex s) { return std::exp(-s * log_n); }

}  // namespace

Complex zeta_eval(Complex s) {
  if (std::abs(s - 1.0) < 1e-14) throw PoleError("zeta_eval: pole at s = 1");
  const double t = std::abs(s.imag());
  const auto N = static_cast<std::size_t>(20 + std::ceil(t / 4.0));
  CompensatedSum<Complex> acc;
  for (std::size_t n = 1; n < N; ++n) acc.add(power(std::log(static_cast<double>(n)), s));
  const double nd = static_cast<double>(N);
  const double log_N = std::log(nd);
  const Complex n_pow = power(log_N, s);  // N^{-s}
  acc.add(n_pow * nd / (s - 1.0));
  acc.add(0.5 * n_pow);

  // B_{2k}/(2k)! s (s+1) ... (s+2k-2) N^{-s-2k+1}.
  Complex rising = s;
  Complex npow = n_pow / nd;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 60; ++k) {
    const double bern = (k % 2 == 1 ? 2.0 : -2.0) * zeta_even(k) / std::pow(kTwoPi, 2 * k);
    const Complex term = bern * rising * npow;
    const double mag = std::abs(term);
    if (mag > last) break;  // asymptotic series started to diverge
    acc.add(term);
    if (mag < 1e-17 * std::abs(acc.value())) break;
    last = mag;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    npow /= nd * nd;
  }
  return acc.value();
}

ZFunction::ZFunction(const CoeffTable& ct, const MainTermConstant& C) : ct_(&ct), C_(C) {
  const std::size_t n_max = ct.n_max();
  log_n_.resize(n_max + 2);
  for (std::size_t n = 1; n <= n_max + 1; ++n) log_n_[n] = std::log(static_cast<double>(n));
  // On [n, n+1) Delta is linear, so its extremes relative to x^{3/5} sit at the ends.
  double k = C.value;  // sup over [0, 1) of C x^{2/5}
  const long double c = C.value;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const long double p = ct.prefix_c(n);
    const long double left = std::abs(p - c * n) / std::pow(static_cast<long double>(n), 0.6L);
    k = std::max(k, static_cast<double>(left));
    if (n < n_max) {
      const long double right = std::abs(p - c * (n + 1)) / std::pow(static_cast<long double>(n + 1), 0.6L);
      k = std::max(k, static_cast<double>(right));
    }
  }
  K_ = 2.0 * k;
}

ZValue ZFunction::operator()(Complex s, double X) const {
  const double sigma = s.real();
  if (!(sigma > 0.65)) throw OutOfDomain("z_eval: need Re s > 0.65, got " + std::to_string(sigma));
  if (std::abs(s - 1.0) < 1e-14) throw PoleError("z_eval: pole at s = 1");
  if (!(X >= 1.0)) throw std::invalid_argument("z_eval: X must be >= 1");
  const std::size_t n_max = ct_->n_max();
  if (X > static_cast<double>(n_max)) {
    throw InsufficientTable("z_eval: X = " + std::to_string(X) + " exceeds n_max = " + std::to_string(n_max));
  }

  const double excess = sigma - 0.6;
  const double abs_s = std::abs(s);
  auto tail_bound = [&](double h) { return abs_s * K_ * std::pow(h, -excess) / excess; };
  const double needed = std::pow(abs_s * K_ / (excess * 1e-8), 1.0 / excess);
  const double lo = std::ceil(X);
  const double hi = static_cast<double>(n_max);
  const auto x_hi = static_cast<std::size_t>(std::clamp(std::ceil(needed), lo, hi));

  const auto m = static_cast<std::size_t>(std::floor(X));
  const double C = C_.value;
  CompensatedSum<Complex> acc;
  for (std::size_t n = 1; n <= m; ++n) acc.add(ct_->c(n) * power(log_n_[n], s));

  const double log_X = std::log(X);
  const Complex x_pow = power(log_X, s);  // X^{-s}
  acc.add(C * X * x_pow / (s - 1.0));
  const double delta_X = static_cast<double>(ct_->prefix_c(m) - static_cast<long double>(C) * X);
  acc.add(-delta_X * x_pow);

  // s int_a^b (P - C x) x^{-s-1} dx = P (a^{-s} - b^{-s}) - (s C / (1 - s)) (b^{1-s} - a^{1-s}).
  const Complex c_factor = s * C / (1.0 - s);
  double a = X;
  Complex a_pow = x_pow;
  for (std::size_t n = m; n < x_hi; ++n) {
    const double b = static_cast<double>(n + 1);
    const Complex b_pow = power(log_n_[n + 1], s);
    const double p = static_cast<double>(ct_->prefix_c(n));
    acc.add(p * (a_pow - b_pow));
    acc.add(-c_factor * (b * b_pow - a * a_pow));
    a = b;
    a_pow = b_pow;
  }

  ZValue out;
  out.value = acc.value();
  out.x_hi = x_hi;
  out.error_bound = tail_bound(static_cast<double>(std::max<std::size_t>(x_hi, 1)));
  return out;
}

ZValue z_eval(Complex s, double X, const CoeffTable& ct, const MainTermConstant& C) {
  return ZFunction(ct, C)(s, X);
}

BValues b_eval(Complex s, const ZFunction& z, const BTable& b, double X, BMode modes) {
  BValues out;
  const auto bits = static_cast<unsigned>(modes);
  if ((bits & static_cast<unsigned>(BMode::series)) && s.real() > 1.1) {
    CompensatedSum<Complex> acc;
    for (std::size_t n = 1; n <= b.n_max(); ++n) acc.add(b[n] * power(std::log(static_cast<double>(n)), s));
    out.series = acc.value();
  }
  if ((bits & static_cast<unsigned>(BMode::quotient)) && s.real() > 0.65) {
    const Complex zeta = zeta_eval(s);
    if (std::abs(zeta) < 1e-12) throw DivisionSingularity("b_eval: zeta(s) vanishes at s");
    out.quotient = z(s, X).value / zeta;
  }
  return out;
}

namespace {

Complex log_chi(Complex s, int kappa) {
  const double k = kappa;
  return (4.0 * s - 2.0) * std::log(kTwoPi) + log_gamma(k - s) + log_gamma(1.0 - s) -
         log_gamma(s + k - 1.0) - log_gamma(s);
}

}  // namespace

Complex chi_factor(Complex s, int kappa) { return std::exp(log_chi(s, kappa)); }

double chi_log_slope(double sigma, double t, int kappa) {
  const double h = 1e-4;
  const double up = log_chi({sigma, t * std::exp(h)}, kappa).real();
  const double down = log_chi({sigma, t * std::exp(-h)}, kappa).real();
  return (up - down) / (2.0 * h);
}

LineMeanSquare z_line_mean_square(double T, double X, const ZFunction& z, double panel_width,
                                  bool keep_samples) {
  if (!(T >= 1.0)) throw std::invalid_argument("z_line_mean_square: T must be >= 1");
  if (!(panel_width > 0.0)) throw std::invalid_argument("z_line_mean_square: panel width must be positive");
  LineMeanSquare out;
  out.T = T;
  out.X = X;

  const CoeffTable& ct = z.coeffs();
  CompensatedSum<long double> c2;
  for (std::size_t n = 1; n <= ct.n_max(); ++n) {
    const long double v = ct.c(n) / static_cast<long double>(n);
    c2.add(v * v);
  }
  out.main_term = static_cast<double>(T * c2.value());

  if (T > 1.0) {
    static const GaussLegendre rule(8);
    const auto panels = static_cast<std::size_t>(std::ceil((T - 1.0) / panel_width - 1e-12));
    const double h = (T - 1.0) / static_cast<double>(panels);
    std::vector<double> panel_values(panels);
    for (std::size_t p = 0; p < panels; ++p) {
      const double a = 1.0 + h * static_cast<double>(p);
      const double b = (p + 1 == panels) ? T : a + h;
      panel_values[p] = rule.integrate(
          [&](double t) {
            const Complex v = z({1.0, t}, X).value;
            ++out.nodes;
            if (t >= 2.0) out.max_ratio_log = std::max(out.max_ratio_log, std::abs(v) / std::log(t));
            if (keep_samples) out.samples.push_back({t, v});
            return std::norm(v);
          },
          a, b);
    }
    out.integral = pairwise_sum(panel_values);
  }
  out.difference = out.integral - out.main_term;
  if (keep_samples) {
    std::sort(out.samples.begin(), out.samples.end(),
              [](const ZLineSample& l, const ZLineSample& r) { return l.t < r.t; });
  }
  return out;
}

}  // namespace rslab
