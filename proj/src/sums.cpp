#include "rslab/sums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "rslab/error.hpp"
#include "rslab/numeric.hpp"

namespace rslab {

std::string to_string(ConstantMethod m) {
  switch (m) {
    case ConstantMethod::prefix_fit: return "prefix_fit";
    case ConstantMethod::riesz_fit: return "riesz_fit";
    case ConstantMethod::b_series: return "b_series";
  }
  return "unknown";
}

namespace {

using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

struct Coefficient {
  long double value;
  long double std_error;
};

// Least squares y ~ sum_j beta_j phi_j(x) over integer x in [lo, hi]; returns
// the coefficient of the column `target` with its textbook standard error.
template <class Design, class Response>
Coefficient ols_coefficient(std::size_t lo, std::size_t hi, int columns, int target,
                            Design&& design, Response&& response) {
  const auto rows = static_cast<Eigen::Index>(hi - lo + 1);
  MatrixL a(rows, columns);
  VectorL y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::size_t x = lo + static_cast<std::size_t>(r);
    design(x, a.row(r));
    y(r) = response(x);
  }
  const MatrixL ata = a.transpose() * a;
  const VectorL beta = ata.ldlt().solve(a.transpose() * y);
  const VectorL resid = y - a * beta;
  const long double dof = static_cast<long double>(rows - columns);
  const long double sigma2 = dof > 0 ? resid.squaredNorm() / dof : 0.0L;
  const MatrixL cov = ata.inverse() * sigma2;
  return {beta(target), std::sqrt(std::max(0.0L, cov(target, target)))};
}

struct Window {
  std::size_t lo;
  std::size_t hi;
};

// Top half [N/2, N] followed by three dyadic windows below it.
std::array<Window, 4> ladder(std::size_t n_max) {
  std::array<Window, 4> out{};
  std::size_t hi = n_max;
  for (auto& w : out) {
    w = {std::max<std::size_t>(hi / 2, 2), hi};
    hi /= 2;
  }
  return out;
}

MainTermConstant combine(ConstantMethod method, const std::array<Coefficient, 4>& per_window,
                         std::size_t n_max) {
  long double lo = per_window[0].value;
  long double hi = per_window[0].value;
  for (const auto& c : per_window) {
    lo = std::min(lo, c.value);
    hi = std::max(hi, c.value);
  }
  const long double drift = 0.5L * (hi - lo);
  MainTermConstant out;
  out.method = method;
  out.value = static_cast<double>(per_window[0].value);
  out.std_error = static_cast<double>(std::sqrt(per_window[0].std_error * per_window[0].std_error + drift * drift));
  out.fit_range = {static_cast<double>(std::max<std::size_t>(n_max / 2, 2)), static_cast<double>(n_max)};
  out.n_max = n_max;
  return out;
}

}  // namespace

std::array<MainTermConstant, 3> main_constant_candidates(const CoeffTable& ct) {
  const std::size_t n_max = ct.n_max();
  if (n_max < 10'000) throw std::invalid_argument("estimate_main_constant: need n_max >= 1e4");
  const auto windows = ladder(n_max);

  std::array<Coefficient, 4> prefix{};
  std::array<Coefficient, 4> riesz{};
  std::array<Coefficient, 4> bser{};

  for (std::size_t w = 0; w < windows.size(); ++w) {
    const auto [lo, hi] = windows[w];
    const long double scale = static_cast<long double>(hi);
    // Columns are scaled to O(1) and the fitted slope is rescaled back.
    const auto c1 = ols_coefficient(
        lo, hi, 2, 1,
        [&](std::size_t x, auto row) {
          row(0) = 1.0L;
          row(1) = static_cast<long double>(x) / scale;
        },
        [&](std::size_t x) { return ct.prefix_c(x) / scale; });
    prefix[w] = {c1.value, c1.std_error};

    const auto c2 = ols_coefficient(
        lo, hi, 3, 2,
        [&](std::size_t x, auto row) {
          row(0) = 1.0L;
          row(1) = std::log(static_cast<long double>(x) / scale);
          row(2) = static_cast<long double>(x) / scale;
        },
        [&](std::size_t x) {
          const long double lx = std::log(static_cast<long double>(x));
          return (lx * ct.prefix_c(x) - ct.prefix_clog(x)) / scale;
        });
    riesz[w] = {c2.value, c2.std_error};
  }

  const BTable b = shimura_b(ct);
  std::vector<long double> partial(n_max + 1, 0.0L);
  CompensatedSum<long double> acc;
  for (std::size_t n = 1; n <= n_max; ++n) {
    acc.add(static_cast<long double>(b[n]) / static_cast<long double>(n));
    partial[n] = acc.value();
  }
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const auto [lo, hi] = windows[w];
    const long double count = static_cast<long double>(hi - lo + 1);
    long double mean = 0.0L;
    for (std::size_t n = lo; n <= hi; ++n) mean += partial[n];
    mean /= count;
    long double var = 0.0L;
    for (std::size_t n = lo; n <= hi; ++n) var += (partial[n] - mean) * (partial[n] - mean);
    bser[w] = {mean, std::sqrt(var / count)};
  }

  return {combine(ConstantMethod::prefix_fit, prefix, n_max),
          combine(ConstantMethod::riesz_fit, riesz, n_max),
          combine(ConstantMethod::b_series, bser, n_max)};
}

MainTermConstant estimate_main_constant(const CoeffTable& ct) {
  const auto all = main_constant_candidates(ct);
  const MainTermConstant& accepted = all[static_cast<int>(ConstantMethod::riesz_fit)];
  if (!(accepted.value > 0.0) || !(accepted.std_error < 0.01 * accepted.value)) {
    throw EstimationFailure("estimate_main_constant: no stable linear main term (relative error " +
                                std::to_string(accepted.std_error / std::abs(accepted.value)) + ")",
                            all);
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const double sigma = std::hypot(all[i].std_error, all[j].std_error);
      if (std::abs(all[i].value - all[j].value) > 3.0 * sigma) {
        throw EstimationFailure("estimate_main_constant: " + to_string(all[i].method) + " and " +
                                    to_string(all[j].method) + " disagree beyond 3 sigma",
                                all);
      }
    }
  }
  return accepted;
}

ErrorTermEvaluator::ErrorTermEvaluator(const CoeffTable& ct, const MainTermConstant& C, double xi)
    : ct_(&ct), constant_(C), xi_(xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("ErrorTermEvaluator: xi must lie in [0, 1]");
  inv_gamma_ = 1.0 / gamma_real(xi + 1.0);
}

ErrorTermEvaluator::ErrorTermEvaluator(const CoeffTable& ct, double C, double xi)
    : ErrorTermEvaluator(ct, MainTermConstant{C, 0.0, ConstantMethod::riesz_fit, {0.0, 0.0}, ct.n_max()},
                         xi) {}

void ErrorTermEvaluator::check_range(double x) const {
  if (!(x >= 1.0)) throw std::invalid_argument("error term: x must be >= 1");
  if (x > static_cast<double>(ct_->n_max())) {
    throw InsufficientTable("error term: x = " + std::to_string(x) + " exceeds n_max = " +
                            std::to_string(ct_->n_max()));
  }
}

long double ErrorTermEvaluator::riesz_mean(double x) const {
  check_range(x);
  const auto m = static_cast<std::size_t>(std::floor(x));
  if (xi_ == 0.0) return ct_->prefix_c(m);
  if (xi_ == 1.0) {
    return std::log(static_cast<long double>(x)) * ct_->prefix_c(m) - ct_->prefix_clog(m);
  }
  return riesz_mean_direct(x);
}

long double ErrorTermEvaluator::riesz_mean_direct(double x) const {
  check_range(x);
  const auto m = static_cast<std::size_t>(std::floor(x));
  const long double lx = std::log(static_cast<long double>(x));
  CompensatedSum<long double> acc;
  for (std::size_t n = 1; n <= m; ++n) {
    const long double l = lx - std::log(static_cast<long double>(n));
    const long double w = (xi_ == 0.0) ? 1.0L : (l > 0.0L ? std::pow(l, static_cast<long double>(xi_)) : 0.0L);
    acc.add(static_cast<long double>(ct_->c(n)) * w);
  }
  return acc.value() * inv_gamma_;
}

double ErrorTermEvaluator::riesz_error(double x) const {
  return static_cast<double>(riesz_mean(x) - static_cast<long double>(constant_.value) * x);
}

double ErrorTermEvaluator::riesz_error_direct(double x) const {
  return static_cast<double>(riesz_mean_direct(x) - static_cast<long double>(constant_.value) * x);
}

double ErrorTermEvaluator::delta1(double x) const {
  check_range(x);
  const auto m = static_cast<std::size_t>(std::floor(x));
  const long double lx = x;
  const long double v = lx * ct_->prefix_c(m) - ct_->prefix_cn(m) -
                        0.5L * static_cast<long double>(constant_.value) * lx * lx;
  return static_cast<double>(v);
}

IdentityReport delta1_identity_scan(const ErrorTermEvaluator& ev1, std::span<const double> grid) {
  if (ev1.xi() != 1.0) throw std::invalid_argument("delta1_identity_scan: evaluator must have xi = 1");
  IdentityReport report;
  for (double x : grid) {
    if (x < 10.0 || x > static_cast<double>(ev1.coeffs().n_max())) {
      throw std::invalid_argument("delta1_identity_scan: grid must lie in [10, n_max]");
    }
    const double stat = std::abs(ev1.riesz_error(x) - ev1.delta1(x) / x) / std::pow(x, 0.1);
    if (report.points == 0 || stat > report.max_stat) {
      report.max_stat = stat;
      report.argmax = x;
    }
    ++report.points;
  }
  return report;
}

}  // namespace rslab
