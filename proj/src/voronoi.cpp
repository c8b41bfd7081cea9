#include "rslab/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rslab/error.hpp"
#include "rslab/numeric.hpp"

namespace rslab {

VoronoiParams::VoronoiParams(double xi, std::size_t n_trunc)
    : xi_(xi), n_trunc_(n_trunc), phase_(0.5 * (0.5 - xi) * std::numbers::pi) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("VoronoiParams: xi must lie in [0, 1]");
}

namespace {

void check(const VoronoiParams& p, const CoeffTable& ct, double x) {
  if (!(x >= 1.0)) throw std::invalid_argument("voronoi_sum: x must be >= 1");
  if (p.n_trunc() > ct.n_max()) {
    throw InsufficientTable("voronoi_sum: N = " + std::to_string(p.n_trunc()) + " exceeds n_max = " +
                            std::to_string(ct.n_max()));
  }
}

// cos(8 pi (xn)^{1/4} + phase) with 8 pi y = 2 pi * frac(4 y).
double reduced_cos(long double x4, long double n, double phase) {
  const long double y = 4.0L * x4 * std::pow(n, 0.25L);
  const long double frac = y - std::floor(y);
  return std::cos(2.0 * std::numbers::pi * static_cast<double>(frac) + phase);
}

// Calls sink(N, partial) after each term; partial sums are exactly those of
// voronoi_trig_sum for that N.
template <class Sink>
void trig_partial_sums(const VoronoiParams& p, const CoeffTable& ct, double x, std::size_t n_hi,
                       Sink&& sink) {
  const long double x4 = std::pow(static_cast<long double>(x), 0.25L);
  const double expo = -(5.0 + 2.0 * p.xi()) / 8.0;
  CompensatedSum<double> acc;
  for (std::size_t n = 1; n <= n_hi; ++n) {
    const double amp = ct.c(n) * std::pow(static_cast<double>(n), expo);
    acc.add(amp * reduced_cos(x4, static_cast<long double>(n), p.phase_const()));
    sink(n, acc.value());
  }
}

double prefactor(double xi, double x) {
  return std::pow(2.0 * std::numbers::pi, -1.0 - xi) * std::pow(x, (3.0 - 2.0 * xi) / 8.0);
}

}  // namespace

double voronoi_trig_sum(const VoronoiParams& p, const CoeffTable& ct, double x) {
  check(p, ct, x);
  double out = 0.0;
  trig_partial_sums(p, ct, x, p.n_trunc(), [&](std::size_t, double v) { out = v; });
  return out;
}

double voronoi_sum(const VoronoiParams& p, const CoeffTable& ct, double x) {
  return prefactor(p.xi(), x) * voronoi_trig_sum(p, ct, x);
}

std::vector<ResidualRow> residual_scan(const CoeffTable& ct, const ErrorTermEvaluator& ev,
                                       std::span<const double> xs, std::span<const std::size_t> Ns) {
  std::vector<std::size_t> ns(Ns.begin(), Ns.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (xs.empty()) throw std::invalid_argument("residual_scan: empty x grid");
  const std::size_t n_hi = ns.empty() ? 0 : ns.back();
  const VoronoiParams probe(ev.xi(), n_hi);

  std::vector<CompensatedSum<double>> sq(ns.size());
  CompensatedSum<double> sq_delta;
  for (double x : xs) {
    check(probe, ct, x);
    const double delta = ev.riesz_error(x);
    sq_delta.add(delta * delta);
    const double pre = prefactor(ev.xi(), x);
    std::size_t next = 0;
    while (next < ns.size() && ns[next] == 0) {
      sq[next].add(delta * delta);
      ++next;
    }
    trig_partial_sums(probe, ct, x, n_hi, [&](std::size_t n, double partial) {
      while (next < ns.size() && ns[next] == n) {
        const double r = delta - pre * partial;
        sq[next].add(r * r);
        ++next;
      }
    });
  }
  const double count = static_cast<double>(xs.size());
  const double rms_delta = std::sqrt(sq_delta.value() / count);
  std::vector<ResidualRow> rows;
  rows.reserve(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    rows.push_back({ns[i], std::sqrt(sq[i].value() / count), rms_delta});
  }
  return rows;
}

}  // namespace rslab
