// One line per acceptance criterion. All tolerances are fixed here.
// Usage: rslab_acceptance [--expect-fail K]...

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rslab/coeffs.hpp"
#include "rslab/meansq.hpp"
#include "rslab/numeric.hpp"
#include "rslab/sums.hpp"
#include "rslab/voronoi.hpp"
#include "rslab/zfun.hpp"
#include "support.hpp"

using namespace rslab;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::size_t kNMax = 100000;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Outcome coefficients() {
  const auto t0 = Clock::now();
  const auto oracle = rslab::testing::tau_by_q_expansion(1000);
  const TauTable t = tau_table(1000);
  std::size_t mismatches = 0;
  for (std::size_t n = 1; n <= 1000; ++n) {
    const int128 v = t[n];
    const bool neg = v < 0;
    const unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    boost::multiprecision::cpp_int b = static_cast<std::uint64_t>(u >> 64);
    b <<= 64;
    b += static_cast<std::uint64_t>(u);
    if (neg) b = -b;
    mismatches += b != oracle[n - 1];
  }
  const HeckeReport h = hecke_verify(tau_table(10000), 10000, 1);
  std::size_t mult_violations = 0;
  for (const auto& v : h.violations) mult_violations += v.rfind("multiplicativity", 0) == 0;
  const double secs = seconds_since(t0);
  return {mismatches == 0 && mult_violations == 0 && h.pair_checks > 0 && secs < 10.0,
          "tau mismatches " + std::to_string(mismatches) + "/1000, multiplicativity violations " +
              std::to_string(mult_violations) + "/" + std::to_string(h.pair_checks) + ", " + num(secs, 3) + " s"};
}

std::vector<MeanSquareResult> dyadic(const ErrorTermEvaluator& ev) {
  std::vector<MeanSquareResult> out;
  for (int k = 9; k <= 15; ++k) out.push_back(mean_square_delta(std::ldexp(1.0, k), ev));
  return out;
}

Outcome beta_xi1(const testing::Lab& L) {
  const auto t0 = Clock::now();
  const auto blocks = dyadic(ErrorTermEvaluator(L.ct, L.C, 1.0));
  const double beta = beta_fit(blocks).beta_hat;
  const double secs = seconds_since(t0);
  return {beta >= 0.065 && beta <= 0.185 && secs < 300.0,
          "beta_hat " + num(beta) + " in [0.065, 0.185], " + num(secs, 3) + " s"};
}

Outcome beta_xi0(const testing::Lab& L) {
  const double beta = beta_fit(dyadic(ErrorTermEvaluator(L.ct, L.C, 0.0))).beta_hat;
  return {beta >= 0.325 && beta <= 0.55, "beta_hat " + num(beta) + " in [0.325, 0.55]"};
}

Outcome delta1_exponent(const testing::Lab& L) {
  const ErrorTermEvaluator ev(L.ct, L.C, 0.0);
  std::vector<double> lx, ly;
  for (int k = 9; k <= 15; ++k) {
    const double X = std::ldexp(1.0, k);
    lx.push_back(std::log(X));
    ly.push_back(std::log(integral_delta1_sq(1.0, X, ev, QuadratureMethod::exact_piecewise).integral));
  }
  const double slope = fit_line(lx, ly).slope;
  return {std::abs(slope - 3.25) <= 0.15, "slope " + num(slope) + " vs 3.25 +- 0.15"};
}

Outcome line_mean_square(const testing::Lab& L) {
  const auto t0 = Clock::now();
  const ZFunction z(L.ct, L.C);
  const double T = 300.0;
  const LineMeanSquare r = z_line_mean_square(T, 1e4, z);
  const double bound = 40.0 * std::log(T) * std::log(T);
  const double secs = seconds_since(t0);
  return {std::abs(r.difference) <= bound && secs < 600.0,
          "|difference| " + num(std::abs(r.difference)) + " <= " + num(bound) + ", " + num(secs, 3) + " s"};
}

Outcome identity(const testing::Lab& L) {
  const ErrorTermEvaluator ev(L.ct, L.C, 1.0);
  const double a = delta1_identity_scan(ev, log_grid(10.0, 1e4, 200)).max_stat;
  const double b = delta1_identity_scan(ev, log_grid(10.0, 1e4, 399)).max_stat;
  const double change = std::abs(b - a) / a;
  return {a <= 0.80 && change < 0.01, "max " + num(a) + " <= 0.80, doubled grid change " + num(change, 3)};
}

Outcome voronoi(const testing::Lab& L) {
  const auto xs = log_grid(1e3, 1e4, 400);
  std::vector<std::size_t> Ns;
  for (int k = 6; k <= 13; ++k) Ns.push_back(std::size_t{1} << k);
  bool monotone = true;
  double final_ratio = 0.0;
  std::string detail;
  for (double xi : {0.0, 1.0}) {
    const auto rows = residual_scan(L.ct, ErrorTermEvaluator(L.ct, L.C, xi), xs, Ns);
    for (std::size_t i = 1; i < rows.size(); ++i) monotone &= rows[i].rms_residual <= 1.02 * rows[i - 1].rms_residual;
    const double ratio = rows.back().rms_residual / rows.back().rms_delta;
    if (xi == 1.0) final_ratio = ratio;
    detail += "xi=" + num(xi, 1) + " final ratio " + num(ratio, 4) + "; ";
  }
  detail += std::string("monotone ") + (monotone ? "yes" : "no") + ", need xi=1 ratio <= 0.2";
  return {monotone && final_ratio <= 0.2, detail};
}

Outcome chi() {
  double unit = 0.0;
  for (double t : {5.0, 10.0, 50.0}) unit = std::max(unit, std::abs(std::abs(chi_factor({0.5, t})) - 1.0));
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> sig(0.05, 0.95), tt(1.0, 100.0);
  double refl = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Complex s{sig(rng), tt(rng)};
    refl = std::max(refl, std::abs(chi_factor(s) * chi_factor(1.0 - s) - 1.0));
  }
  const double slope = chi_log_slope(0.75, 200.0);
  return {unit <= 1e-8 && refl <= 1e-8 && std::abs(slope - (2 - 4 * 0.75)) <= 0.05,
          "unit modulus " + num(unit, 3) + ", reflection " + num(refl, 3) + ", slope " + num(slope) + " vs -1"};
}

Outcome shimura(const testing::Lab& L) {
  const ZFunction z(L.ct, L.C);
  const BTable b = shimura_b(L.ct);
  double worst = 0.0;
  for (Complex s : {Complex{1.5, 0.0}, Complex{2.0, 0.0}, Complex{2.5, 0.0}, Complex{1.5, 10.0}}) {
    const BValues v = b_eval(s, z, b, 1e4);
    worst = std::max(worst, std::abs(*v.series - *v.quotient));
  }
  return {worst <= 1e-5, "max |series - quotient| " + num(worst, 3) + " <= 1e-5"};
}

Outcome bounds() {
  const ExactBoundsRow one = bounds_row_exact(Fraction(1));
  const ExactBoundsRow zero = bounds_row_exact(Fraction(0));
  const ExactBoundsRow lh = bounds_row_exact(Fraction(0), Fraction(0));
  const bool ok = one.lower_thm2 == Fraction(1, 8) && one.upper_thm2 == Fraction(1, 8) &&
                  zero.upper_thm3 == Fraction(410, 961) && lh.upper_thm3 == Fraction(2, 5);
  std::ostringstream os;
  os << "xi=1 (" << one.lower_thm2 << ", " << one.upper_thm2 << "), xi=0 " << zero.upper_thm3 << ", mu=0 "
     << lh.upper_thm3;
  return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_fail;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expect-fail" && i + 1 < argc) {
      expected_fail.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: rslab_acceptance [--expect-fail K]...\n";
      return 2;
    }
  }

  const auto t0 = Clock::now();
  const testing::Lab& L = testing::lab();
  std::cout << "tables n_max=" << kNMax << " C=" << num(L.C.value, 12) << " built in " << num(seconds_since(t0), 3)
            << " s\n";

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"tau oracle and Hecke multiplicativity", [] { return coefficients(); }},
      {"dyadic beta at xi=1", [&] { return beta_xi1(L); }},
      {"dyadic beta at xi=0", [&] { return beta_xi0(L); }},
      {"exponent of int Delta_1^2", [&] { return delta1_exponent(L); }},
      {"mean square of Z on Re s = 1", [&] { return line_mean_square(L); }},
      {"Delta(x;1) against Delta_1(x)/x", [&] { return identity(L); }},
      {"truncated Voronoi residual", [&] { return voronoi(L); }},
      {"functional-equation factor", [] { return chi(); }},
      {"B(s) series against Z/zeta", [&] { return shimura(L); }},
      {"exact bounds table", [] { return bounds(); }},
  };

  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool expected = expected_fail.count(id) > 0;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << id << "  " << criteria[i].first << ": "
              << o.detail << (expected ? "  [expected to fail]" : "") << '\n';
    std::cout.flush();
    if (o.pass == expected) ++unexpected;
  }
  std::cout << "unexpected outcomes: " << unexpected << '\n';
  return unexpected == 0 ? 0 : 1;
}
