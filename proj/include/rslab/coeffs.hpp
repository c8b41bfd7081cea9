#pragma once

// Ramanujan tau, the Rankin-Selberg convolution coefficients c_n and the
// Shimura-lift coefficients b = mu * c.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rslab {

using int128 = __int128;

std::string to_string(int128 v);

/// Exact tau(1..n_max). Immutable once built.
class TauTable {
 public:
  TauTable() = default;
  explicit TauTable(std::vector<int128> tau);

  std::size_t n_max() const { return tau_.size(); }
  /// 1-based access.
  int128 operator[](std::size_t n) const { return tau_[n - 1]; }
  std::span<const int128> values() const { return tau_; }

  friend bool operator==(const TauTable&, const TauTable&) = default;

 private:
  std::vector<int128> tau_;
};

/// tau(n) for n <= n_max from the sparse pentagonal series of prod (1 - q^n)
/// and the log-derivative recursion for its 24th power.
///
/// Throws std::invalid_argument for n_max == 0 or n_max > 1e7 and
/// OverflowError naming the first n whose tau(n) does not fit 128 bits.
TauTable tau_table(std::size_t n_max);

namespace detail {
/// Same recursion with values stored in Int (int64_t or int128); exposed so the
/// overflow path can be exercised at small sizes.
template <class Int>
std::vector<Int> tau_recursion(std::size_t n_max);
}  // namespace detail

struct HeckeReport {
  std::size_t pair_checks = 0;
  std::size_t chain_checks = 0;
  std::size_t bound_checks = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Multiplicativity over coprime 2 <= m < n with mn <= pair_limit, the prime
/// power recursion for p <= prime_limit up to n_max, and |tau(n)| <= d(n) n^{11/2}.
HeckeReport hecke_verify(const TauTable& t, std::size_t pair_limit, std::size_t prime_limit);

/// c_n together with prefix sums. Prefix arrays are indexed 0..n_max with a
/// leading zero, accumulated and stored in long double.
class CoeffTable {
 public:
  CoeffTable() = default;

  /// Table from arbitrary coefficients c_1..c_N (a_hat left empty); used for
  /// synthetic inputs.
  static CoeffTable from_values(std::vector<double> c);

  std::size_t n_max() const { return c_.size(); }
  double c(std::size_t n) const { return c_[n - 1]; }
  std::span<const double> c_values() const { return c_; }
  /// Normalized tau(n) n^{-11/2}; empty for synthetic tables.
  std::span<const double> a_hat() const { return a_hat_; }

  long double prefix_c(std::size_t n) const { return prefix_c_[n]; }
  long double prefix_c2(std::size_t n) const { return prefix_c2_[n]; }
  long double prefix_clog(std::size_t n) const { return prefix_clog_[n]; }
  /// Sum_{k<=n} k c_k.
  long double prefix_cn(std::size_t n) const { return prefix_cn_[n]; }

 private:
  friend CoeffTable rankin_coeffs(const TauTable& t);
  void fill_prefixes();

  std::vector<double> c_;
  std::vector<double> a_hat_;
  std::vector<long double> prefix_c_;
  std::vector<long double> prefix_c2_;
  std::vector<long double> prefix_clog_;
  std::vector<long double> prefix_cn_;
};

/// c_n = sum_{m^2 | n} a_hat(n/m^2)^2. For n <= 64 the floating values are
/// checked against the exact rational path (1e-14 relative) before returning.
CoeffTable rankin_coeffs(const TauTable& t);

using Rational = boost::multiprecision::cpp_rational;

/// n^{-11} sum_{m^2|n} m^{22} tau(n/m^2)^2 in exact arithmetic.
Rational rankin_coeff_exact(const TauTable& t, std::size_t n);

struct BTable {
  std::vector<double> b;  // b[n-1] = b_n

  std::size_t n_max() const { return b.size(); }
  double operator[](std::size_t n) const { return b[n - 1]; }
};

/// b = mu * c. The reconstruction c_n = sum_{d|n} b_d is checked for
/// n <= min(n_max, 1e4) before returning (1e-10 relative).
BTable shimura_b(const CoeffTable& ct);

/// Exact b_1..b_n_max from exact c_n; intended for n_max <= 64.
std::vector<Rational> shimura_b_exact(const TauTable& t, std::size_t n_max);

namespace detail {
/// Mobius function mu(0..n) by a linear sieve (index 0 unused).
std::vector<int> mobius_sieve(std::size_t n);
}  // namespace detail

}  // namespace rslab
