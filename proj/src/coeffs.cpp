#include "rslab/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "rslab/error.hpp"
#include "rslab/numeric.hpp"

namespace rslab {

namespace mp = boost::multiprecision;

std::string to_string(int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // Work with the unsigned magnitude so INT128_MIN is representable.
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1u
                              : static_cast<unsigned __int128>(v);
  std::string digits;
  while (mag > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10u)));
    mag /= 10u;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

TauTable::TauTable(std::vector<int128> tau) : tau_(std::move(tau)) {}

namespace {

using Wide = mp::int256_t;

Wide widen(int128 v) {
  const bool neg = v < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1u
                              : static_cast<unsigned __int128>(v);
  Wide w = static_cast<std::uint64_t>(mag >> 64);
  w <<= 64;
  w += static_cast<std::uint64_t>(mag);
  return neg ? Wide(-w) : w;
}

Wide widen(std::int64_t v) { return Wide(v); }

template <class Int>
bool narrow(const Wide& w, Int& out) {
  if (w > widen(static_cast<int128>(std::numeric_limits<Int>::max())) ||
      w < widen(static_cast<int128>(std::numeric_limits<Int>::min()))) {
    return false;
  }
  const bool neg = w < 0;
  const Wide mag = neg ? Wide(-w) : w;
  const auto lo = static_cast<std::uint64_t>(mag & Wide(std::numeric_limits<std::uint64_t>::max()));
  const auto hi = static_cast<std::uint64_t>(mag >> 64);
  unsigned __int128 u = (static_cast<unsigned __int128>(hi) << 64) | lo;
  const int128 s = neg ? -static_cast<int128>(u - 1u) - 1 : static_cast<int128>(u);
  out = static_cast<Int>(s);
  return true;
}

struct PentagonalTerm {
  std::size_t exponent;
  int sign;
};

// Nonzero terms of prod_{n>=1} (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}, k in Z,
// excluding the constant term, in increasing exponent order.
std::vector<PentagonalTerm> pentagonal_terms(std::size_t limit) {
  std::vector<PentagonalTerm> out;
  for (std::size_t k = 1;; ++k) {
    const std::size_t e1 = k * (3 * k - 1) / 2;
    const std::size_t e2 = k * (3 * k + 1) / 2;
    const int sign = (k % 2 == 1) ? -1 : 1;
    if (e1 > limit) break;
    out.push_back({e1, sign});
    if (e2 <= limit) out.push_back({e2, sign});
  }
  return out;
}

}  // namespace

namespace detail {

// F = E^24 with E = prod (1 - q^n). From F' E = 24 E' F:
//   n F_n = sum_{j >= 1} E_j F_{n-j} (25 j - n).
// tau(n + 1) = F_n.
template <class Int>
std::vector<Int> tau_recursion(std::size_t n_max) {
  if (n_max == 0) throw std::invalid_argument("tau_table: n_max must be positive");
  if (n_max > 10'000'000) throw std::invalid_argument("tau_table: n_max exceeds 1e7");
  const auto terms = pentagonal_terms(n_max);
  std::vector<Int> f(n_max);
  f[0] = 1;
  for (std::size_t n = 1; n < n_max; ++n) {
    Int acc = 0;
    bool overflow = false;
    for (const auto& term : terms) {
      if (term.exponent > n) break;
      const auto factor = static_cast<Int>(25 * static_cast<std::int64_t>(term.exponent) -
                                           static_cast<std::int64_t>(n));
      Int prod;
      if (__builtin_mul_overflow(f[n - term.exponent], factor, &prod)) {
        overflow = true;
        break;
      }
      if (term.sign < 0 ? __builtin_sub_overflow(acc, prod, &acc)
                        : __builtin_add_overflow(acc, prod, &acc)) {
        overflow = true;
        break;
      }
    }
    if (!overflow) {
      f[n] = acc / static_cast<Int>(n);
      continue;
    }
    Wide wide = 0;
    for (const auto& term : terms) {
      if (term.exponent > n) break;
      const Wide factor = 25 * static_cast<std::int64_t>(term.exponent) - static_cast<std::int64_t>(n);
      const Wide prod = widen(f[n - term.exponent]) * factor;
      if (term.sign < 0) {
        wide -= prod;
      } else {
        wide += prod;
      }
    }
    wide /= static_cast<std::int64_t>(n);
    if (!narrow(wide, f[n])) {
      throw OverflowError(n + 1, "tau_table: tau(" + std::to_string(n + 1) +
                                     ") exceeds the " + std::to_string(8 * sizeof(Int)) +
                                     "-bit integer width");
    }
  }
  return f;
}

template std::vector<std::int64_t> tau_recursion<std::int64_t>(std::size_t);
template std::vector<int128> tau_recursion<int128>(std::size_t);

std::vector<int> mobius_sieve(std::size_t n) {
  std::vector<int> mu(n + 1, 0);
  if (n >= 1) mu[1] = 1;
  std::vector<std::size_t> primes;
  std::vector<bool> composite(n + 1, false);
  for (std::size_t i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (std::size_t p : primes) {
      if (i * p > n) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = -mu[i];
    }
  }
  return mu;
}

}  // namespace detail

TauTable tau_table(std::size_t n_max) { return TauTable(detail::tau_recursion<int128>(n_max)); }

namespace {

std::vector<std::size_t> divisor_counts(std::size_t n) {
  std::vector<std::size_t> d(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i; j <= n; j += i) ++d[j];
  }
  return d;
}

std::vector<std::size_t> primes_up_to(std::size_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::size_t> out;
  for (std::size_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::size_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

HeckeReport hecke_verify(const TauTable& t, std::size_t pair_limit, std::size_t prime_limit) {
  HeckeReport report;
  const std::size_t n_max = t.n_max();
  pair_limit = std::min(pair_limit, n_max);
  prime_limit = std::min(prime_limit, n_max);

  for (std::size_t m = 2; m * (m + 1) <= pair_limit; ++m) {
    for (std::size_t n = m + 1; m * n <= pair_limit; ++n) {
      if (std::gcd(m, n) != 1) continue;
      ++report.pair_checks;
      if (widen(t[m * n]) != widen(t[m]) * widen(t[n])) {
        report.violations.push_back("multiplicativity: tau(" + std::to_string(m * n) +
                                    ") != tau(" + std::to_string(m) + ") tau(" +
                                    std::to_string(n) + ")");
      }
    }
  }

  for (std::size_t p : primes_up_to(prime_limit)) {
    const Wide p11 = mp::pow(Wide(p), 11);
    std::size_t prev = 1;  // p^{k-1}
    std::size_t cur = p;   // p^k
    while (cur <= n_max / p) {
      const std::size_t next = cur * p;
      ++report.chain_checks;
      if (widen(t[next]) != widen(t[p]) * widen(t[cur]) - p11 * widen(t[prev])) {
        report.violations.push_back("prime-power recursion: tau(" + std::to_string(next) + ")");
      }
      prev = cur;
      cur = next;
    }
  }

  const auto d = divisor_counts(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    ++report.bound_checks;
    const int128 v = t[n];
    if (v == 0) continue;
    const long double lhs = std::log(std::abs(static_cast<long double>(v)));
    const long double rhs = std::log(static_cast<long double>(d[n])) +
                            5.5L * std::log(static_cast<long double>(n));
    if (lhs > rhs + 1e-15L) {
      report.violations.push_back("Deligne bound: |tau(" + std::to_string(n) + ")| > d(n) n^{11/2}");
    }
  }
  return report;
}

CoeffTable CoeffTable::from_values(std::vector<double> c) {
  CoeffTable ct;
  ct.c_ = std::move(c);
  ct.fill_prefixes();
  return ct;
}

void CoeffTable::fill_prefixes() {
  const std::size_t n = c_.size();
  prefix_c_.assign(n + 1, 0.0L);
  prefix_c2_.assign(n + 1, 0.0L);
  prefix_clog_.assign(n + 1, 0.0L);
  prefix_cn_.assign(n + 1, 0.0L);
  CompensatedSum<long double> s1, s2, s3, s4;
  for (std::size_t k = 1; k <= n; ++k) {
    const long double v = c_[k - 1];
    s1.add(v);
    s2.add(v * v);
    s3.add(v * std::log(static_cast<long double>(k)));
    s4.add(v * static_cast<long double>(k));
    prefix_c_[k] = s1.value();
    prefix_c2_[k] = s2.value();
    prefix_clog_[k] = s3.value();
    prefix_cn_[k] = s4.value();
  }
}

Rational rankin_coeff_exact(const TauTable& t, std::size_t n) {
  if (n == 0 || n > t.n_max()) throw InsufficientTable("rankin_coeff_exact: n outside table");
  mp::cpp_int numerator = 0;
  for (std::size_t m = 1; m * m <= n; ++m) {
    if (n % (m * m) != 0) continue;
    const mp::cpp_int tau = mp::cpp_int(to_string(t[n / (m * m)]));
    numerator += mp::pow(mp::cpp_int(m), 22) * tau * tau;
  }
  return Rational(numerator, mp::pow(mp::cpp_int(n), 11));
}

CoeffTable rankin_coeffs(const TauTable& t) {
  const std::size_t n_max = t.n_max();
  CoeffTable ct;
  ct.a_hat_.resize(n_max);
  std::vector<long double> a2(n_max);
  for (std::size_t k = 1; k <= n_max; ++k) {
    const long double a = static_cast<long double>(t[k]) *
                          std::pow(static_cast<long double>(k), -5.5L);
    ct.a_hat_[k - 1] = static_cast<double>(a);
    a2[k - 1] = a * a;
  }
  std::vector<long double> c(n_max, 0.0L);
  for (std::size_t m = 1; m * m <= n_max; ++m) {
    const std::size_t sq = m * m;
    for (std::size_t k = 1; k * sq <= n_max; ++k) c[k * sq - 1] += a2[k - 1];
  }
  ct.c_.assign(c.begin(), c.end());

  for (std::size_t n = 1; n <= std::min<std::size_t>(n_max, 64); ++n) {
    const double exact = static_cast<double>(rankin_coeff_exact(t, n));
    const double got = ct.c_[n - 1];
    if (std::abs(got - exact) > 1e-14 * std::abs(exact)) {
      throw std::logic_error("rankin_coeffs: floating c_" + std::to_string(n) +
                             " disagrees with the exact rational value");
    }
  }
  ct.fill_prefixes();
  return ct;
}

BTable shimura_b(const CoeffTable& ct) {
  const std::size_t n_max = ct.n_max();
  const auto mu = detail::mobius_sieve(n_max);
  std::vector<long double> b(n_max, 0.0L);
  for (std::size_t d = 1; d <= n_max; ++d) {
    if (mu[d] == 0) continue;
    for (std::size_t q = 1; q * d <= n_max; ++q) b[q * d - 1] += mu[d] * static_cast<long double>(ct.c(q));
  }
  BTable out;
  out.b.assign(b.begin(), b.end());

  const std::size_t check = std::min<std::size_t>(n_max, 10'000);
  std::vector<long double> recon(check + 1, 0.0L);
  std::vector<long double> scale(check + 1, 0.0L);
  for (std::size_t d = 1; d <= check; ++d) {
    for (std::size_t m = d; m <= check; m += d) {
      recon[m] += out.b[d - 1];
      scale[m] += std::abs(out.b[d - 1]);
    }
  }
  for (std::size_t n = 1; n <= check; ++n) {
    const long double target = ct.c(n);
    if (std::abs(recon[n] - target) > 1e-10L * std::max(std::abs(target), scale[n])) {
      throw std::logic_error("shimura_b: reconstruction sum_{d|n} b_d = c_n fails at n = " +
                             std::to_string(n));
    }
  }
  return out;
}

std::vector<Rational> shimura_b_exact(const TauTable& t, std::size_t n_max) {
  n_max = std::min(n_max, t.n_max());
  const auto mu = detail::mobius_sieve(n_max);
  std::vector<Rational> c(n_max + 1);
  for (std::size_t n = 1; n <= n_max; ++n) c[n] = rankin_coeff_exact(t, n);
  std::vector<Rational> b(n_max, Rational(0));
  for (std::size_t d = 1; d <= n_max; ++d) {
    if (mu[d] == 0) continue;
    for (std::size_t q = 1; q * d <= n_max; ++q) {
      if (mu[d] > 0) {
        b[q * d - 1] += c[q];
      } else {
        b[q * d - 1] -= c[q];
      }
    }
  }
  return b;
}

}  // namespace rslab
