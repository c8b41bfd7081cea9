#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace rslab::cli {

struct RunConfig {
  std::size_t n_max = 100000;
  double xi = 0.0;
  double x_lo = 10.0;
  double x_hi = 10000.0;
  int dyadic_from = 9;
  int dyadic_to = 15;
  double T = 300.0;
  double X_trunc = 10000.0;
  std::string cache_path;
  std::string out_path;
  std::size_t points = 200;
};

/// Exit status: 0 ok, 1 verify violation or runtime failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Invariant suite behind `verify`; prints one line per family.
int verify(const RunConfig& cfg, std::ostream& out);

}  // namespace rslab::cli
