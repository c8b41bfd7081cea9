#include "rslab/io.hpp"

#include <cstdio>

namespace rslab {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void header(std::ostream& os, const std::string& meta, const char* columns) {
  os << "# " << meta << " version=" << kVersion << '\n' << columns << '\n';
}

}  // namespace

void write_errterm_csv(std::ostream& os, const std::string& meta, std::span<const ErrtermRow> rows) {
  header(os, meta, "x,xi,delta,delta1_over_x");
  for (const auto& r : rows) {
    os << format_double(r.x) << ',' << format_double(r.xi) << ',' << format_double(r.delta) << ','
       << format_double(r.delta1_over_x) << '\n';
  }
}

void write_residual_csv(std::ostream& os, const std::string& meta, std::span<const ResidualRow> rows) {
  header(os, meta, "N,rms_residual,rms_delta");
  for (const auto& r : rows) {
    os << r.N << ',' << format_double(r.rms_residual) << ',' << format_double(r.rms_delta) << '\n';
  }
}

void write_zline_csv(std::ostream& os, const std::string& meta, std::span<const ZLineSample> samples) {
  header(os, meta, "t,re_Z,im_Z,abs2_Z");
  for (const auto& s : samples) {
    os << format_double(s.t) << ',' << format_double(s.value.real()) << ',' << format_double(s.value.imag())
       << ',' << format_double(std::norm(s.value)) << '\n';
  }
}

void write_meansq_csv(std::ostream& os, const std::string& meta, std::span<const MeanSquareResult> rows) {
  header(os, meta, "X,xi,integral,method,est_error");
  for (const auto& r : rows) {
    os << format_double(r.X) << ',' << format_double(r.xi) << ',' << format_double(r.integral) << ','
       << to_string(r.method) << ',' << format_double(r.est_error) << '\n';
  }
}

nlohmann::json to_json(const ExponentFit& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"stderr_slope", fit.stderr_slope},
          {"beta_hat", fit.beta_hat},
          {"points", fit.points}};
}

nlohmann::json to_json(const BoundsRow& row) {
  return {{"xi", row.xi},
          {"lower_thm2", row.lower_thm2},
          {"upper_thm2", row.upper_thm2},
          {"upper_thm3", row.upper_thm3},
          {"thm3_valid", row.thm3_valid},
          {"pointwise_14", row.pointwise_14},
          {"thmA", row.thmA}};
}

nlohmann::json to_json(const MeanSquareResult& r) {
  return {{"X", r.X},
          {"X_hi", r.X_hi},
          {"xi", r.xi},
          {"integral", r.integral},
          {"method", to_string(r.method)},
          {"est_error", r.est_error}};
}

nlohmann::json to_json(const MainTermConstant& c) {
  return {{"value", c.value},
          {"stderr", c.std_error},
          {"method", to_string(c.method)},
          {"fit_range", {c.fit_range.first, c.fit_range.second}},
          {"n_max", c.n_max}};
}

}  // namespace rslab
