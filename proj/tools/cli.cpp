#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rslab/coeffs.hpp"
#include "rslab/error.hpp"
#include "rslab/io.hpp"
#include "rslab/meansq.hpp"
#include "rslab/numeric.hpp"
#include "rslab/sums.hpp"
#include "rslab/tau_cache.hpp"
#include "rslab/voronoi.hpp"
#include "rslab/zfun.hpp"

namespace rslab::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Tables {
  TauTable tau;
  CoeffTable ct;
  std::string source;
};

Tables load_tables(const RunConfig& cfg) {
  Tables tb;
  if (!cfg.cache_path.empty() && fs::exists(cfg.cache_path)) {
    TauTable cached = read_tau_cache(cfg.cache_path);
    if (cached.n_max() >= cfg.n_max) {
      auto v = cached.values();
      tb.tau = cached.n_max() == cfg.n_max ? std::move(cached)
                                           : TauTable({v.begin(), v.begin() + static_cast<std::ptrdiff_t>(cfg.n_max)});
      tb.source = "loaded";
    }
  }
  if (tb.source.empty()) {
    tb.tau = tau_table(cfg.n_max);
    tb.source = "built";
    if (!cfg.cache_path.empty()) {
      write_tau_cache(cfg.cache_path, tb.tau);
      tb.source = "built+written";
    }
  }
  tb.ct = rankin_coeffs(tb.tau);
  return tb;
}

MainTermConstant need_constant(const CoeffTable& ct) {
  if (ct.n_max() < 10000) throw UsageError("this subcommand estimates C and needs --n-max >= 10000");
  return estimate_main_constant(ct);
}

void check_range(const RunConfig& cfg) {
  if (!(cfg.x_lo >= 1.0) || !(cfg.x_hi >= cfg.x_lo)) throw UsageError("need 1 <= --x-lo <= --x-hi");
  if (cfg.x_hi > static_cast<double>(cfg.n_max)) throw UsageError("--x-hi exceeds --n-max");
  if (cfg.points == 0) throw UsageError("--points must be positive");
}

std::string meta(const std::string& cmd, const RunConfig& cfg, std::initializer_list<std::string> keys) {
  std::ostringstream os;
  os << "rslab " << cmd << " n_max=" << cfg.n_max;
  for (const auto& k : keys) {
    os << ' ' << k << '=';
    if (k == "xi") os << format_double(cfg.xi);
    else if (k == "x_lo") os << format_double(cfg.x_lo);
    else if (k == "x_hi") os << format_double(cfg.x_hi);
    else if (k == "points") os << cfg.points;
    else if (k == "dyadic_from") os << cfg.dyadic_from;
    else if (k == "dyadic_to") os << cfg.dyadic_to;
    else if (k == "T") os << format_double(cfg.T);
    else if (k == "X_trunc") os << format_double(cfg.X_trunc);
  }
  return os.str();
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open --out-path " + path);
      os_ = &file_;
    }
  }
  std::ostream& get() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

int cmd_coeffs(const RunConfig& cfg, std::ostream& out) {
  const Tables tb = load_tables(cfg);
  const auto& ct = tb.ct;
  const std::size_t n = ct.n_max();

  json j;
  j["n_max"] = n;
  j["source"] = tb.source;
  if (!cfg.cache_path.empty()) j["cache_path"] = cfg.cache_path;
  json head = json::array();
  for (std::size_t k = 1; k <= std::min<std::size_t>(n, 10); ++k) head.push_back(to_string(tb.tau[k]));
  j["tau_head"] = head;

  double c_max = 0.0, growth = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    c_max = std::max(c_max, ct.c(k));
    growth = std::max(growth, ct.c(k) / std::pow(static_cast<double>(k), 0.1));
  }
  j["c_max"] = c_max;
  j["max_c_over_n_0.1"] = growth;
  j["sum_c"] = static_cast<double>(ct.prefix_c(n));

  const BTable b = shimura_b(ct);
  json c2 = json::array(), b2 = json::array();
  CompensatedSum<long double> sb2;
  std::size_t next = 10;
  for (std::size_t k = 1; k <= n; ++k) {
    sb2.add(static_cast<long double>(b[k]) * b[k]);
    if (k == next || k == n) {
      const double x = static_cast<double>(k), lx = std::log(x);
      if (k >= 10) {
        c2.push_back({{"x", k}, {"value", static_cast<double>(ct.prefix_c2(k)) / (x * lx)}});
        b2.push_back({{"x", k}, {"value", static_cast<double>(sb2.value()) / (x * std::pow(lx, 4))}});
      }
      if (k == next) next *= 10;
    }
  }
  j["sum_c2_over_x_log_x"] = c2;
  j["sum_b2_over_x_log4_x"] = b2;
  if (n >= 10000) j["main_constant"] = to_json(estimate_main_constant(ct));
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_errterm(const RunConfig& cfg, std::ostream& out) {
  check_range(cfg);
  const Tables tb = load_tables(cfg);
  const MainTermConstant C = need_constant(tb.ct);
  const ErrorTermEvaluator ev(tb.ct, C, cfg.xi);
  std::vector<ErrtermRow> rows;
  for (double x : log_grid(cfg.x_lo, cfg.x_hi, cfg.points)) {
    rows.push_back({x, cfg.xi, ev.riesz_error(x), ev.delta1(x) / x});
  }
  Sink sink(cfg.out_path, out);
  write_errterm_csv(sink.get(), meta("errterm", cfg, {"xi", "x_lo", "x_hi", "points"}) + " C=" + format_double(C.value),
                    rows);
  return 0;
}

int cmd_voronoi(const RunConfig& cfg, std::ostream& out) {
  check_range(cfg);
  if (cfg.dyadic_from < 0 || cfg.dyadic_to < cfg.dyadic_from || cfg.dyadic_to > 40)
    throw UsageError("need 0 <= --dyadic-from <= --dyadic-to <= 40");
  const Tables tb = load_tables(cfg);
  const MainTermConstant C = need_constant(tb.ct);
  const ErrorTermEvaluator ev(tb.ct, C, cfg.xi);
  std::vector<std::size_t> Ns;
  for (int k = cfg.dyadic_from; k <= cfg.dyadic_to; ++k) Ns.push_back(std::size_t{1} << k);
  if (Ns.back() > tb.ct.n_max()) throw UsageError("2^--dyadic-to exceeds --n-max");
  const auto xs = log_grid(cfg.x_lo, cfg.x_hi, cfg.points);
  const auto rows = residual_scan(tb.ct, ev, xs, Ns);
  Sink sink(cfg.out_path, out);
  write_residual_csv(sink.get(),
                     meta("voronoi", cfg, {"xi", "x_lo", "x_hi", "points", "dyadic_from", "dyadic_to"}) +
                         " C=" + format_double(C.value),
                     rows);
  return 0;
}

int cmd_meansq(const RunConfig& cfg, bool use_delta1, bool csv, std::ostream& out) {
  if (cfg.dyadic_from < 0 || cfg.dyadic_to < cfg.dyadic_from) throw UsageError("need 0 <= --dyadic-from <= --dyadic-to");
  if (std::ldexp(2.0, cfg.dyadic_to) > static_cast<double>(cfg.n_max)) throw UsageError("2^(--dyadic-to + 1) exceeds --n-max");
  const Tables tb = load_tables(cfg);
  const MainTermConstant C = need_constant(tb.ct);
  const ErrorTermEvaluator ev(tb.ct, C, use_delta1 ? 0.0 : cfg.xi);
  std::vector<MeanSquareResult> blocks;
  for (int k = cfg.dyadic_from; k <= cfg.dyadic_to; ++k) {
    const double X = std::ldexp(1.0, k);
    blocks.push_back(use_delta1 ? mean_square_delta1(X, ev) : mean_square_delta(X, ev));
  }
  Sink sink(cfg.out_path, out);
  const std::string m = meta("meansq", cfg, {"xi", "dyadic_from", "dyadic_to"}) + " target=" + (use_delta1 ? "delta1" : "delta");
  if (csv) {
    write_meansq_csv(sink.get(), m, blocks);
    return 0;
  }
  json j;
  j["meta"] = m + " version=" + kVersion;
  j["target"] = use_delta1 ? "delta1" : "delta";
  j["main_constant"] = to_json(C);
  json arr = json::array();
  for (const auto& r : blocks) arr.push_back(to_json(r));
  j["blocks"] = arr;
  if (blocks.size() >= 5) j["fit"] = to_json(beta_fit(blocks));
  sink.get() << j.dump(2) << '\n';
  return 0;
}

int cmd_zline(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.T >= 1.0) || cfg.T > 1000.0) throw UsageError("--T must lie in [1, 1000]");
  if (cfg.X_trunc > static_cast<double>(cfg.n_max) || cfg.X_trunc < 1.0) throw UsageError("--x-trunc must lie in [1, n_max]");
  const Tables tb = load_tables(cfg);
  const MainTermConstant C = need_constant(tb.ct);
  const ZFunction z(tb.ct, C);
  const bool keep = !cfg.out_path.empty();
  const LineMeanSquare r = z_line_mean_square(cfg.T, cfg.X_trunc, z, 0.25, keep);
  if (keep) {
    Sink sink(cfg.out_path, out);
    write_zline_csv(sink.get(), meta("zline", cfg, {"T", "X_trunc"}), r.samples);
  }
  json j{{"T", r.T},           {"X", r.X},
         {"integral", r.integral}, {"main_term", r.main_term},
         {"difference", r.difference}, {"bound_40_log2_T", 40.0 * std::pow(std::log(r.T), 2)},
         {"max_abs_Z_over_log_t", r.max_ratio_log}, {"nodes", r.nodes}};
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_bounds(const std::vector<double>& xis, double mu_half, double theta, std::ostream& out) {
  TheoryConstants tc;
  tc.mu_half = mu_half;
  tc.theta = theta;
  try {
    tc.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (double xi : xis) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw UsageError("--xi values must lie in [0, 1]");
  }
  std::vector<double> sorted = xis;
  std::sort(sorted.begin(), sorted.end());
  json arr = json::array();
  for (const auto& row : bounds_table(sorted, tc)) arr.push_back(to_json(row));
  out << arr.dump(2) << '\n';
  return 0;
}

constexpr const char* kColumns =
    "Output columns:\n"
    "  errterm  CSV x,xi,delta,delta1_over_x\n"
    "  voronoi  CSV N,rms_residual,rms_delta\n"
    "  meansq   JSON {blocks:[{X,X_hi,xi,integral,method,est_error}], fit:{slope,intercept,stderr_slope,beta_hat,points}}\n"
    "           or with --csv: X,xi,integral,method,est_error\n"
    "  zline    JSON summary; with --out-path a CSV t,re_Z,im_Z,abs2_Z of the quadrature nodes\n"
    "  bounds   JSON [{xi,lower_thm2,upper_thm2,upper_thm3,thm3_valid,pointwise_14,thmA}]\n"
    "  coeffs   JSON table statistics\n"
    "CSV files start with one '#' metadata line.\n"
    "Exit codes: 0 ok, 1 invariant violation or runtime failure, 2 usage error.";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rankin-Selberg numerical lab", "rslab"};
  app.footer(kColumns);
  app.require_subcommand(1);

  RunConfig cfg;
  bool use_delta1 = false, csv = false;
  std::vector<double> bound_xis{0.0, 0.25, 0.5, 0.75, 1.0};
  double mu_half = 32.0 / 205.0, theta = 1.5;

  auto add_grid = [&](CLI::App* sc) {
    sc->add_option("--x-lo", cfg.x_lo, "grid start");
    sc->add_option("--x-hi", cfg.x_hi, "grid end");
    sc->add_option("--points", cfg.points, "log-spaced grid points");
  };

  auto* coeffs = app.add_subcommand("coeffs", "build or load the tau cache and print table statistics");
  coeffs->add_option("--n-max", cfg.n_max, "table size")->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
  coeffs->add_option("--cache-path", cfg.cache_path, "tau cache file (loaded if present, else written)");

  auto* errterm = app.add_subcommand("errterm", "Delta(x; xi) and Delta_1(x)/x on a log grid (CSV)");
  errterm->add_option("--n-max", cfg.n_max, "table size");
  errterm->add_option("--cache-path", cfg.cache_path, "tau cache file");
  errterm->add_option("--xi", cfg.xi, "Riesz order in [0, 1]");
  add_grid(errterm);
  errterm->add_option("--out-path", cfg.out_path, "write CSV here instead of stdout");

  auto* voronoi = app.add_subcommand("voronoi", "residual of the truncated Voronoi expansion for N = 2^k (CSV)");
  voronoi->add_option("--n-max", cfg.n_max, "table size");
  voronoi->add_option("--cache-path", cfg.cache_path, "tau cache file");
  voronoi->add_option("--xi", cfg.xi, "Riesz order in [0, 1]");
  add_grid(voronoi);
  voronoi->add_option("--dyadic-from", cfg.dyadic_from, "smallest k in N = 2^k");
  voronoi->add_option("--dyadic-to", cfg.dyadic_to, "largest k in N = 2^k");
  voronoi->add_option("--out-path", cfg.out_path, "write CSV here instead of stdout");

  auto* meansq = app.add_subcommand("meansq", "mean squares over [2^k, 2^{k+1}] and the exponent fit (JSON)");
  meansq->add_option("--n-max", cfg.n_max, "table size");
  meansq->add_option("--cache-path", cfg.cache_path, "tau cache file");
  meansq->add_option("--xi", cfg.xi, "Riesz order in [0, 1]");
  meansq->add_option("--dyadic-from", cfg.dyadic_from, "smallest k");
  meansq->add_option("--dyadic-to", cfg.dyadic_to, "largest k");
  meansq->add_flag("--delta1", use_delta1, "integrate Delta_1^2 instead of Delta^2");
  meansq->add_flag("--csv", csv, "emit the blocks as CSV");
  meansq->add_option("--out-path", cfg.out_path, "write output here instead of stdout");

  auto* zline = app.add_subcommand("zline", "int_1^T |Z(1+it)|^2 dt against its main term (JSON)");
  zline->add_option("--n-max", cfg.n_max, "table size");
  zline->add_option("--cache-path", cfg.cache_path, "tau cache file");
  zline->add_option("--T", cfg.T, "upper limit, at most 1000");
  zline->add_option("--x-trunc", cfg.X_trunc, "split point X of the continuation");
  zline->add_option("--out-path", cfg.out_path, "write node samples as CSV here");

  auto* bounds = app.add_subcommand("bounds", "theoretical exponent bounds (JSON)");
  bounds->add_option("--xi", bound_xis, "one or more xi in [0, 1]");
  bounds->add_option("--mu-half", mu_half, "Lindelof exponent mu(1/2)");
  bounds->add_option("--theta", theta, "mean-square exponent theta");

  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite; exit 1 on any violation");
  verify_cmd->add_option("--n-max", cfg.n_max, "table size")->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
  verify_cmd->add_option("--cache-path", cfg.cache_path, "tau cache file");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*coeffs) return cmd_coeffs(cfg, out);
    if (*errterm) return cmd_errterm(cfg, out);
    if (*voronoi) {
      if (voronoi->count("--dyadic-from") == 0) cfg.dyadic_from = 6;
      if (voronoi->count("--dyadic-to") == 0) cfg.dyadic_to = 13;
      if (voronoi->count("--x-lo") == 0) cfg.x_lo = 1000.0;
      if (voronoi->count("--points") == 0) cfg.points = 400;
      return cmd_voronoi(cfg, out);
    }
    if (*meansq) return cmd_meansq(cfg, use_delta1, csv, out);
    if (*zline) return cmd_zline(cfg, out);
    if (*bounds) return cmd_bounds(bound_xis, mu_half, theta, out);
    if (*verify_cmd) {
      if (verify_cmd->count("--n-max") == 0) cfg.n_max = 10000;
      return verify(cfg, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InsufficientTable& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace rslab::cli
