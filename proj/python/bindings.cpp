#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rslab/coeffs.hpp"
#include "rslab/error.hpp"
#include "rslab/meansq.hpp"
#include "rslab/sums.hpp"
#include "rslab/tau_cache.hpp"
#include "rslab/voronoi.hpp"
#include "rslab/zfun.hpp"

namespace py = pybind11;
using namespace rslab;

namespace {

py::int_ to_py(int128 v) {
  const std::string s = to_string(v);
  return py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 10));
}

template <class T>
py::array_t<double> to_array(std::span<const T> v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  auto w = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < v.size(); ++i) w(static_cast<py::ssize_t>(i)) = static_cast<double>(v[i]);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rankin-Selberg coefficients, error terms, Voronoi sums and Z(s).";

  py::register_exception<InsufficientTable>(m, "InsufficientTable", PyExc_IndexError);
  py::register_exception<OverflowError>(m, "TauOverflowError", PyExc_OverflowError);
  py::register_exception<CorruptCache>(m, "CorruptCache", PyExc_ValueError);
  py::register_exception<PoleError>(m, "PoleError", PyExc_ZeroDivisionError);
  py::register_exception<OutOfDomain>(m, "OutOfDomain", PyExc_ValueError);
  py::register_exception<DivisionSingularity>(m, "DivisionSingularity", PyExc_ZeroDivisionError);
  py::register_exception<EstimationFailure>(m, "EstimationFailure", PyExc_RuntimeError);

  py::class_<TauTable>(m, "TauTable")
      .def_property_readonly("n_max", &TauTable::n_max)
      .def("__len__", &TauTable::n_max)
      .def("__getitem__",
           [](const TauTable& t, std::size_t n) {
             if (n < 1 || n > t.n_max()) throw py::index_error("tau index outside 1..n_max");
             return to_py(t[n]);
           })
      .def("tolist",
           [](const TauTable& t) {
             py::list out;
             for (auto v : t.values()) out.append(to_py(v));
             return out;
           })
      .def(py::self == py::self);

  m.def("tau_table", &tau_table, py::arg("n_max"));
  m.def(
      "hecke_verify",
      [](const TauTable& t, std::size_t pair_limit, std::size_t prime_limit) {
        const HeckeReport r = hecke_verify(t, pair_limit, prime_limit);
        py::dict d;
        d["pair_checks"] = r.pair_checks;
        d["chain_checks"] = r.chain_checks;
        d["bound_checks"] = r.bound_checks;
        d["violations"] = r.violations;
        return d;
      },
      py::arg("tau"), py::arg("pair_limit"), py::arg("prime_limit"));

  py::class_<CoeffTable>(m, "CoeffTable")
      .def_static("from_values", &CoeffTable::from_values, py::arg("c"))
      .def_property_readonly("n_max", &CoeffTable::n_max)
      .def("c",
           [](const CoeffTable& ct, std::size_t n) {
             if (n < 1 || n > ct.n_max()) throw py::index_error("index outside 1..n_max");
             return ct.c(n);
           })
      .def_property_readonly("c_values", [](const CoeffTable& ct) { return to_array(ct.c_values()); })
      .def_property_readonly("a_hat", [](const CoeffTable& ct) { return to_array(ct.a_hat()); })
      .def("prefix_c", [](const CoeffTable& ct, std::size_t n) {
        if (n > ct.n_max()) throw py::index_error("index outside 0..n_max");
        return static_cast<double>(ct.prefix_c(n));
      });

  m.def("rankin_coeffs", &rankin_coeffs, py::arg("tau"));
  m.def("shimura_b", [](const CoeffTable& ct) { return to_array(std::span<const double>(shimura_b(ct).b)); },
        py::arg("ct"));

  py::enum_<ConstantMethod>(m, "ConstantMethod")
      .value("prefix_fit", ConstantMethod::prefix_fit)
      .value("riesz_fit", ConstantMethod::riesz_fit)
      .value("b_series", ConstantMethod::b_series);

  py::class_<MainTermConstant>(m, "MainTermConstant")
      .def(py::init([](double value, double std_error) {
             MainTermConstant c;
             c.value = value;
             c.std_error = std_error;
             return c;
           }),
           py::arg("value"), py::arg("std_error") = 0.0)
      .def_readonly("value", &MainTermConstant::value)
      .def_readonly("stderr", &MainTermConstant::std_error)
      .def_readonly("method", &MainTermConstant::method)
      .def_readonly("fit_range", &MainTermConstant::fit_range)
      .def_readonly("n_max", &MainTermConstant::n_max)
      .def("__repr__", [](const MainTermConstant& c) {
        return "MainTermConstant(value=" + std::to_string(c.value) + ", stderr=" + std::to_string(c.std_error) +
               ", method=" + to_string(c.method) + ")";
      });

  m.def("estimate_main_constant", &estimate_main_constant, py::arg("ct"));
  m.def("main_constant_candidates", &main_constant_candidates, py::arg("ct"));

  py::class_<ErrorTermEvaluator>(m, "ErrorTermEvaluator")
      .def(py::init<const CoeffTable&, const MainTermConstant&, double>(), py::arg("ct"), py::arg("C"),
           py::arg("xi"), py::keep_alive<1, 2>())
      .def(py::init<const CoeffTable&, double, double>(), py::arg("ct"), py::arg("C"), py::arg("xi"),
           py::keep_alive<1, 2>())
      .def_property_readonly("xi", &ErrorTermEvaluator::xi)
      .def_property_readonly("C", &ErrorTermEvaluator::C)
      .def("riesz_error", &ErrorTermEvaluator::riesz_error, py::arg("x"))
      .def("riesz_error_direct", &ErrorTermEvaluator::riesz_error_direct, py::arg("x"))
      .def("delta1", &ErrorTermEvaluator::delta1, py::arg("x"));

  m.def(
      "delta1_identity_scan",
      [](const ErrorTermEvaluator& ev, const std::vector<double>& grid) {
        const IdentityReport r = delta1_identity_scan(ev, grid);
        return py::make_tuple(r.max_stat, r.argmax, r.points);
      },
      py::arg("ev1"), py::arg("grid"));

  m.def(
      "voronoi_sum",
      [](double xi, std::size_t n_trunc, const CoeffTable& ct, double x) {
        return voronoi_sum(VoronoiParams(xi, n_trunc), ct, x);
      },
      py::arg("xi"), py::arg("n_trunc"), py::arg("ct"), py::arg("x"));
  m.def(
      "residual_scan",
      [](const CoeffTable& ct, const ErrorTermEvaluator& ev, const std::vector<double>& xs,
         const std::vector<std::size_t>& Ns) {
        py::list out;
        for (const auto& r : residual_scan(ct, ev, xs, Ns)) out.append(py::make_tuple(r.N, r.rms_residual, r.rms_delta));
        return out;
      },
      py::arg("ct"), py::arg("ev"), py::arg("xs"), py::arg("Ns"));

  m.def("zeta_eval", &zeta_eval, py::arg("s"));
  m.def("chi_factor", &chi_factor, py::arg("s"), py::arg("kappa") = 12);
  m.def("chi_log_slope", &chi_log_slope, py::arg("sigma"), py::arg("t"), py::arg("kappa") = 12);

  py::class_<ZFunction>(m, "ZFunction")
      .def(py::init<const CoeffTable&, const MainTermConstant&>(), py::arg("ct"), py::arg("C"), py::keep_alive<1, 2>())
      .def_property_readonly("tail_constant", &ZFunction::tail_constant)
      .def(
          "__call__",
          [](const ZFunction& z, Complex s, double X) {
            const ZValue v = z(s, X);
            return py::make_tuple(v.value, v.error_bound);
          },
          py::arg("s"), py::arg("X"))
      .def(
          "b_eval",
          [](const ZFunction& z, Complex s, double X) {
            const BTable b = shimura_b(z.coeffs());
            const BValues v = b_eval(s, z, b, X);
            return py::make_tuple(v.series, v.quotient);
          },
          py::arg("s"), py::arg("X"))
      .def(
          "line_mean_square",
          [](const ZFunction& z, double T, double X) {
            const LineMeanSquare r = z_line_mean_square(T, X, z);
            py::dict d;
            d["integral"] = r.integral;
            d["main_term"] = r.main_term;
            d["difference"] = r.difference;
            d["max_ratio_log"] = r.max_ratio_log;
            d["nodes"] = r.nodes;
            return d;
          },
          py::arg("T"), py::arg("X"));

  py::enum_<QuadratureMethod>(m, "QuadratureMethod")
      .value("exact_piecewise", QuadratureMethod::exact_piecewise)
      .value("gauss_panels", QuadratureMethod::gauss_panels);

  py::class_<MeanSquareResult>(m, "MeanSquareResult")
      .def_readonly("X", &MeanSquareResult::X)
      .def_readonly("xi", &MeanSquareResult::xi)
      .def_readonly("integral", &MeanSquareResult::integral)
      .def_readonly("method", &MeanSquareResult::method)
      .def_readonly("est_error", &MeanSquareResult::est_error);

  m.def("mean_square_delta",
        py::overload_cast<double, const ErrorTermEvaluator&, QuadratureMethod>(&mean_square_delta), py::arg("X"),
        py::arg("ev"), py::arg("method"));
  m.def("mean_square_delta", py::overload_cast<double, const ErrorTermEvaluator&>(&mean_square_delta),
        py::arg("X"), py::arg("ev"));
  m.def("mean_square_delta1", &mean_square_delta1, py::arg("X"), py::arg("ev"),
        py::arg("method") = QuadratureMethod::exact_piecewise);

  py::class_<ExponentFit>(m, "ExponentFit")
      .def_readonly("slope", &ExponentFit::slope)
      .def_readonly("intercept", &ExponentFit::intercept)
      .def_readonly("stderr_slope", &ExponentFit::stderr_slope)
      .def_readonly("beta_hat", &ExponentFit::beta_hat)
      .def_readonly("points", &ExponentFit::points);
  m.def(
      "beta_fit", [](const std::vector<MeanSquareResult>& r) { return beta_fit(r); }, py::arg("results"));

  py::class_<BoundsRow>(m, "BoundsRow")
      .def_readonly("xi", &BoundsRow::xi)
      .def_readonly("lower_thm2", &BoundsRow::lower_thm2)
      .def_readonly("upper_thm2", &BoundsRow::upper_thm2)
      .def_readonly("upper_thm3", &BoundsRow::upper_thm3)
      .def_readonly("thm3_valid", &BoundsRow::thm3_valid)
      .def_readonly("pointwise_14", &BoundsRow::pointwise_14)
      .def_readonly("thmA", &BoundsRow::thmA);
  m.def(
      "bounds_table",
      [](const std::vector<double>& xis, double mu_half, double theta) {
        TheoryConstants tc;
        tc.mu_half = mu_half;
        tc.theta = theta;
        return bounds_table(xis, tc);
      },
      py::arg("xis"), py::arg("mu_half") = 32.0 / 205.0, py::arg("theta") = 1.5);

  m.def("write_tau_cache", [](const std::string& path, const TauTable& t) { write_tau_cache(path, t); },
        py::arg("path"), py::arg("tau"));
  m.def("read_tau_cache", [](const std::string& path) { return read_tau_cache(path); }, py::arg("path"));
}
