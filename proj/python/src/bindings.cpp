#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toeptik/bench.hpp"
#include "toeptik/io.hpp"
#include "toeptik/solver.hpp"

namespace py = pybind11;
using namespace toeptik;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

CVector to_cvector(const ComplexArray& a) {
  if (a.ndim() != 1) throw ShapeError("expected a one-dimensional array");
  return CVector(a.data(), a.data() + a.size());
}

py::array_t<cplx> to_array(const CVector& v) {
  py::array_t<cplx> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

ProblemSpec validated(ProblemSpec p) {
  p.validate();
  return p;
}

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

SolverConfig solver_config(std::size_t n_lim, double pivot_threshold, const std::optional<std::string>& fill,
                           bool verify) {
  SolverConfig cfg;
  cfg.n_lim = n_lim;
  cfg.pivot_threshold = pivot_threshold;
  if (fill) cfg.fill = parse_fill(*fill);
  cfg.verify = verify;
  return cfg;
}

ExperimentConfig experiment_config(const std::string& variant, const std::vector<std::size_t>& sizes,
                                   std::size_t trials, std::uint64_t seed, std::size_t n_lim,
                                   double pivot_threshold, const std::optional<std::string>& fill) {
  ExperimentConfig cfg;
  cfg.variant = parse_variant(variant);
  cfg.sizes = sizes;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.n_lim = n_lim;
  cfg.pivot_threshold = pivot_threshold;
  if (fill) cfg.fill = parse_fill(*fill);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Superfast Tikhonov-regularized Toeplitz solver";

  static py::exception<ShapeError> shape_error(m, "ShapeError", PyExc_ValueError);
  static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ShapeError& e) {
      py::set_error(shape_error, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical_error, e.what());
    }
  });

  py::class_<ToeplitzSpec>(m, "Toeplitz", "Toeplitz matrix given by a_{-(cols-1)}, ..., a_{rows-1}")
      .def(py::init([](std::size_t rows, std::size_t cols, const ComplexArray& gen) {
             ToeplitzSpec s{rows, cols, to_cvector(gen)};
             s.validate();
             return s;
           }),
           py::arg("rows"), py::arg("cols"), py::arg("gen"))
      .def_static(
          "from_col_row",
          [](const ComplexArray& col, const ComplexArray& row) {
            const CVector c = to_cvector(col), r = to_cvector(row);
            return ToeplitzSpec::from_col_row(c, r);
          },
          py::arg("first_col"), py::arg("first_row"))
      .def_static("identity", &ToeplitzSpec::identity, py::arg("n"))
      .def_readonly("rows", &ToeplitzSpec::rows)
      .def_readonly("cols", &ToeplitzSpec::cols)
      .def_property_readonly("gen", [](const ToeplitzSpec& s) { return to_array(s.gen); })
      .def("dense", [](const ToeplitzSpec& s) { return materialize(s); })
      .def("matvec", [](const ToeplitzSpec& s, const ComplexArray& x) { return to_array(toeplitz_matvec(s, to_cvector(x))); })
      .def("rmatvec",
           [](const ToeplitzSpec& s, const ComplexArray& y) { return to_array(toeplitz_adjoint_matvec(s, to_cvector(y))); })
      .def("__repr__", [](const ToeplitzSpec& s) {
        return "<Toeplitz " + std::to_string(s.rows) + "x" + std::to_string(s.cols) + ">";
      });

  py::class_<HermitianToeplitzSpec>(m, "HermitianToeplitz", "Hermitian Toeplitz matrix given by its first column")
      .def(py::init([](const ComplexArray& first_col) {
             HermitianToeplitzSpec s{static_cast<std::size_t>(first_col.size()), to_cvector(first_col)};
             s.validate();
             return s;
           }),
           py::arg("first_col"))
      .def_readonly("order", &HermitianToeplitzSpec::order)
      .def_property_readonly("gen", [](const HermitianToeplitzSpec& s) { return to_array(s.gen); })
      .def("dense", [](const HermitianToeplitzSpec& s) { return materialize(s); });

  py::class_<ProblemSpec>(m, "Problem")
      .def_static(
          "general",
          [](const ToeplitzSpec& T, const ToeplitzSpec& L, const ComplexArray& b) {
            return validated(ProblemSpec::general(T, L, to_cvector(b)));
          },
          py::arg("T"), py::arg("L"), py::arg("b"))
      .def_static(
          "l2",
          [](const ToeplitzSpec& T, cplx beta, const ComplexArray& b) {
            return validated(ProblemSpec::l2(T, beta, to_cvector(b)));
          },
          py::arg("T"), py::arg("beta"), py::arg("b"))
      .def_static(
          "gramian",
          [](const HermitianToeplitzSpec& G, const ToeplitzSpec& L, const ComplexArray& y) {
            return validated(ProblemSpec::gramian(G, L, to_cvector(y)));
          },
          py::arg("G"), py::arg("L"), py::arg("y"))
      .def_static(
          "random",
          [](const std::string& variant, std::size_t n, std::uint64_t seed, std::size_t m, std::size_t p) {
            const Variant v = parse_variant(variant);
            auto rng = trial_rng(seed, Stream::Oracle, v, n, 0);
            return random_problem(rng, v, n, m, p);
          },
          py::arg("variant"), py::arg("n"), py::arg("seed") = 1, py::arg("m") = 0, py::arg("p") = 0)
      .def_property_readonly("variant", [](const ProblemSpec& p) { return variant_name(p.variant); })
      .def_property_readonly("n", &ProblemSpec::n)
      .def_property_readonly("beta", [](const ProblemSpec& p) { return p.beta; })
      .def("normal_matrix", &dense_normal_matrix)
      .def("normal_rhs", [](const ProblemSpec& p) { return to_array(normal_rhs(p)); })
      .def("apply_normal", [](const ProblemSpec& p, const ComplexArray& x) {
        return to_array(apply_normal_operator(p, to_cvector(x)));
      });

  py::class_<SolveReport>(m, "SolveReport")
      .def_property_readonly("x", [](const SolveReport& r) { return to_array(r.x_hat); })
      .def_readonly("wall_time", &SolveReport::wall_time)
      .def_readonly("relative_residual", &SolveReport::relative_residual)
      .def_readonly("N", &SolveReport::N)
      .def_readonly("extension", &SolveReport::extension)
      .def_property_readonly("diagnostics", [](const SolveReport& r) { return to_python(diagnostics_to_json(r.diagnostics)); })
      .def("to_dict", [](const SolveReport& r) { return to_python(report_to_json(r)); });

  m.def(
      "solve",
      [](const ProblemSpec& problem, std::size_t n_lim, double pivot_threshold, const std::optional<std::string>& fill,
         bool verify) {
        const SolverConfig cfg = solver_config(n_lim, pivot_threshold, fill, verify);
        py::gil_scoped_release release;
        return solve_tikhonov(problem, cfg);
      },
      py::arg("problem"), py::arg("n_lim") = 256, py::arg("pivot_threshold") = 1e-8, py::arg("fill") = py::none(),
      py::arg("verify") = true, "Solve the regularized normal equations by tangential interpolation.");

  m.def(
      "dense_solve", [](const ProblemSpec& p) { return to_array(dense_oracle(p)); }, py::arg("problem"),
      "Reference solution by dense LU of the normal equations.");

  m.def(
      "cg_solve",
      [](const ProblemSpec& p, std::size_t max_iterations, std::optional<double> time_budget, double tolerance) {
        CGConfig cfg{max_iterations, time_budget, tolerance};
        CGResult r;
        {
          py::gil_scoped_release release;
          r = cg_solve(p, cfg);
        }
        py::dict out;
        out["x"] = to_array(r.x);
        out["iterations"] = r.iterations;
        out["converged"] = r.converged;
        out["relative_residual"] = r.relative_residual;
        out["elapsed"] = r.elapsed;
        return out;
      },
      py::arg("problem"), py::arg("max_iterations") = 1000, py::arg("time_budget") = py::none(),
      py::arg("tolerance") = 1e-12);

  m.def(
      "run_complexity",
      [](const std::string& variant, const std::vector<std::size_t>& sizes, std::size_t trials, std::uint64_t seed,
         std::size_t n_lim, double pivot_threshold, const std::optional<std::string>& fill) {
        return to_python(
            complexity_to_json(run_complexity(experiment_config(variant, sizes, trials, seed, n_lim, pivot_threshold, fill))));
      },
      py::arg("variant"), py::arg("sizes"), py::arg("trials") = 10, py::arg("seed") = 1, py::arg("n_lim") = 256,
      py::arg("pivot_threshold") = 1e-8, py::arg("fill") = py::none());

  m.def(
      "run_accuracy",
      [](const std::string& variant, const std::vector<std::size_t>& sizes, std::size_t trials, std::uint64_t seed,
         std::size_t n_lim, double pivot_threshold, const std::optional<std::string>& fill) {
        return to_python(
            accuracy_to_json(run_accuracy(experiment_config(variant, sizes, trials, seed, n_lim, pivot_threshold, fill))));
      },
      py::arg("variant"), py::arg("sizes"), py::arg("trials") = 10, py::arg("seed") = 1, py::arg("n_lim") = 256,
      py::arg("pivot_threshold") = 1e-8, py::arg("fill") = py::none());

  m.def(
      "fit_complexity",
      [](const std::vector<double>& ns, const std::vector<double>& times) {
        const ComplexityFit f = fit_complexity(ns, times);
        return py::make_tuple(f.c1, f.c2, f.r_squared);
      },
      py::arg("ns"), py::arg("times"), "Least-squares fit of t = c1 n log^2 n + c2 n log n; returns (c1, c2, r2).");
}
