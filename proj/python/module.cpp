#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ttextra/diagnostics.hpp"
#include "ttextra/solver.hpp"

namespace py = pybind11;
using namespace ttextra;

PYBIND11_MODULE(_ttextra, m) {
  m.doc() = "Two-timescale EXTRA: decentralized non-convex optimization";

  py::register_exception<InfeasibleParameterError>(m, "InfeasibleParameterError");

  py::class_<Graph>(m, "Graph")
      .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("n"),
           py::arg("edges"))
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("edges", &Graph::edges)
      .def("neighbors", &Graph::neighbors, py::arg("i"))
      .def("has_edge", &Graph::has_edge, py::arg("i"), py::arg("j"))
      .def("to_json", &Graph::to_json);

  m.def("ring", &ring, py::arg("n"));
  m.def("erdos_renyi_connected", &erdos_renyi_connected, py::arg("n"),
        py::arg("edge_prob"), py::arg("seed"));
  m.def("is_connected", &is_connected, py::arg("graph"));
  m.def("degrees", &degrees, py::arg("graph"));

  py::class_<MixingMatrix>(m, "MixingMatrix")
      .def_readonly("entries", &MixingMatrix::entries)
      .def_readonly("graph", &MixingMatrix::graph)
      .def_property_readonly("n", &MixingMatrix::n);

  py::class_<EigenDecomposition>(m, "EigenDecomposition")
      .def_readonly("eigenvalues", &EigenDecomposition::eigenvalues)
      .def_readonly("eigenvectors", &EigenDecomposition::eigenvectors);

  py::class_<SpectralCertificate>(m, "SpectralCertificate")
      .def_readonly("eigenvalues_w", &SpectralCertificate::eigenvalues_w)
      .def_readonly("lambda2", &SpectralCertificate::lambda2)
      .def_readonly("lambda_max_diff", &SpectralCertificate::lambda_max_diff)
      .def_readonly("sqrt_a", &SpectralCertificate::sqrt_a)
      .def_readonly("op_norm_i_minus_wtilde",
                    &SpectralCertificate::op_norm_i_minus_wtilde)
      .def_readonly("op_norm_c2_core", &SpectralCertificate::op_norm_c2_core);

  py::class_<ValidationClause>(m, "ValidationClause")
      .def_readonly("name", &ValidationClause::name)
      .def_readonly("pass_", &ValidationClause::pass)
      .def_readonly("value", &ValidationClause::value);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("clauses", &ValidationReport::clauses)
      .def("all_pass", &ValidationReport::all_pass)
      .def("to_json", &ValidationReport::to_json);

  m.def("metropolis", &metropolis, py::arg("graph"));
  m.def("laplacian_based", &laplacian_based, py::arg("graph"), py::arg("tau"));
  m.def("build_w_tilde", &build_w_tilde, py::arg("w"), py::arg("rho"));
  m.def("validate_assumption2", &validate_assumption2, py::arg("w"), py::arg("w_tilde"),
        py::arg("rho"), py::arg("tol") = 1e-9);
  m.def("spectral", &spectral, py::arg("matrix"));
  m.def("psd_sqrt", &psd_sqrt, py::arg("matrix"), py::arg("tol") = 1e-10);
  m.def("certify", &certify, py::arg("w"), py::arg("w_tilde"));

  py::enum_<WeightScheme>(m, "WeightScheme")
      .value("metropolis", WeightScheme::kMetropolis)
      .value("laplacian", WeightScheme::kLaplacian);

  py::class_<StepSizes>(m, "StepSizes")
      .def_readonly("rho", &StepSizes::rho)
      .def_readonly("beta", &StepSizes::beta)
      .def_readonly("l", &StepSizes::l)
      .def_readonly("big_l", &StepSizes::big_l)
      .def_readonly("a", &StepSizes::a)
      .def_readonly("c", &StepSizes::c)
      .def_readonly("rho_lb", &StepSizes::rho_lb)
      .def_readonly("beta_lb", &StepSizes::beta_lb)
      .def_readonly("margin", &StepSizes::margin)
      .def_readonly("lambda2", &StepSizes::lambda2)
      .def_readonly("lambda_max_diff", &StepSizes::lambda_max_diff)
      .def("to_json", &StepSizes::to_json);

  py::class_<SelectOverrides>(m, "SelectOverrides")
      .def(py::init<>())
      .def_readwrite("rho", &SelectOverrides::rho)
      .def_readwrite("beta", &SelectOverrides::beta)
      .def_readwrite("margin", &SelectOverrides::margin)
      .def_readwrite("weight_scheme", &SelectOverrides::weight_scheme)
      .def_readwrite("tau", &SelectOverrides::tau);

  py::class_<SelectedParameters>(m, "SelectedParameters")
      .def_readonly("w", &SelectedParameters::w)
      .def_readonly("w_tilde", &SelectedParameters::w_tilde)
      .def_readonly("cert", &SelectedParameters::cert)
      .def_readonly("steps", &SelectedParameters::steps)
      .def_readonly("assumption2", &SelectedParameters::assumption2);

  m.def("rho_lower_bound", &rho_lower_bound, py::arg("lambda2"), py::arg("l"));
  m.def("beta_lower_bound", &beta_lower_bound, py::arg("w"), py::arg("w_tilde"),
        py::arg("rho"), py::arg("l"), py::arg("a"));
  m.def("choose_a", &choose_a, py::arg("lambda2"), py::arg("rho"), py::arg("l"));
  m.def("select_parameters", &select_parameters, py::arg("graph"), py::arg("l"),
        py::arg("overrides") = SelectOverrides{});

  py::class_<Problem>(m, "Problem")
      .def_readonly("n", &Problem::n)
      .def_readonly("p", &Problem::p)
      .def_readonly("l", &Problem::l)
      .def_readonly("l_is_analytic", &Problem::l_is_analytic)
      .def_readonly("minimizer", &Problem::minimizer);

  m.def("make_regularized_ls", &make_regularized_ls, py::arg("n"), py::arg("p"),
        py::arg("samples"), py::arg("mu"), py::arg("seed"));
  m.def("make_welsch_regression", &make_welsch_regression, py::arg("n"), py::arg("p"),
        py::arg("samples"), py::arg("sigma"), py::arg("seed"));
  m.def("make_convex_quadratic", &make_convex_quadratic, py::arg("n"), py::arg("p"),
        py::arg("seed"));
  m.def("evaluate", &evaluate, py::arg("problem"), py::arg("x"));
  m.def("gradient", &gradient, py::arg("problem"), py::arg("x"));
  m.def("estimate_smoothness", &estimate_smoothness, py::arg("problem"),
        py::arg("samples"), py::arg("radius"), py::arg("seed"));

  py::enum_<SolverForm>(m, "SolverForm")
      .value("agent", SolverForm::kAgent)
      .value("compact", SolverForm::kCompact)
      .value("both", SolverForm::kBoth);

  py::enum_<StopReason>(m, "StopReason")
      .value("converged", StopReason::kConverged)
      .value("max_iters", StopReason::kMaxIters)
      .value("diverged", StopReason::kDiverged);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("max_iters", &RunConfig::max_iters)
      .def_readwrite("record_stride", &RunConfig::record_stride)
      .def_readwrite("stop_tol_consensus", &RunConfig::stop_tol_consensus)
      .def_readwrite("stop_tol_stationarity", &RunConfig::stop_tol_stationarity)
      .def_readwrite("stop_tol_step", &RunConfig::stop_tol_step)
      .def_readwrite("init_seed", &RunConfig::init_seed)
      .def_readwrite("x0", &RunConfig::x0)
      .def_readwrite("form", &RunConfig::form);

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("iter", &TraceRecord::iter)
      .def_readonly("f_value", &TraceRecord::f_value)
      .def_readonly("l_rho_value", &TraceRecord::l_rho_value)
      .def_readonly("p_c_value", &TraceRecord::p_c_value)
      .def_readonly("consensus_err", &TraceRecord::consensus_err)
      .def_readonly("stationarity", &TraceRecord::stationarity)
      .def_readonly("step_norm", &TraceRecord::step_norm)
      .def_readonly("dual_step_norm", &TraceRecord::dual_step_norm)
      .def_readonly("w_norm", &TraceRecord::w_norm)
      .def_readonly("descent_ok", &TraceRecord::descent_ok);

  py::class_<Trace>(m, "Trace")
      .def_readonly("records", &Trace::records)
      .def_readonly("stop", &Trace::stop)
      .def_readonly("iterations", &Trace::iterations)
      .def_readonly("descent_violations", &Trace::descent_violations)
      .def_readonly("max_form_gap", &Trace::max_form_gap)
      .def_readonly("x_final", &Trace::x_final)
      .def_readonly("lambda_final", &Trace::lambda_final)
      .def("to_csv", &Trace::to_csv);

  m.def("gaussian_start", &gaussian_start, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("run", &run, py::arg("problem"), py::arg("w"), py::arg("w_tilde"),
        py::arg("a"), py::arg("steps"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  m.def("consensus_error", &consensus_error, py::arg("x"));
  m.def("stationarity", &stationarity, py::arg("problem"), py::arg("x"));
}
