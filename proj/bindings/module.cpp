#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nesim/analysis.hpp"
#include "nesim/experiment.hpp"
#include "nesim/integrator.hpp"

namespace py = pybind11;
using namespace nesim;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distributed Nash equilibrium seeking over directed graphs";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_IOError);

  py::enum_<ScalingMode>(m, "ScalingMode")
      .value("BalanceCorrected", ScalingMode::BalanceCorrected)
      .value("PaperLiteral", ScalingMode::PaperLiteral);

  py::enum_<Variant>(m, "Variant")
      .value("Balanced", Variant::Balanced)
      .value("NominalUnbalanced", Variant::NominalUnbalanced)
      .value("Adaptive", Variant::Adaptive);

  py::class_<DiGraph>(m, "DiGraph")
      .def(py::init<Eigen::MatrixXd>(), py::arg("weights"))
      .def_static("ring", &DiGraph::ring, py::arg("n"), py::arg("weight") = 1.0)
      .def_static("complete", &DiGraph::complete, py::arg("n"),
                  py::arg("weight") = 1.0)
      .def_property_readonly("n", &DiGraph::size)
      .def_property_readonly("weights", &DiGraph::weights)
      .def("laplacian", &DiGraph::laplacian)
      .def("strongly_connected", &DiGraph::strongly_connected)
      .def("weight_balanced", &DiGraph::weight_balanced,
           py::arg("tol") = kStructuralTol);

  py::class_<OrthogonalSplit>(m, "OrthogonalSplit")
      .def_readonly("m1", &OrthogonalSplit::m1)
      .def_readonly("m2", &OrthogonalSplit::m2);
  m.def("orthogonal_split", &orthogonal_split, py::arg("n"));

  py::class_<ConnectivityEigenvalues>(m, "ConnectivityEigenvalues")
      .def_readonly("lambda2", &ConnectivityEigenvalues::lambda2)
      .def_readonly("lambdaN", &ConnectivityEigenvalues::lambdaN);
  m.def("connectivity_eigenvalues", &connectivity_eigenvalues, py::arg("L"),
        py::arg("tol") = kStructuralTol);
  m.def("left_eigenvector", &left_eigenvector, py::arg("L"),
        py::arg("tol") = kStructuralTol);
  m.def("scaled_laplacian", &scaled_laplacian, py::arg("L"), py::arg("xi"),
        py::arg("mode") = ScalingMode::BalanceCorrected);

  py::class_<SpectralData>(m, "SpectralData")
      .def_readonly("laplacian", &SpectralData::laplacian)
      .def_readonly("lambda2", &SpectralData::lambda2)
      .def_readonly("lambdaN", &SpectralData::lambdaN)
      .def_readonly("xi", &SpectralData::xi)
      .def_readonly("lambda2_scaled", &SpectralData::lambda2_scaled);
  m.def("analyze_graph", &analyze_graph, py::arg("graph"));

  py::class_<GameConstants>(m, "GameConstants")
      .def_readonly("mono_lower", &GameConstants::mono_lower)
      .def_readonly("lip_F", &GameConstants::lip_F)
      .def_readonly("lip_extF", &GameConstants::lip_extF)
      .def_property_readonly("l", &GameConstants::l);

  py::class_<GameInterface>(m, "GameInterface")
      .def_property_readonly("n", &GameInterface::size)
      .def("cost", &GameInterface::cost)
      .def("partial_gradient", &GameInterface::partial_gradient);

  py::class_<QuadraticGame, GameInterface>(m, "QuadraticGame")
      .def(py::init<std::vector<Eigen::MatrixXd>, std::vector<Eigen::VectorXd>>(),
           py::arg("Q"), py::arg("b"))
      .def("constants", &QuadraticGame::constants)
      .def("nash_equilibrium", &QuadraticGame::nash_equilibrium)
      .def_property_readonly("jacobian", &QuadraticGame::jacobian)
      .def_property_readonly("offset", &QuadraticGame::offset);

  m.def("pseudogradient", &pseudogradient, py::arg("game"), py::arg("z"));
  m.def("extended_pseudogradient", &extended_pseudogradient, py::arg("game"),
        py::arg("Z"));
  m.def("finite_difference_check", &finite_difference_check, py::arg("game"),
        py::arg("z"), py::arg("h") = 1e-6);

  py::class_<SeekerState>(m, "SeekerState")
      .def(py::init<>())
      .def_readwrite("Z", &SeekerState::Z)
      .def_readwrite("Xi", &SeekerState::Xi)
      .def_readwrite("has_xi", &SeekerState::has_xi);

  py::class_<AlgorithmSpec>(m, "AlgorithmSpec")
      .def(py::init<>())
      .def_readwrite("variant", &AlgorithmSpec::variant)
      .def_readwrite("alpha", &AlgorithmSpec::alpha)
      .def_readwrite("scaling_mode", &AlgorithmSpec::scaling_mode)
      .def_readwrite("xi", &AlgorithmSpec::xi);

  m.def("field_balanced", &field_balanced);
  m.def("field_nominal", &field_nominal);
  m.def("estimator_field", &estimator_field);
  m.def("field_adaptive", &field_adaptive);
  m.def("min_gain", &min_gain, py::arg("constants"), py::arg("lambda_"));
  m.def("lyapunov_decay_rate", &lyapunov_decay_rate, py::arg("constants"),
        py::arg("alpha"), py::arg("lambda2"), py::arg("n"));
  m.def("initial_state", &initial_state, py::arg("n"),
        py::arg("z0") = py::none());

  py::class_<IntegrationConfig>(m, "IntegrationConfig")
      .def(py::init<>())
      .def_readwrite("step", &IntegrationConfig::step)
      .def_readwrite("horizon", &IntegrationConfig::horizon)
      .def_readwrite("record_every", &IntegrationConfig::record_every)
      .def_readwrite("stop_tol", &IntegrationConfig::stop_tol);

  py::enum_<StopReason>(m, "StopReason")
      .value("Horizon", StopReason::Horizon)
      .value("Tolerance", StopReason::Tolerance)
      .value("Error", StopReason::Error);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("states", &Trajectory::states)
      .def_readonly("stop_reason", &Trajectory::stop_reason)
      .def_readonly("error_message", &Trajectory::error_message);

  m.def("integrate", &integrate, py::arg("spec"), py::arg("graph"),
        py::arg("game"), py::arg("state0"), py::arg("config"),
        py::arg("z_star") = py::none());

  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("final_ne_error", &ConvergenceReport::final_ne_error)
      .def_readonly("final_consensus_error",
                    &ConvergenceReport::final_consensus_error)
      .def_readonly("fitted_rate", &ConvergenceReport::fitted_rate)
      .def_readonly("fit_quality", &ConvergenceReport::fit_quality)
      .def_readonly("certified_rate", &ConvergenceReport::certified_rate)
      .def_readonly("lyapunov_monotone", &ConvergenceReport::lyapunov_monotone)
      .def_readonly("estimator_error_final",
                    &ConvergenceReport::estimator_error_final);

  m.def("ne_error", &ne_error);
  m.def("consensus_error", &consensus_error);
  m.def("lyapunov_values", &lyapunov_values);
  m.def("fit_exponential_rate",
        [](const std::vector<double>& t, const std::vector<double>& v,
           double tail) {
          RateFit fit = fit_exponential_rate(t, v, tail);
          return py::make_tuple(fit.rate, fit.fit_quality);
        },
        py::arg("times"), py::arg("values"), py::arg("tail_fraction") = 0.5);
  m.def("check_certificate", &check_certificate);

  m.def("load_graph", &load_graph, py::arg("path"));
  m.def("load_game", &load_game, py::arg("path"));
}
