#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "mrc/analysis.hpp"
#include "mrc/config.hpp"
#include "mrc/core_model.hpp"
#include "mrc/eigenmodes.hpp"
#include "mrc/sweep.hpp"
#include "mrc/two_coil.hpp"

namespace py = pybind11;
using namespace mrc;

namespace {

FrequencyGrid grid(double start_hz, double stop_hz, std::size_t points, bool log) {
  return {start_hz, stop_hz, points, log ? GridSpacing::Logarithmic : GridSpacing::Linear};
}

CouplingTemplate::Layout layout_from(const std::string& name) {
  if (name == "chain") return CouplingTemplate::Layout::LinearChain;
  if (name == "close_packed") return CouplingTemplate::Layout::ClosePacked;
  throw Error(ErrorCode::InvalidArgument, "layout must be 'chain' or 'close_packed'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Resonant modes and impedance spectra of magnetically coupled LC coil arrays";

  py::register_exception<Error>(m, "MrcError", PyExc_ValueError);

  py::class_<CoilCircuit>(m, "CoilCircuit")
      .def(py::init<double, double, double>(), py::arg("inductance"), py::arg("capacitance"),
           py::arg("resistance") = 0.0)
      .def_readwrite("inductance", &CoilCircuit::inductance)
      .def_readwrite("capacitance", &CoilCircuit::capacitance)
      .def_readwrite("resistance", &CoilCircuit::resistance)
      .def("natural_omega", &CoilCircuit::natural_omega)
      .def("__repr__", [](const CoilCircuit& c) {
        return "CoilCircuit(L=" + std::to_string(c.inductance) + ", C=" +
               std::to_string(c.capacitance) + ", R=" + std::to_string(c.resistance) + ")";
      });

  py::class_<ValidatedArray>(m, "Array")
      .def_property_readonly("coils", &ValidatedArray::coils)
      .def_property_readonly("coupling", &ValidatedArray::coupling)
      .def("__len__", &ValidatedArray::size);

  m.def("validate_array",
        [](std::vector<CoilCircuit> coils, Eigen::MatrixXd k) {
          return validate_array({std::move(coils), std::move(k)});
        },
        py::arg("coils"), py::arg("coupling"));
  m.def("build_linear_chain",
        [](const std::vector<CoilCircuit>& coils, double k_nn, double decay) {
          return build_linear_chain(coils, k_nn, decay);
        },
        py::arg("coils"), py::arg("k_nn"), py::arg("decay") = kNearestNeighborOnly);
  m.def("build_close_packed",
        [](const std::vector<CoilCircuit>& coils, double k) { return build_close_packed(coils, k); },
        py::arg("coils"), py::arg("k"));
  m.def("with_resistance", &with_resistance, py::arg("array"), py::arg("resistance"));
  m.def("natural_frequencies", &natural_frequencies, py::arg("array"));

  py::class_<ArrayConfig>(m, "ArrayConfig")
      .def_readonly("name", &ArrayConfig::name)
      .def_readonly("drive", &ArrayConfig::drive)
      .def_property_readonly("sweep_hz",
                             [](const ArrayConfig& c) -> py::object {
                               if (!c.sweep) return py::none();
                               return py::make_tuple(c.sweep->start_hz, c.sweep->stop_hz,
                                                     c.sweep->points);
                             })
      .def("build", &ArrayConfig::build);
  m.def("load_config", &load_config, py::arg("path"));
  m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));

  py::class_<SplitPair>(m, "SplitPair")
      .def_readonly("omega_plus", &SplitPair::omega_plus)
      .def_readonly("omega_minus", &SplitPair::omega_minus);
  m.def("identical_coupled_frequencies", &identical_coupled_frequencies, py::arg("inductance"),
        py::arg("capacitance"), py::arg("k"));
  m.def("coupled_frequencies_general", &coupled_frequencies_general, py::arg("coil1"),
        py::arg("coil2"), py::arg("k"));
  m.def("estimate_k_from_split",
        [](double omega_a, double omega_b) { return estimate_k_from_split({omega_a, omega_b}); },
        py::arg("omega_a"), py::arg("omega_b"));

  py::class_<ModeSet>(m, "ModeSet")
      .def_readonly("frequencies_hz", &ModeSet::frequencies_hz)
      .def_readonly("eigenvalues", &ModeSet::eigenvalues)
      .def_readonly("mode_shapes", &ModeSet::mode_shapes)
      .def_readonly("degeneracy_groups", &ModeSet::degeneracy_groups)
      .def("__len__", &ModeSet::size);
  m.def("solve_modes", &solve_modes, py::arg("array"));
  m.def("predicted_peak_count", &predicted_peak_count, py::arg("modes"), py::arg("drive"),
        py::arg("node_tolerance") = kDefaultNodeTolerance);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("driven", &SweepResult::driven)
      .def_readonly("frequencies_hz", &SweepResult::frequencies_hz)
      .def_readonly("input_impedance", &SweepResult::input_impedance)
      .def_readonly("element_currents", &SweepResult::element_currents)
      .def_readonly("element_voltages", &SweepResult::element_voltages)
      .def_readonly("singular", &SweepResult::singular)
      .def("magnitude", &SweepResult::magnitude)
      .def("__len__", &SweepResult::size);
  m.def("sweep",
        [](const ValidatedArray& a, std::size_t driven, double start_hz, double stop_hz,
           std::size_t points, bool log, unsigned threads) {
          py::gil_scoped_release release;
          return sweep(a, {driven, grid(start_hz, stop_hz, points, log)}, threads);
        },
        py::arg("array"), py::arg("driven"), py::arg("start_hz"), py::arg("stop_hz"),
        py::arg("points") = 2000, py::arg("log") = false, py::arg("threads") = 0);
  m.def("input_impedance", &input_impedance, py::arg("array"), py::arg("driven"), py::arg("omega"));
  m.def("transfer_impedance", &transfer_impedance, py::arg("array"), py::arg("source"),
        py::arg("target"), py::arg("omega"));

  py::class_<Peak>(m, "Peak")
      .def_readonly("frequency_hz", &Peak::frequency_hz)
      .def_readonly("magnitude", &Peak::magnitude)
      .def_readonly("prominence", &Peak::prominence)
      .def_readonly("matched_mode", &Peak::matched_mode)
      .def_readonly("deviation", &Peak::deviation);
  m.def("locate_peaks",
        [](const ValidatedArray& a, std::size_t driven, double start_hz, double stop_hz,
           std::size_t points, bool match) {
          PeakSearchOptions options;
          options.points = points;
          PeakList peaks = locate_peaks(a, driven, grid(start_hz, stop_hz, points, false), options);
          if (match) peaks = match_peaks_to_modes(std::move(peaks), solve_modes(a), driven);
          return peaks.peaks;
        },
        py::arg("array"), py::arg("driven"), py::arg("start_hz"), py::arg("stop_hz"),
        py::arg("points") = 2000, py::arg("match") = true);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("k", &FitResult::k)
      .def_readonly("residual", &FitResult::residual)
      .def_property_readonly("method",
                             [](const FitResult& f) {
                               return f.method == FitResult::Method::SplitFormula ? "split"
                                                                                 : "least_squares";
                             })
      .def_readonly("model_frequencies_hz", &FitResult::model_frequencies_hz);
  m.def("fit_coupling",
        [](const std::vector<double>& observed_hz, std::vector<CoilCircuit> coils,
           const std::string& layout, double decay, double k_low, double k_high) {
          const CouplingTemplate t{std::move(coils), layout_from(layout), decay};
          return fit_coupling(observed_hz, t, k_low, k_high);
        },
        py::arg("observed_hz"), py::arg("coils"), py::arg("layout") = "chain",
        py::arg("decay") = kNearestNeighborOnly, py::arg("k_low") = 1e-4, py::arg("k_high") = 0.99);

  m.attr("NEAREST_NEIGHBOR_ONLY") = kNearestNeighborOnly;
}
