#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mrc/analysis.hpp"
#include "mrc/core_model.hpp"

namespace mrc {

/// Array description as read from a JSON config file. Engineering units
/// (uH, pF or nF, ohm, MHz) are converted to SI on load; `drive` is stored
/// 0-based although the file uses 1-based element numbers.
///
///   {
///     "coils": [{"L_uH": 10, "C_pF": 150, "R_ohm": 10}, ...],
///     "coupling": {"chain": {"k_nn": 0.14, "decay": "nearest"}}
///              | {"close_packed": {"k": 0.14}}
///              | {"matrix": [[1, 0.14], [0.14, 1]]},
///     "drive": 1,
///     "sweep": {"start_MHz": 3, "stop_MHz": 5.5, "points": 2000, "spacing": "linear"}
///   }
struct ArrayConfig {
  enum class CouplingForm { Matrix, Chain, ClosePacked };

  std::string name;
  std::vector<CoilCircuit> coils;
  CouplingForm form = CouplingForm::Chain;
  Eigen::MatrixXd matrix;  // Matrix form only
  double k = 0.0;          // Chain (k_nn) and ClosePacked
  double decay = kNearestNeighborOnly;
  std::size_t drive = 0;
  std::optional<FrequencyGrid> sweep;

  // Runs the core-model checks; throws validation errors.
  ValidatedArray build() const;
  // Throws ConfigParse for the matrix form, which has no single k.
  CouplingTemplate coupling_template() const;
};

ArrayConfig parse_config(std::string_view json_text);
ArrayConfig load_config(const std::filesystem::path& path);

}  // namespace mrc
