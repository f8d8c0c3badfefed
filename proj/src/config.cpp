#include "mrc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#if __has_include(<json.hpp>)
#include <json.hpp>
#else
#include <nlohmann/json.hpp>
#endif

namespace mrc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ConfigParse, where + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where, std::set<std::string> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

double number(const json& value, const std::string& where) {
  if (!value.is_number()) fail(where, "must be a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) fail(where, "must be finite");
  return v;
}

std::size_t count(const json& value, const std::string& where) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    fail(where, "must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

CoilCircuit parse_coil(const json& node, const std::string& where) {
  if (!node.is_object()) fail(where, "must be an object");
  reject_unknown(node, where, {"L_uH", "C_pF", "C_nF", "R_ohm"});
  CoilCircuit coil;
  coil.inductance = number(require(node, "L_uH", where), where + ".L_uH") * 1e-6;
  const bool pf = node.contains("C_pF");
  const bool nf = node.contains("C_nF");
  if (pf == nf) fail(where, "exactly one of C_pF or C_nF is required");
  coil.capacitance = pf ? number(node["C_pF"], where + ".C_pF") * 1e-12
                        : number(node["C_nF"], where + ".C_nF") * 1e-9;
  coil.resistance = number(require(node, "R_ohm", where), where + ".R_ohm");
  return coil;
}

void parse_coupling(const json& node, ArrayConfig& cfg) {
  const std::string where = "coupling";
  if (!node.is_object()) fail(where, "must be an object");
  reject_unknown(node, where, {"matrix", "chain", "close_packed"});
  if (node.size() != 1) fail(where, "exactly one of matrix, chain or close_packed is required");

  if (node.contains("matrix")) {
    const auto& rows = node["matrix"];
    const std::string w = where + ".matrix";
    if (!rows.is_array()) fail(w, "must be an array of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    cfg.form = ArrayConfig::CouplingForm::Matrix;
    cfg.matrix.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      const std::string wr = w + "[" + std::to_string(i) + "]";
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
        fail(wr, "must be a row of " + std::to_string(n) + " numbers");
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        cfg.matrix(i, j) = number(row[static_cast<std::size_t>(j)], wr + "[" + std::to_string(j) + "]");
      }
    }
  } else if (node.contains("chain")) {
    const auto& chain = node["chain"];
    const std::string w = where + ".chain";
    if (!chain.is_object()) fail(w, "must be an object");
    reject_unknown(chain, w, {"k_nn", "decay"});
    cfg.form = ArrayConfig::CouplingForm::Chain;
    cfg.k = number(require(chain, "k_nn", w), w + ".k_nn");
    if (chain.contains("decay")) {
      const auto& decay = chain["decay"];
      if (decay.is_string()) {
        if (decay.get<std::string>() != "nearest") fail(w + ".decay", "must be a number or \"nearest\"");
      } else {
        cfg.decay = number(decay, w + ".decay");
      }
    }
  } else {
    const auto& cp = node["close_packed"];
    const std::string w = where + ".close_packed";
    if (!cp.is_object()) fail(w, "must be an object");
    reject_unknown(cp, w, {"k"});
    cfg.form = ArrayConfig::CouplingForm::ClosePacked;
    cfg.k = number(require(cp, "k", w), w + ".k");
  }
}

FrequencyGrid parse_sweep(const json& node) {
  const std::string where = "sweep";
  if (!node.is_object()) fail(where, "must be an object");
  reject_unknown(node, where, {"start_MHz", "stop_MHz", "points", "spacing"});
  FrequencyGrid grid;
  grid.start_hz = number(require(node, "start_MHz", where), where + ".start_MHz") * 1e6;
  grid.stop_hz = number(require(node, "stop_MHz", where), where + ".stop_MHz") * 1e6;
  grid.points = node.contains("points") ? count(node["points"], where + ".points") : 2000;
  if (node.contains("spacing")) {
    const auto& s = node["spacing"];
    const std::string text = s.is_string() ? s.get<std::string>() : "";
    if (text == "linear") {
      grid.spacing = GridSpacing::Linear;
    } else if (text == "log" || text == "logarithmic") {
      grid.spacing = GridSpacing::Logarithmic;
    } else {
      fail(where + ".spacing", "must be \"linear\" or \"log\"");
    }
  }
  return grid;
}

}  // namespace

ArrayConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigParse, std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) fail("<root>", "must be an object");
  reject_unknown(root, "", {"name", "notes", "coils", "coupling", "drive", "sweep"});

  ArrayConfig cfg;
  if (root.contains("name")) {
    if (!root["name"].is_string()) fail("name", "must be a string");
    cfg.name = root["name"].get<std::string>();
  }

  const auto& coils = require(root, "coils", "");
  if (!coils.is_array() || coils.empty()) fail("coils", "must be a non-empty array");
  for (std::size_t i = 0; i < coils.size(); ++i) {
    cfg.coils.push_back(parse_coil(coils[i], "coils[" + std::to_string(i) + "]"));
  }

  parse_coupling(require(root, "coupling", ""), cfg);

  if (root.contains("drive")) {
    const std::size_t drive = count(root["drive"], "drive");
    if (drive < 1) fail("drive", "element numbers start at 1");
    if (drive > cfg.coils.size()) {
      fail("drive", "element " + std::to_string(drive) + " outside array of " +
                        std::to_string(cfg.coils.size()));
    }
    cfg.drive = drive - 1;
  }
  if (root.contains("sweep")) cfg.sweep = parse_sweep(root["sweep"]);
  return cfg;
}

ArrayConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParse, "cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  ArrayConfig cfg = parse_config(text.str());
  if (cfg.name.empty()) cfg.name = path.stem().string();
  return cfg;
}

ValidatedArray ArrayConfig::build() const {
  if (drive >= coils.size()) {
    throw Error(ErrorCode::InvalidArgument, "drive element " + std::to_string(drive + 1) +
                                                " outside array of " + std::to_string(coils.size()));
  }
  if (sweep) sweep->validate();
  switch (form) {
    case CouplingForm::Matrix:
      return validate_array({coils, matrix});
    case CouplingForm::Chain:
      return build_linear_chain(coils, k, decay);
    case CouplingForm::ClosePacked:
      return build_close_packed(coils, k);
  }
  throw Error(ErrorCode::ConfigParse, "unknown coupling form");
}

CouplingTemplate ArrayConfig::coupling_template() const {
  switch (form) {
    case CouplingForm::Chain:
      return {coils, CouplingTemplate::Layout::LinearChain, decay};
    case CouplingForm::ClosePacked:
      return {coils, CouplingTemplate::Layout::ClosePacked, kNearestNeighborOnly};
    case CouplingForm::Matrix:
      break;
  }
  throw Error(ErrorCode::ConfigParse,
              "coupling.matrix: fitting needs a chain or close_packed layout with a single k");
}

}  // namespace mrc
