#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "mrc/analysis.hpp"
#include "mrc/commands.hpp"
#include "mrc/config.hpp"
#include "mrc/csv.hpp"
#include "mrc/eigenmodes.hpp"
#include "mrc/sweep.hpp"
#include "support.hpp"

using namespace mrc;
namespace fs = std::filesystem;

namespace {

const fs::path kPresets = MRC_PRESET_DIR;

ErrorCode parse_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::InvalidArgument;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("mrc_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

fs::path write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path;
}

constexpr const char* kTwoCoil = R"({
  "coils": [{"L_uH": 10, "C_pF": 150, "R_ohm": 10}, {"L_uH": 10, "C_pF": 150, "R_ohm": 10}],
  "coupling": {"matrix": [[1, 0.14], [0.14, 1]]}
})";

}  // namespace

TEST(Config, ParsesUnitsAndDefaults) {
  const ArrayConfig cfg = parse_config(R"({
    "name": "demo",
    "coils": [{"L_uH": 16.7, "C_nF": 1.72, "R_ohm": 3.73}, {"L_uH": 10, "C_pF": 150, "R_ohm": 0}],
    "coupling": {"chain": {"k_nn": 0.1, "decay": 3}},
    "drive": 2,
    "sweep": {"start_MHz": 0.5, "stop_MHz": 1.5, "spacing": "log"}
  })");
  EXPECT_EQ(cfg.name, "demo");
  ASSERT_EQ(cfg.coils.size(), 2u);
  EXPECT_DOUBLE_EQ(cfg.coils[0].inductance, 16.7e-6);
  EXPECT_DOUBLE_EQ(cfg.coils[0].capacitance, 1.72e-9);
  EXPECT_DOUBLE_EQ(cfg.coils[1].capacitance, 150e-12);
  EXPECT_EQ(cfg.coils[1].resistance, 0.0);
  EXPECT_EQ(cfg.form, ArrayConfig::CouplingForm::Chain);
  EXPECT_EQ(cfg.decay, 3.0);
  EXPECT_EQ(cfg.drive, 1u);
  ASSERT_TRUE(cfg.sweep);
  EXPECT_DOUBLE_EQ(cfg.sweep->start_hz, 0.5e6);
  EXPECT_EQ(cfg.sweep->points, 2000u);
  EXPECT_EQ(cfg.sweep->spacing, GridSpacing::Logarithmic);
  EXPECT_EQ(parse_config(kTwoCoil).drive, 0u);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_EQ(parse_error("{"), ErrorCode::ConfigParse);
  EXPECT_EQ(parse_error(R"({"coils": []})"), ErrorCode::ConfigParse);
  EXPECT_EQ(parse_error(R"({"coils": [{"L_uH": 10, "C_pF": 150, "R_ohm": 0}], "coupling": {}})"),
            ErrorCode::ConfigParse);
  EXPECT_EQ(parse_error(R"({"coils": [{"L_uH": 10, "R_ohm": 1}], "coupling": {"close_packed": {"k": 0.1}}})"),
            ErrorCode::ConfigParse);
  EXPECT_EQ(parse_error(R"({"coils": [{"L_uH": 10, "C_pF": 1, "C_nF": 1, "R_ohm": 1}],
                            "coupling": {"close_packed": {"k": 0.1}}})"),
            ErrorCode::ConfigParse);
  EXPECT_EQ(parse_error(R"({"coils": [{"L_uH": 10, "C_pF": 1, "R_ohm": 1}], "coupling": {"close_packed": {"k": 0.1}},
                            "colour": "red"})"),
            ErrorCode::ConfigParse);
  EXPECT_EQ(parse_error(R"({"coils": [{"L_uH": 10, "C_pF": 1, "R_ohm": 1}], "coupling": {"close_packed": {"k": 0.1}},
                            "drive": 2})"),
            ErrorCode::ConfigParse);
  EXPECT_EQ(parse_error(R"({"coils": [{"L_uH": 10, "C_pF": 1, "R_ohm": 1}],
                            "coupling": {"chain": {"k_nn": 0.1}, "close_packed": {"k": 0.1}}})"),
            ErrorCode::ConfigParse);
}

TEST(Config, PhysicalProblemsSurfaceAtBuild) {
  const ArrayConfig cfg = parse_config(R"({
    "coils": [{"L_uH": 10, "C_pF": 150, "R_ohm": 0}, {"L_uH": 10, "C_pF": 150, "R_ohm": 0}],
    "coupling": {"matrix": [[1, 0.2], [0.3, 1]]}
  })");
  try {
    cfg.build();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonSymmetricCoupling);
  }
  EXPECT_THROW(parse_config(kTwoCoil).coupling_template(), Error);
}

TEST(Config, EveryPresetLoadsAndBuilds) {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(kPresets)) {
    if (entry.path().extension() != ".json") continue;
    ++count;
    const ArrayConfig cfg = load_config(entry.path());
    EXPECT_EQ(cfg.name, entry.path().stem().string());
    EXPECT_NO_THROW(cfg.build()) << entry.path();
    EXPECT_TRUE(cfg.sweep.has_value());
  }
  EXPECT_GE(count, 5u);
}

TEST(Csv, NumbersRoundTripToTwelveDigits) {
  test::Gen g(61);
  for (int i = 0; i < 1000; ++i) {
    const double v = g.log_uniform(1e-12, 1e12) * (g.uniform(0, 1) < 0.5 ? -1.0 : 1.0);
    EXPECT_LE(std::abs(parse_number(format_number(v)) - v), 5e-12 * std::abs(v));
  }
  EXPECT_TRUE(std::isnan(parse_number(format_number(std::nan("")))));
  EXPECT_TRUE(std::isinf(parse_number(format_number(INFINITY))));
}

TEST(Csv, SweepTableRoundTrip) {
  const auto array = build_linear_chain(test::fig4_coils(3), 0.14);
  const ModeSet modes = solve_modes(array);
  const SweepResult result = sweep(array, {0, {3e6, 5.5e6, 301}});
  const PeakList peaks = match_peaks_to_modes(locate_peaks(array, 0, {3e6, 5.5e6, 2000}), modes, 0);
  std::stringstream buf;
  write_csv(buf, sweep_table(result, &peaks, &modes));
  const CsvTable back = read_csv(buf);
  ASSERT_EQ(back.rows.size(), 301u);
  EXPECT_EQ(back.header.size(), 3u + 2u * 3u);
  for (std::size_t i = 0; i < back.rows.size(); i += 37) {
    EXPECT_LE(test::rel(back.number(i, "frequency_Hz"), result.frequencies_hz[i]), 1e-11);
    EXPECT_LE(test::rel(back.number(i, "Z_abs_ohm"), std::abs(result.input_impedance[i])), 1e-11);
    EXPECT_LE(test::rel(back.number(i, "V3_abs"), std::abs(result.element_voltages(2, i))), 1e-11);
  }
  std::size_t peak_lines = 0;
  for (const auto& line : back.footer) {
    if (line.rfind("peak,", 0) == 0 && line.find("frequency_Hz") == std::string::npos) ++peak_lines;
  }
  EXPECT_EQ(peak_lines, 3u);
}

TEST(Csv, ModesTableListsNodesOneBased) {
  const ModeSet modes = solve_modes(build_linear_chain(test::fig4_coils(5), 0.14));
  const CsvTable t = modes_table(modes, classify_modes(modes));
  ASSERT_EQ(t.rows.size(), 5u);
  EXPECT_EQ(t.rows[2][t.column("nodes")], "2;4");
  EXPECT_EQ(t.rows[1][t.column("nodes")], "3");
  EXPECT_EQ(t.rows[0][t.column("nodes")], "");
  EXPECT_THROW(t.column("nope"), Error);
}

TEST(Cli, ExitCodesFollowErrorCategory) {
  TempDir dir;
  std::ostringstream out, err;

  cli::ModesOptions modes;
  modes.config = kPresets / "fig4_linear.json";
  EXPECT_EQ(cli::cmd_modes(modes, out, err), cli::kExitOk);
  EXPECT_NE(out.str().find("4109362.96"), std::string::npos);

  modes.config = dir.path() / "missing.json";
  EXPECT_EQ(cli::cmd_modes(modes, out, err), cli::kExitConfig);

  modes.config = write_file(dir.path() / "bad.json", R"({
    "coils": [{"L_uH": 10, "C_pF": 150, "R_ohm": 0}, {"L_uH": 10, "C_pF": 150, "R_ohm": 0}],
    "coupling": {"matrix": [[1, 1.2], [1.2, 1]]}
  })");
  err.str("");
  EXPECT_EQ(cli::cmd_modes(modes, out, err), cli::kExitValidation);
  EXPECT_NE(err.str().find("CouplingOutOfRange"), std::string::npos);

  cli::SweepOptions sw;
  sw.config = kPresets / "fig4_linear.json";
  sw.drive = 4;
  EXPECT_EQ(cli::cmd_sweep(sw, out, err), cli::kExitValidation);

  cli::FitOptions fit;
  fit.config = kPresets / "fig4_linear.json";
  fit.observed_mhz = {3.7, 4.1, 4.6, 5.0};
  EXPECT_EQ(cli::cmd_fit_k(fit, out, err), cli::kExitConfig);

  cli::TwoCoilOptions two;
  two.k = 1.5;
  EXPECT_EQ(cli::cmd_two_coil(two, out, err), cli::kExitValidation);
}

TEST(Cli, SweepWritesCsvAndPlotBesideIt) {
  TempDir dir;
  std::ostringstream out, err;
  cli::SweepOptions sw;
  sw.config = kPresets / "fig4_closepacked.json";
  sw.out = dir.path() / "tri.csv";
  sw.plot = true;
  ASSERT_EQ(cli::cmd_sweep(sw, out, err), cli::kExitOk) << err.str();
  EXPECT_TRUE(fs::exists(dir.path() / "tri.csv"));
  EXPECT_TRUE(fs::exists(dir.path() / "tri_sweep.svg"));
  std::ifstream csv(dir.path() / "tri.csv");
  const CsvTable t = read_csv(csv);
  EXPECT_EQ(t.rows.size(), 2000u);
}

TEST(Cli, DefaultPlotPath) {
  EXPECT_EQ(cli::default_plot_path("cfg/a.json", std::nullopt, "sweep"), fs::path("cfg/a_sweep.svg"));
  EXPECT_EQ(cli::default_plot_path("cfg/a.json", fs::path("out/b.csv"), "damping"),
            fs::path("out/b_damping.svg"));
}

TEST(Cli, FitAndDampingAndTwoCoil) {
  std::ostringstream out, err;
  cli::FitOptions fit;
  fit.config = kPresets / "fig4_linear.json";
  fit.observed_mhz = {3.754463823798, 4.109362960410, 4.588646301150};
  ASSERT_EQ(cli::cmd_fit_k(fit, out, err), cli::kExitOk) << err.str();
  std::istringstream in(out.str());
  const CsvTable t = read_csv(in);
  EXPECT_EQ(t.rows[0][0], "k");
  EXPECT_NEAR(parse_number(t.rows[0][1]), 0.14, 1e-6);

  out.str("");
  cli::DampingOptions d;
  d.config = kPresets / "fig3_damping.json";
  d.resistances = {0.1, 1.0, 10.0};
  ASSERT_EQ(cli::cmd_damping(d, out, err), cli::kExitOk) << err.str();
  std::istringstream din(out.str());
  EXPECT_EQ(read_csv(din).rows.size(), 3u);

  out.str("");
  cli::TwoCoilOptions two;
  two.k_max = 0.3;
  two.steps = 7;
  ASSERT_EQ(cli::cmd_two_coil(two, out, err), cli::kExitOk);
  std::istringstream tin(out.str());
  EXPECT_EQ(read_csv(tin).rows.size(), 7u);
}
