#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stratsim/grid.hpp"
#include "stratsim/stepper.hpp"

namespace stratsim {

// Configuration or validation failure; the CLI maps this to exit code 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Model { boussinesq, sqg };
std::string to_string(Model model);

struct InitialDataSpec {
  enum class Profile { gaussian_pair, random_band };
  Profile profile = Profile::gaussian_pair;
  double epsilon = 0.2;      // combined H^n size of the data
  double n_regularity = 3.5;
  std::uint64_t seed = 12345;
};
std::string to_string(InitialDataSpec::Profile profile);

struct ExperimentConfig {
  double hn_doubling_factor = 2.0;   // stop when ||.||_{H^n} >= factor * eps
  double bootstrap_threshold = 1.0;  // stop when int ||Z||_{B^1_inf_1} >= this
  double horizon_factor = 50.0;      // horizon = factor * eps^{-4/3} kappa^{1/3}
  std::vector<double> eps_axis = {0.4, 0.28, 0.2, 0.14, 0.1};
  std::vector<double> kappa_axis = {1.0, 2.0, 4.0, 8.0};
  double eps_ref = 0.3;    // epsilon used along the kappa axis
  double kappa_ref = 1.0;  // kappa used along the epsilon axis
};

struct RunConfig {
  Model model = Model::boussinesq;
  GridSpec grid{256, 20.0 * pi, 2.0 / 3.0};
  double kappa = 1.0;
  InitialDataSpec initial_data;
  StepperConfig stepper;
  ExperimentConfig experiment;
  std::string out_dir = "out";
  bool emit_plots = false;

  void validate() const;  // throws config_error naming the offending field
};

// Parses a TOML config file, applies defaults, rejects unknown keys and
// re-validates every cross-field constraint.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace stratsim
