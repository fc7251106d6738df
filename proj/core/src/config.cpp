#include "stratsim/config.hpp"

#include <cmath>
#include <set>

#include "toml.hpp"

namespace stratsim {

namespace {

using detail::TomlTable;
using detail::TomlValue;

class ConfigReader {
 public:
  explicit ConfigReader(TomlTable table) : table_(std::move(table)) {}

  bool has(const std::string& path) {
    return table_.find(path) != table_.end();
  }

  std::string get_string(const std::string& path, std::string fallback) {
    auto* v = take(path);
    if (v == nullptr) return fallback;
    if (!v->is_string()) bad_type(path, "a string");
    return std::get<std::string>(v->data);
  }

  double get_double(const std::string& path, double fallback) {
    auto* v = take(path);
    if (v == nullptr) return fallback;
    if (!v->is_number()) bad_type(path, "a number");
    return v->as_double();
  }

  std::int64_t get_int(const std::string& path, std::int64_t fallback) {
    auto* v = take(path);
    if (v == nullptr) return fallback;
    if (!v->is_integer()) bad_type(path, "an integer");
    return std::get<std::int64_t>(v->data);
  }

  bool get_bool(const std::string& path, bool fallback) {
    auto* v = take(path);
    if (v == nullptr) return fallback;
    if (!v->is_bool()) bad_type(path, "a boolean");
    return std::get<bool>(v->data);
  }

  std::vector<double> get_array(const std::string& path,
                                std::vector<double> fallback) {
    auto* v = take(path);
    if (v == nullptr) return fallback;
    if (!v->is_array()) bad_type(path, "an array of numbers");
    return std::get<std::vector<double>>(v->data);
  }

  void reject_unknown() const {
    for (const auto& [path, value] : table_) {
      if (!used_.count(path)) {
        throw config_error("unknown config key '" + path + "' (line " +
                           std::to_string(value.line) + ")");
      }
    }
  }

 private:
  TomlValue* take(const std::string& path) {
    auto it = table_.find(path);
    if (it == table_.end()) return nullptr;
    used_.insert(path);
    return &it->second;
  }

  [[noreturn]] void bad_type(const std::string& path, const char* want) {
    throw config_error("config key '" + path + "' must be " + want);
  }

  TomlTable table_;
  std::set<std::string> used_;
};

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw config_error("invalid config value for " + field + ": " + why);
}

}  // namespace

std::string to_string(Model model) {
  return model == Model::boussinesq ? "boussinesq" : "sqg";
}

std::string to_string(InitialDataSpec::Profile profile) {
  return profile == InitialDataSpec::Profile::gaussian_pair ? "gaussian_pair"
                                                            : "random_band";
}

void RunConfig::validate() const {
  if (grid.n < 8 || (grid.n & (grid.n - 1)) != 0) {
    invalid("grid.n", "must be a power of two >= 8");
  }
  if (!(grid.length > 0.0)) invalid("grid.L", "must be positive");
  if (!(grid.dealias_fraction > 0.0) || grid.dealias_fraction > 1.0) {
    invalid("grid.dealias_fraction", "must lie in (0,1]");
  }
  if (!(kappa > 0.0)) invalid("physics.kappa", "must be positive");
  if (!(initial_data.epsilon > 0.0)) {
    invalid("initial_data.epsilon", "must be positive");
  }
  if (!(initial_data.n_regularity > 3.0)) {
    invalid("initial_data.n_regularity", "must exceed 3");
  }
  if (stepper.dt < 0.0) invalid("stepper.dt", "must be positive when given");
  if (stepper.dt == 0.0 &&
      (!(stepper.cfl_safety > 0.0) || stepper.cfl_safety >= 1.0)) {
    invalid("stepper.cfl_safety", "must lie in (0,1)");
  }
  if (!(stepper.t_end > 0.0)) invalid("stepper.t_end", "must be positive");
  if (stepper.diagnostic_stride < 1) {
    invalid("stepper.diagnostic_stride", "must be >= 1");
  }
  if (!(experiment.hn_doubling_factor > 1.0)) {
    invalid("experiment.hn_doubling_factor", "must exceed 1");
  }
  if (!(experiment.bootstrap_threshold > 0.0)) {
    invalid("experiment.bootstrap_threshold", "must be positive");
  }
  if (!(experiment.horizon_factor > 0.0)) {
    invalid("experiment.horizon_factor", "must be positive");
  }
  for (double e : experiment.eps_axis) {
    if (!(e > 0.0)) invalid("experiment.eps_axis", "entries must be positive");
  }
  for (double k : experiment.kappa_axis) {
    if (!(k > 0.0)) invalid("experiment.kappa_axis", "entries must be positive");
  }
  if (!(experiment.eps_ref > 0.0)) invalid("experiment.eps_ref", "must be positive");
  if (!(experiment.kappa_ref > 0.0)) {
    invalid("experiment.kappa_ref", "must be positive");
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  ConfigReader reader(detail::parse_toml_file(path));
  RunConfig cfg;

  const std::string model = reader.get_string("model", "boussinesq");
  if (model == "boussinesq") {
    cfg.model = Model::boussinesq;
  } else if (model == "sqg") {
    cfg.model = Model::sqg;
  } else {
    invalid("model", "must be \"boussinesq\" or \"sqg\"");
  }

  cfg.grid.n = static_cast<int>(reader.get_int("grid.n", cfg.grid.n));
  cfg.grid.length = reader.get_double("grid.L", cfg.grid.length);
  cfg.grid.dealias_fraction =
      reader.get_double("grid.dealias_fraction", cfg.grid.dealias_fraction);

  // "kappa" and "epsilon" are accepted at top level as shorthands.
  cfg.kappa = reader.get_double("kappa", cfg.kappa);
  cfg.kappa = reader.get_double("physics.kappa", cfg.kappa);
  cfg.initial_data.epsilon =
      reader.get_double("epsilon", cfg.initial_data.epsilon);
  cfg.initial_data.epsilon =
      reader.get_double("initial_data.epsilon", cfg.initial_data.epsilon);

  const std::string profile = reader.get_string(
      "initial_data.profile", to_string(cfg.initial_data.profile));
  if (profile == "gaussian_pair") {
    cfg.initial_data.profile = InitialDataSpec::Profile::gaussian_pair;
  } else if (profile == "random_band") {
    cfg.initial_data.profile = InitialDataSpec::Profile::random_band;
  } else {
    invalid("initial_data.profile",
            "must be \"gaussian_pair\" or \"random_band\"");
  }
  cfg.initial_data.n_regularity = reader.get_double(
      "initial_data.n_regularity", cfg.initial_data.n_regularity);
  cfg.initial_data.seed = static_cast<std::uint64_t>(reader.get_int(
      "initial_data.seed", static_cast<std::int64_t>(cfg.initial_data.seed)));

  const std::string scheme = reader.get_string("stepper.scheme", "ifrk4");
  if (scheme == "ifrk4") {
    cfg.stepper.scheme = StepperConfig::Scheme::ifrk4;
  } else if (scheme == "rk4") {
    cfg.stepper.scheme = StepperConfig::Scheme::rk4;
  } else {
    invalid("stepper.scheme", "must be \"rk4\" or \"ifrk4\"");
  }
  cfg.stepper.dt = reader.get_double("stepper.dt", cfg.stepper.dt);
  cfg.stepper.cfl_safety =
      reader.get_double("stepper.cfl_safety", cfg.stepper.cfl_safety);
  cfg.stepper.t_end = reader.get_double("stepper.t_end", cfg.stepper.t_end);
  cfg.stepper.diagnostic_stride = static_cast<int>(
      reader.get_int("stepper.diagnostic_stride", cfg.stepper.diagnostic_stride));
  cfg.stepper.nonlinearity_enabled = reader.get_bool(
      "stepper.nonlinearity_enabled", cfg.stepper.nonlinearity_enabled);

  cfg.experiment.hn_doubling_factor = reader.get_double(
      "experiment.hn_doubling_factor", cfg.experiment.hn_doubling_factor);
  cfg.experiment.bootstrap_threshold = reader.get_double(
      "experiment.bootstrap_threshold", cfg.experiment.bootstrap_threshold);
  cfg.experiment.horizon_factor = reader.get_double(
      "experiment.horizon_factor", cfg.experiment.horizon_factor);
  cfg.experiment.eps_axis =
      reader.get_array("experiment.eps_axis", cfg.experiment.eps_axis);
  cfg.experiment.kappa_axis =
      reader.get_array("experiment.kappa_axis", cfg.experiment.kappa_axis);
  cfg.experiment.eps_ref =
      reader.get_double("experiment.eps_ref", cfg.experiment.eps_ref);
  cfg.experiment.kappa_ref =
      reader.get_double("experiment.kappa_ref", cfg.experiment.kappa_ref);

  cfg.out_dir = reader.get_string("output.dir", cfg.out_dir);
  cfg.emit_plots = reader.get_bool("output.emit_plots", cfg.emit_plots);

  reader.reject_unknown();
  cfg.validate();
  return cfg;
}

}  // namespace stratsim
