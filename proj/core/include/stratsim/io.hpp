#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <variant>

#include "stratsim/experiments.hpp"

namespace stratsim {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Binary checkpoint: 8-byte magic "STRATSIM", u32 version = 1, u32 model tag
// (1 = vorticity pair, 2 = dispersive pair, 3 = sqg), u32 n, f64 L, f64 kappa,
// f64 time, then per-field little-endian complex f64 coefficients in row-major
// lattice order. The dealias fraction is run configuration, not state; loads
// restore the default 2/3.
using AnyState = std::variant<VorticityState, ZState, SqgState>;

void save_checkpoint(const AnyState& state, const std::filesystem::path& path);
AnyState load_checkpoint(const std::filesystem::path& path);

// 17 significant digits, enough to roundtrip any f64.
std::string format_double(double value);

// records CSV: header row
//   model,epsilon,kappa,n_regularity,T_star,stop_reason,seed,grid_n,L,dt
// and a JSON array with identical keys.
void write_records_csv(std::span<const SweepRecord> records,
                       const std::filesystem::path& path);
void write_records_json(std::span<const SweepRecord> records,
                        const std::filesystem::path& path);

void write_norm_series_csv(std::span<const NormReport> reports,
                           const std::filesystem::path& path);

// Self-contained matplotlib scripts next to the CSVs (--emit-plots).
void write_plot_script(const std::filesystem::path& path,
                       const std::string& csv_name, const std::string& x_column,
                       std::span<const std::string> y_columns, bool log_log);

}  // namespace stratsim
