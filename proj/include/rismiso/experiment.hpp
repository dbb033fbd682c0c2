// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The rismiso Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rismiso/analysis.hpp"
#include "rismiso/beamforming.hpp"
#include "rismiso/channel.hpp"
#include "rismiso/error.hpp"

namespace rismiso {

/// Configuration file problem. line() is 0 when the error is not tied to a line.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line) : Error(what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct ThetaSweep {
    double start = 0.0;
    double stop = std::numbers::pi / 2.0;
    double step = std::numbers::pi / 16.0;

    std::vector<double> values() const;
};

/// Everything an experiment run needs. A default-constructed value (or an
/// empty config file) reproduces the reference setting.
struct ExperimentConfig {
    SystemConfig system;  ///< gamma and mu kept in sync with gamma_db / mu_db
    double gamma_db = 0.0;
    double mu_db = 5.0;

    std::size_t samples = 100000;  ///< capacity sweeps and validation
    std::size_t outage_samples = 1000000;
    std::uint64_t seed = 20230501;
    unsigned workers = 0;
    std::vector<Scheme> schemes{Scheme::Proposed, Scheme::MaxMeanSnr, Scheme::MaxSnr};

    std::vector<double> beta_db;  ///< outage thresholds

    std::vector<int> n_values{8, 16, 32, 64};
    std::vector<double> mu_db_values{-10.0, -5.0, 0.0, 5.0, 10.0};
    std::vector<double> mu_sweep_gamma_db{0.0, 10.0};
    ThetaSweep theta;

    QuadratureSpec quadrature;
    std::filesystem::path output_dir = "results";

    ExperimentConfig();
};

/// Parses the TOML-style key/value format. Unknown sections or keys, bad
/// values and out-of-range fields raise ConfigError with the line number.
ExperimentConfig parse_experiment_config(std::string_view text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Default beta grid: 20 dB to 40 dB in 0.5 dB steps.
std::vector<double> default_beta_grid_db();

// ---- Solution files ------------------------------------------------------

struct SolutionRecord {
    BeamformerSolution solution;
    double quadratic_objective = 0.0;  ///< f^H Z f
    double lower_bound_mean_snr = 0.0;
    double mean_snr_exact = 0.0;
    double nu = 0.0;
    double sigma = 0.0;
};

std::string format_double(double value);
std::string format_complex(cdouble value);  ///< "re+imj"
cdouble parse_complex(std::string_view text);

void write_solution_file(const std::filesystem::path& path, const SolutionRecord& record);
SolutionRecord read_solution_file(const std::filesystem::path& path);

// ---- CSV tables -----------------------------------------------------------

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(std::string_view name) const;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

extern const std::vector<std::string> kOutageColumns;
extern const std::vector<std::string> kCapacityColumns;

// ---- Commands -------------------------------------------------------------

enum class SweepKind { N, Mu, Theta };

std::string_view sweep_name(SweepKind kind);

SolutionRecord run_design(const ExperimentConfig& config);
CsvTable run_outage(const ExperimentConfig& config);
CsvTable run_capacity_sweep(const ExperimentConfig& config, SweepKind kind);

struct CheckLine {
    std::string name;
    enum class Status { Pass, Fail, Skip } status = Status::Pass;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckLine> lines;
    bool passed() const;
    std::string render() const;
};

ValidationReport run_validate(const ExperimentConfig& config);

}  // namespace rismiso
