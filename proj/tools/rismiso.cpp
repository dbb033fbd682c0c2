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

// rismiso: experiment runner.
//
// Exit status: 0 success, 1 unexpected failure, 2 configuration error,
// 3 numerical error, 4 validation failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rismiso/experiment.hpp"

namespace {

enum Exit : int { kOk = 0, kOther = 1, kConfig = 2, kNumerical = 3, kValidation = 4 };

struct Overrides {
    std::string config_path;
    std::string out_dir;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
};

rismiso::ExperimentConfig load(const Overrides& o, bool outage) {
    rismiso::ExperimentConfig config =
        o.config_path.empty() ? rismiso::ExperimentConfig{} : rismiso::load_experiment_config(o.config_path);
    if (o.samples) {
        if (*o.samples == 0) throw rismiso::ConfigError("--samples: must be positive", 0);
        (outage ? config.outage_samples : config.samples) = *o.samples;
    }
    if (o.seed) config.seed = *o.seed;
    if (o.workers) config.workers = *o.workers;
    if (!o.out_dir.empty()) config.output_dir = o.out_dir;
    return config;
}

std::filesystem::path output_path(const rismiso::ExperimentConfig& config, const std::string& name) {
    std::filesystem::create_directories(config.output_dir);
    return config.output_dir / name;
}

int cmd_design(const Overrides& o) {
    const auto config = load(o, false);
    const rismiso::SolutionRecord r = rismiso::run_design(config);
    const auto path = output_path(config, "solution.txt");
    rismiso::write_solution_file(path, r);
    using rismiso::format_double;
    std::cout << "f^H Z f          " << format_double(r.quadratic_objective) << "\n"
              << "mean SNR (bound) " << format_double(r.lower_bound_mean_snr) << "\n"
              << "mean SNR (exact) " << format_double(r.mean_snr_exact) << "\n"
              << "nu               " << format_double(r.nu) << "\n"
              << "sigma            " << format_double(r.sigma) << "\n"
              << "wrote " << path.string() << "\n";
    return kOk;
}

int cmd_outage(const Overrides& o) {
    const auto config = load(o, true);
    const auto path = output_path(config, "outage.csv");
    rismiso::write_csv(path, rismiso::run_outage(config));
    std::cout << "wrote " << path.string() << "\n";
    return kOk;
}

int cmd_sweep(const Overrides& o, rismiso::SweepKind kind) {
    const auto config = load(o, false);
    const auto path = output_path(config, "capacity_vs_" + std::string(rismiso::sweep_name(kind)) + ".csv");
    rismiso::write_csv(path, rismiso::run_capacity_sweep(config, kind));
    std::cout << "wrote " << path.string() << "\n";
    return kOk;
}

int cmd_validate(const Overrides& o) {
    const auto config = load(o, false);
    const rismiso::ValidationReport report = rismiso::run_validate(config);
    const std::string text = report.render();
    const auto path = output_path(config, "validation_report.txt");
    std::ofstream(path) << text;
    std::cout << text << "wrote " << path.string() << "\n";
    return report.passed() ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted MISO beamforming: design, outage and capacity experiments"};
    app.require_subcommand(1);

    Overrides o;
    auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "experiment config file (defaults when omitted)")
            ->check(CLI::ExistingFile);
        sub->add_option("--out", o.out_dir, "output directory (overrides [output] dir)");
        sub->add_option("--samples", o.samples, "Monte Carlo sample count");
        sub->add_option("--seed", o.seed, "RNG seed");
        sub->add_option("--workers", o.workers, "worker threads (0 = all cores)");
    };

    int status = kOk;
    auto bind = [&](const char* name, const char* help, auto fn) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub);
        sub->callback([&status, &o, fn] { status = fn(o); });
    };
    bind("design", "compute the proposed beamformer and RIS phases", cmd_design);
    bind("outage", "analytical and simulated outage probability", cmd_outage);
    bind("capacity-vs-n", "ergodic capacity vs. number of RIS elements",
         [](const Overrides& x) { return cmd_sweep(x, rismiso::SweepKind::N); });
    bind("capacity-vs-mu", "ergodic capacity vs. direct-link strength",
         [](const Overrides& x) { return cmd_sweep(x, rismiso::SweepKind::Mu); });
    bind("capacity-vs-theta", "ergodic capacity vs. departure angle difference",
         [](const Overrides& x) { return cmd_sweep(x, rismiso::SweepKind::Theta); });
    bind("validate", "run the invariant and distribution checks", cmd_validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    } catch (const rismiso::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const rismiso::InvalidParameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const rismiso::Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
    return status;
}
