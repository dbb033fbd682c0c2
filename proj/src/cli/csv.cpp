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

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rismiso/experiment.hpp"

namespace rismiso {

const std::vector<std::string> kOutageColumns = {
    "beta_db",         "pout_analytical", "pout_mc_proposed", "se_proposed",
    "pout_mc_maxmean", "se_maxmean",      "pout_mc_maxsnr",   "se_maxsnr"};

const std::vector<std::string> kCapacityColumns = {
    "sweep_value",   "gamma_db",      "ec_analytical_proposed", "ec_mc_proposed", "se_proposed",
    "ec_mc_maxmean", "se_maxmean",    "ec_mc_maxsnr",           "se_maxsnr"};

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw ConfigError("CSV has no column '" + std::string(name) + "'", 0);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string(), 0);
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << "\n";
    }
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string(), 0);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path.string() + " is empty", 0);
    {
        std::istringstream header(line);
        std::string cell;
        while (std::getline(header, cell, ',')) table.header.push_back(cell);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            if (cell == "nan") {
                row.push_back(std::nan(""));
                continue;
            }
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw ConfigError(path.string() + ": malformed cell '" + cell + "'", 0);
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace rismiso
