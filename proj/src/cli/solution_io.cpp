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

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "rismiso/experiment.hpp"

namespace rismiso {

namespace {

double parse_double(std::string_view text) {
    double v = 0.0;
    const char* begin = text.data();
    if (!text.empty() && text.front() == '+') ++begin;
    if (text == "nan") return std::nan("");
    if (text == "inf" || text == "+inf") return INFINITY;
    if (text == "-inf") return -INFINITY;
    const auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError("malformed number '" + std::string(text) + "'", 0);
    return v;
}

}  // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string format_complex(cdouble value) {
    std::string imag = format_double(value.imag());
    if (imag.front() != '-') imag.insert(imag.begin(), '+');
    return format_double(value.real()) + imag + "j";
}

cdouble parse_complex(std::string_view text) {
    if (text.size() < 2 || text.back() != 'j') throw ConfigError("malformed complex '" + std::string(text) + "'", 0);
    text.remove_suffix(1);
    // The imaginary part starts at the last sign that is not an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = text.size(); i-- > 1;) {
        if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) throw ConfigError("malformed complex '" + std::string(text) + "j'", 0);
    return {parse_double(text.substr(0, split)), parse_double(text.substr(split))};
}

void write_solution_file(const std::filesystem::path& path, const SolutionRecord& record) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write solution file " + path.string(), 0);
    const BeamformerSolution& s = record.solution;
    out << "# rismiso beamformer solution\n";
    out << "scheme = " << scheme_name(s.scheme) << "\n";
    out << "M = " << s.f.size() << "\n";
    out << "N = " << s.psi.size() << "\n";
    for (Eigen::Index m = 0; m < s.f.size(); ++m) out << "f[" << m << "] = " << format_complex(s.f[m]) << "\n";
    for (Eigen::Index n = 0; n < s.psi.size(); ++n)
        out << "psi[" << n << "] = " << format_complex(s.psi[n]) << "\n";
    out << "fhzf = " << format_double(record.quadratic_objective) << "\n";
    out << "lower_bound_mean_snr = " << format_double(record.lower_bound_mean_snr) << "\n";
    out << "mean_snr_exact = " << format_double(record.mean_snr_exact) << "\n";
    out << "nu = " << format_double(record.nu) << "\n";
    out << "sigma = " << format_double(record.sigma) << "\n";
}

SolutionRecord read_solution_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open solution file " + path.string(), 0);
    std::map<std::string, std::string, std::less<>> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) throw ConfigError("solution file line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
        entries[line.substr(0, eq)] = line.substr(eq + 3);
    }
    auto get = [&](const std::string& key) -> const std::string& {
        const auto it = entries.find(key);
        if (it == entries.end()) throw ConfigError("solution file is missing '" + key + "'", 0);
        return it->second;
    };

    SolutionRecord record;
    const int M = static_cast<int>(parse_double(get("M")));
    const int N = static_cast<int>(parse_double(get("N")));
    const std::string& scheme = get("scheme");
    record.solution.scheme = scheme == "maxmean" ? Scheme::MaxMeanSnr
                             : scheme == "maxsnr" ? Scheme::MaxSnr
                                                  : Scheme::Proposed;
    record.solution.f.resize(M);
    record.solution.psi.resize(N);
    for (int m = 0; m < M; ++m) record.solution.f[m] = parse_complex(get("f[" + std::to_string(m) + "]"));
    for (int n = 0; n < N; ++n) record.solution.psi[n] = parse_complex(get("psi[" + std::to_string(n) + "]"));
    record.quadratic_objective = parse_double(get("fhzf"));
    record.lower_bound_mean_snr = parse_double(get("lower_bound_mean_snr"));
    record.mean_snr_exact = parse_double(get("mean_snr_exact"));
    record.nu = parse_double(get("nu"));
    record.sigma = parse_double(get("sigma"));
    return record;
}

}  // namespace rismiso
