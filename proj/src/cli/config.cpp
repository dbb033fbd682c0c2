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
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "rismiso/experiment.hpp"

namespace rismiso {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Drops a trailing '#' comment that is not inside a string.
std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

class LineContext {
public:
    LineContext(int line, std::string key) : line_(line), key_(std::move(key)) {}

    [[noreturn]] void fail(const std::string& message) const {
        throw ConfigError("line " + std::to_string(line_) + ": " + key_ + ": " + message, line_);
    }

    // Number, "inf", "pi", or a product/quotient chain such as 8*pi/5.
    double number(std::string_view text) const {
        text = trim(text);
        if (text.empty()) fail("expected a number");
        double value = 0.0;
        char op = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t next = text.find_first_of("*/", pos);
            const std::string_view token =
                trim(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
            const double operand = atom(token);
            value = op == 0 ? operand : op == '*' ? value * operand : value / operand;
            if (next == std::string_view::npos) break;
            op = text[next];
            pos = next + 1;
        }
        if (std::isnan(value)) fail("not a number");
        return value;
    }

    double finite_number(std::string_view text) const {
        const double v = number(text);
        if (!std::isfinite(v)) fail("must be finite");
        return v;
    }

    long long integer(std::string_view text) const {
        text = trim(text);
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size()) fail("expected an integer, got '" + std::string(text) + "'");
        return v;
    }

    std::string string(std::string_view text) const {
        text = trim(text);
        if (text.size() < 2 || text.front() != '"' || text.back() != '"') fail("expected a quoted string");
        return std::string(text.substr(1, text.size() - 2));
    }

    std::vector<std::string_view> array(std::string_view text) const {
        text = trim(text);
        if (text.size() < 2 || text.front() != '[' || text.back() != ']') fail("expected an array [a, b, ...]");
        std::vector<std::string_view> items;
        std::string_view body = trim(text.substr(1, text.size() - 2));
        while (!body.empty()) {
            const auto comma = body.find(',');
            items.push_back(trim(body.substr(0, comma)));
            if (items.back().empty()) fail("empty array element");
            if (comma == std::string_view::npos) break;
            body = trim(body.substr(comma + 1));
        }
        return items;
    }

private:
    double atom(std::string_view token) const {
        if (token == "pi") return std::numbers::pi;
        if (token == "inf" || token == "+inf") return std::numeric_limits<double>::infinity();
        if (token == "-inf") return -std::numeric_limits<double>::infinity();
        double v = 0.0;
        const char* begin = token.data();
        if (!token.empty() && token.front() == '+') ++begin;
        const auto [ptr, ec] = std::from_chars(begin, token.data() + token.size(), v);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
            fail("expected a number, got '" + std::string(token) + "'");
        return v;
    }

    int line_;
    std::string key_;
};

Scheme parse_scheme(const LineContext& ctx, std::string_view name) {
    if (name == "proposed") return Scheme::Proposed;
    if (name == "maxmean") return Scheme::MaxMeanSnr;
    if (name == "maxsnr") return Scheme::MaxSnr;
    ctx.fail("unknown scheme '" + std::string(name) + "' (expected proposed, maxmean or maxsnr)");
}

using Setter = std::function<void(ExperimentConfig&, const LineContext&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"system.M", [](auto& c, const auto& x, auto v) {
             const auto n = x.integer(v);
             if (n < 1) x.fail("must be at least 1");
             c.system.M = static_cast<int>(n);
         }},
        {"system.N", [](auto& c, const auto& x, auto v) {
             const auto n = x.integer(v);
             if (n < 1) x.fail("must be at least 1");
             c.system.N = static_cast<int>(n);
         }},
        {"system.K", [](auto& c, const auto& x, auto v) {
             const double k = x.number(v);
             if (!(k >= 0.0)) x.fail("must be nonnegative (linear Rician factor)");
             c.system.K = k;
         }},
        {"system.theta_dd", [](auto& c, const auto& x, auto v) { c.system.theta_dd = x.finite_number(v); }},
        {"system.theta_di1", [](auto& c, const auto& x, auto v) { c.system.theta_di1 = x.finite_number(v); }},
        {"system.theta_di2", [](auto& c, const auto& x, auto v) { c.system.theta_di2 = x.finite_number(v); }},
        {"system.theta_ai1", [](auto& c, const auto& x, auto v) { c.system.theta_ai1 = x.finite_number(v); }},
        {"system.gamma_db", [](auto& c, const auto& x, auto v) { c.gamma_db = x.finite_number(v); }},
        {"system.mu_db", [](auto& c, const auto& x, auto v) { c.mu_db = x.finite_number(v); }},

        {"simulation.samples", [](auto& c, const auto& x, auto v) {
             const auto n = x.integer(v);
             if (n < 1) x.fail("must be at least 1");
             c.samples = static_cast<std::size_t>(n);
         }},
        {"simulation.outage_samples", [](auto& c, const auto& x, auto v) {
             const auto n = x.integer(v);
             if (n < 1) x.fail("must be at least 1");
             c.outage_samples = static_cast<std::size_t>(n);
         }},
        {"simulation.seed", [](auto& c, const auto& x, auto v) {
             const auto n = x.integer(v);
             if (n < 0) x.fail("must be nonnegative");
             c.seed = static_cast<std::uint64_t>(n);
         }},
        {"simulation.workers", [](auto& c, const auto& x, auto v) {
             const auto n = x.integer(v);
             if (n < 0) x.fail("must be nonnegative (0 = all cores)");
             c.workers = static_cast<unsigned>(n);
         }},
        {"simulation.schemes", [](auto& c, const auto& x, auto v) {
             c.schemes.clear();
             for (auto item : x.array(v)) c.schemes.push_back(parse_scheme(x, x.string(item)));
             if (c.schemes.empty()) x.fail("must list at least one scheme");
         }},

        {"outage.beta_db", [](auto& c, const auto& x, auto v) {
             c.beta_db.clear();
             for (auto item : x.array(v)) c.beta_db.push_back(x.finite_number(item));
             if (c.beta_db.empty()) x.fail("must not be empty");
             for (std::size_t i = 1; i < c.beta_db.size(); ++i)
                 if (!(c.beta_db[i] > c.beta_db[i - 1])) x.fail("must be strictly increasing");
         }},

        {"sweep.n_values", [](auto& c, const auto& x, auto v) {
             c.n_values.clear();
             for (auto item : x.array(v)) {
                 const auto n = x.integer(item);
                 if (n < 1) x.fail("entries must be at least 1");
                 c.n_values.push_back(static_cast<int>(n));
             }
         }},
        {"sweep.mu_db_values", [](auto& c, const auto& x, auto v) {
             c.mu_db_values.clear();
             for (auto item : x.array(v)) c.mu_db_values.push_back(x.finite_number(item));
         }},
        {"sweep.mu_sweep_gamma_db", [](auto& c, const auto& x, auto v) {
             c.mu_sweep_gamma_db.clear();
             for (auto item : x.array(v)) c.mu_sweep_gamma_db.push_back(x.finite_number(item));
         }},
        {"sweep.theta_start", [](auto& c, const auto& x, auto v) { c.theta.start = x.finite_number(v); }},
        {"sweep.theta_stop", [](auto& c, const auto& x, auto v) { c.theta.stop = x.finite_number(v); }},
        {"sweep.theta_step", [](auto& c, const auto& x, auto v) {
             c.theta.step = x.finite_number(v);
             if (!(c.theta.step > 0.0)) x.fail("must be positive");
         }},

        {"quadrature.relative_tolerance", [](auto& c, const auto& x, auto v) {
             c.quadrature.relative_tolerance = x.finite_number(v);
             if (!(c.quadrature.relative_tolerance > 0.0 && c.quadrature.relative_tolerance < 1.0))
                 x.fail("must lie in (0, 1)");
         }},
        {"quadrature.truncation_cutoff", [](auto& c, const auto& x, auto v) {
             c.quadrature.truncation_cutoff = x.finite_number(v);
             if (!(c.quadrature.truncation_cutoff > 0.0)) x.fail("must be positive");
         }},
        {"quadrature.max_subdivisions", [](auto& c, const auto& x, auto v) {
             const auto n = x.integer(v);
             if (n < 1) x.fail("must be at least 1");
             c.quadrature.max_subdivisions = static_cast<int>(n);
         }},

        {"output.dir", [](auto& c, const auto& x, auto v) { c.output_dir = x.string(v); }},
    };
    return table;
}

// beta_db_start / _stop / _step are collected and expanded after parsing.
struct BetaRange {
    std::optional<double> start, stop, step;
    int line = 0;
};

}  // namespace

std::vector<double> ThetaSweep::values() const {
    std::vector<double> out;
    const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

std::vector<double> default_beta_grid_db() {
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(20.0 + 0.5 * i);
    return grid;
}

ExperimentConfig::ExperimentConfig() : beta_db(default_beta_grid_db()) {
    const LinkBudget lb = link_budget_from_db(gamma_db, mu_db);
    system.gamma = lb.gamma;
    system.mu = lb.mu;
}

ExperimentConfig parse_experiment_config(std::string_view text) {
    ExperimentConfig config;
    static const std::set<std::string, std::less<>> sections = {"system", "simulation", "outage",
                                                                "sweep", "quadrature", "output"};
    std::string section;
    std::set<std::string, std::less<>> seen;
    BetaRange range;
    bool explicit_grid = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(strip_comment(raw));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": malformed section header", line_no);
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!sections.contains(section))
                throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section + "]", line_no);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
        if (section.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": key outside of any [section]", line_no);
        const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const LineContext ctx(line_no, key);
        if (!seen.insert(key).second) ctx.fail("duplicate key");

        if (key == "outage.beta_db_start" || key == "outage.beta_db_stop" || key == "outage.beta_db_step") {
            const double v = ctx.finite_number(value);
            if (key.ends_with("start")) range.start = v;
            if (key.ends_with("stop")) range.stop = v;
            if (key.ends_with("step")) {
                if (!(v > 0.0)) ctx.fail("must be positive");
                range.step = v;
            }
            range.line = line_no;
            continue;
        }

        const auto it = setters().find(key);
        if (it == setters().end()) ctx.fail("unknown key");
        it->second(config, ctx, value);
        if (key == "outage.beta_db") explicit_grid = true;
    }

    if (range.start || range.stop || range.step) {
        const LineContext ctx(range.line, "outage.beta_db_range");
        if (explicit_grid) ctx.fail("give either beta_db or beta_db_start/stop/step, not both");
        const double start = range.start.value_or(20.0);
        const double stop = range.stop.value_or(40.0);
        const double step = range.step.value_or(0.5);
        if (!(stop > start)) ctx.fail("beta_db_stop must exceed beta_db_start");
        config.beta_db.clear();
        const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        for (long i = 0; i <= count; ++i) config.beta_db.push_back(start + static_cast<double>(i) * step);
    }

    if (!(config.theta.stop >= config.theta.start))
        throw ConfigError("sweep.theta_stop must not be below sweep.theta_start", 0);

    const LinkBudget lb = link_budget_from_db(config.gamma_db, config.mu_db);
    config.system.gamma = lb.gamma;
    config.system.mu = lb.mu;
    try {
        config.system.validate();
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("system: ") + e.what(), 0);
    }
    return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string(), 0);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_experiment_config(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what(), e.line());
    }
}

}  // namespace rismiso
