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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rismiso/analysis.hpp"
#include "rismiso/beamforming.hpp"
#include "rismiso/channel.hpp"
#include "rismiso/eigensolver.hpp"
#include "rismiso/error.hpp"
#include "rismiso/marcum.hpp"
#include "rismiso/montecarlo.hpp"

namespace py = pybind11;
using namespace rismiso;

PYBIND11_MODULE(_rismiso, m) {
    m.doc() = "RIS-assisted MISO beamforming under Rician fading";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
    py::register_exception<DegenerateBeam>(m, "DegenerateBeam", base.ptr());
    py::register_exception<DegenerateStats>(m, "DegenerateStats", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<IntegrationError>(m, "IntegrationError", base.ptr());

    py::enum_<Scheme>(m, "Scheme")
        .value("PROPOSED", Scheme::Proposed)
        .value("MAX_MEAN_SNR", Scheme::MaxMeanSnr)
        .value("MAX_SNR", Scheme::MaxSnr);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("M", &SystemConfig::M)
        .def_readwrite("N", &SystemConfig::N)
        .def_readwrite("K", &SystemConfig::K)
        .def_readwrite("theta_dd", &SystemConfig::theta_dd)
        .def_readwrite("theta_di1", &SystemConfig::theta_di1)
        .def_readwrite("theta_di2", &SystemConfig::theta_di2)
        .def_readwrite("theta_ai1", &SystemConfig::theta_ai1)
        .def_readwrite("gamma", &SystemConfig::gamma)
        .def_readwrite("mu", &SystemConfig::mu)
        .def("validate", &SystemConfig::validate);

    py::class_<LosComponents>(m, "LosComponents")
        .def_readonly("g_bar", &LosComponents::g_bar)
        .def_readonly("H_bar", &LosComponents::H_bar)
        .def_readonly("h_bar", &LosComponents::h_bar)
        .def_readonly("E", &LosComponents::E);

    py::class_<BeamformerSolution>(m, "BeamformerSolution")
        .def_readonly("f", &BeamformerSolution::f)
        .def_readonly("psi", &BeamformerSolution::psi)
        .def_readonly("scheme", &BeamformerSolution::scheme);

    py::class_<RiceGainStats>(m, "RiceGainStats")
        .def_readonly("nu", &RiceGainStats::nu)
        .def_readonly("sigma", &RiceGainStats::sigma)
        .def_property_readonly("scale", &RiceGainStats::scale);

    m.def("rician_coefficients", [](double K) {
        const RicianCoefficients c = rician_coefficients(K);
        return py::make_tuple(c.kappa_l, c.kappa_n);
    }, py::arg("K"));
    m.def("build_los", &build_los, py::arg("config"));
    m.def("design_proposed", py::overload_cast<const SystemConfig&>(&design_proposed), py::arg("config"));
    m.def("design_max_mean_snr", [](const SystemConfig& config) {
        const LosComponents los = build_los(config);
        return design_max_mean_snr(config, los, design_proposed(config, los)).solution;
    }, py::arg("config"));
    m.def("mean_snr_exact", [](const CVector& f, const CVector& psi, const SystemConfig& config) {
        return mean_snr_exact(f, psi, config, build_los(config));
    }, py::arg("f"), py::arg("psi"), py::arg("config"));
    m.def("lower_bound_mean_snr", [](const CVector& f, const SystemConfig& config) {
        return lower_bound_mean_snr(f, config, build_los(config));
    }, py::arg("f"), py::arg("config"));
    m.def("principal_eigenvector", [](const CMatrix& Z) { return principal_eigenvector(Z); }, py::arg("Z"));
    m.def("rice_gain_stats", [](const BeamformerSolution& s, const SystemConfig& config) {
        return rice_gain_stats(s, config, build_los(config));
    }, py::arg("solution"), py::arg("config"));
    m.def("marcum_q1", &marcum_q1, py::arg("a"), py::arg("b"));
    m.def("outage_analytical", py::vectorize([](double beta, RiceGainStats stats, double gamma) {
              return outage_analytical(beta, stats, gamma);
          }), py::arg("beta"), py::arg("stats"),
          py::arg("gamma"));
    m.def("ergodic_capacity_analytical", [](const RiceGainStats& stats, double gamma) {
        return ergodic_capacity_analytical(stats, gamma, QuadratureSpec{});
    }, py::arg("stats"), py::arg("gamma"));

    m.def("simulate", [](const SystemConfig& config, std::size_t n_samples, std::uint64_t seed,
                         std::vector<double> beta_grid_db, unsigned workers) {
        SimulationPlan plan;
        plan.n_samples = n_samples;
        plan.seed = seed;
        plan.beta_grid_db = std::move(beta_grid_db);
        plan.workers = workers;
        EmpiricalResult r;
        {
            py::gil_scoped_release release;
            r = simulate(plan, config, build_los(config));
        }
        py::dict out;
        for (const SchemeEstimate& e : r.estimates) {
            py::dict d;
            d["outage"] = e.outage;
            d["outage_se"] = e.outage_se;
            d["capacity"] = e.capacity;
            d["capacity_se"] = e.capacity_se;
            d["mean_snr"] = e.mean_snr;
            d["mean_snr_se"] = e.mean_snr_se;
            out[py::str(std::string(scheme_name(e.scheme)))] = d;
        }
        return out;
    }, py::arg("config"), py::arg("n_samples"), py::arg("seed"), py::arg("beta_grid_db") = std::vector<double>{},
       py::arg("workers") = 1u);
}
