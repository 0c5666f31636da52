// SPDX-License-Identifier: Apache-2.0
//
// hbc-channel: capacitive body-channel modelling toolkit
// Copyright (C) 2026 The hbc-channel authors
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

#ifndef HBC_TRANSFER_HPP
#define HBC_TRANSFER_HPP

#include "hbc/geometry.hpp"
#include "hbc/network.hpp"
#include "hbc/quantity.hpp"

#include <map>
#include <optional>
#include <string>

namespace hbc
{
    // Where the capacitances of a scenario came from, when they were derived
    // from device geometry rather than given directly.
    struct GeometricProvenance
    {
        DeviceGeometry tx;
        DeviceGeometry rx;
        double x_tx = 1.0;
        double x_rx = 1.0;
        Capacitance fringe{0.0};
        std::optional<Length> separation;       // present when C_c came from the coupling law
        std::optional<CouplingConstant> coupling;
    };

    // Parameter set of the full channel model. Units: farads.
    struct ChannelScenario
    {
        Capacitance c_x_tx;  // Tx floating ground to earth (return path)
        Capacitance c_x_rx;  // Rx floating ground to earth (return path)
        Capacitance c_gb_rx; // body to Rx floating ground
        Capacitance c_l;     // receiver load
        Capacitance c_b;     // body to earth
        Capacitance c_c;     // Tx ground to Rx ground coupling, may be zero
        std::optional<GeometricProvenance> provenance;

        // All capacitances > 0 except c_c >= 0; when provenance is present the
        // stored capacitances must match the re-derived ones to 1e-12 relative.
        void validate() const;
    };

    // Regime thresholds on the coupling capacitance.
    inline constexpr double distant_coupling_limit_f = 1e-15;  // below: devices considered far apart
    inline constexpr double coupled_coupling_limit_f = 10e-15; // above: inter-device coupling significant
    // The simplified forms assume C_x << C_L + C_GB-Rx and C_x << C_B; a ratio
    // above this is reported as an invalid approximation.
    inline constexpr double approximation_ratio_limit = 0.1;

    struct RegimeFlags
    {
        bool distant = false;
        bool coupled = false;
        bool invalid_approximation = false;
    };

    struct TransferReport
    {
        double body_potential = 0.0;             // C_x-Tx / C_B
        double rx_distant = 0.0;                 // receiver-side product form, no coupling
        double simplified = 0.0;                 // simplified coupled form
        double full = 0.0;                       // full boxed form
        std::optional<double> geometric_coupled; // geometry-substituted coupled form
        std::optional<double> geometric_distant; // geometry-substituted distant form
        std::optional<double> oracle;            // nodal solve of the reconstructed network
        // Relative errors keyed "<a>_vs_<b>", measured against <b>.
        std::map<std::string, double> relative_errors;
        RegimeFlags flags;
        Frequency frequency{0.0};
    };

    enum class CouplingRegime
    {
        coupled,
        distant
    };

    struct GeometricInputs
    {
        DeviceGeometry tx;
        DeviceGeometry rx;
        Length separation{0.0};
        std::optional<CouplingConstant> coupling; // required for the coupled regime
        double x_tx = 1.0;
        double x_rx = 1.0;
        Capacitance fringe{0.0};
        Capacitance c_l{0.0};
        Capacitance c_b{0.0};
    };

    // Body potential for a return path C against body capacitance C_B: C / C_B.
    double body_potential_ratio(Capacitance c_return, Capacitance c_b);

    // Return path recovered from a measured body potential ratio: C_B * v.
    Capacitance extract_return_path(double v_ratio, Capacitance c_b);

    // (C_x-Tx / C_B) * C_x-Rx / (C_GB-Rx + C_L)
    double rx_transfer_distant(const ChannelScenario &s);

    // Full closed form of the channel with inter-device coupling, evaluated as printed.
    double full_transfer(const ChannelScenario &s);

    // (C_c + C_x-Rx C_x-Tx / C_B) / (C_c + C_L + C_GB-Rx)
    double simplified_transfer(const ChannelScenario &s);

    // Transfer in terms of device geometry for equal Tx/Rx radius. The plate
    // capacitance uses the receiver thickness.
    double geometric_transfer(const GeometricInputs &in, CouplingRegime regime);

    // 20 log10(r).
    double ratio_to_db(double r);

    // Evaluates every applicable closed form plus the nodal oracle and fills
    // pairwise errors and regime flags.
    TransferReport compare_closed_forms(const ChannelScenario &s, Frequency frequency);

    RegimeFlags classify_regime(const ChannelScenario &s);

    CapNetwork channel_network(const ChannelScenario &s);

} // namespace hbc

#endif
