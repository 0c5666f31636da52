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

#ifndef HBC_GEOMETRY_HPP
#define HBC_GEOMETRY_HPP

#include "hbc/quantity.hpp"

namespace hbc
{
    namespace physical
    {
        inline constexpr double epsilon0 = 8.8541878128e-12; // F/m
        inline constexpr double pi = 3.14159265358979323846;
    } // namespace physical

    // Wearable disc device: a signal plate on the skin and a floating ground
    // plate of the same radius separated by the device thickness.
    struct DeviceGeometry
    {
        Length radius;                  // a
        Length thickness;               // t, signal plate to ground plate
        Length disc_height = Length(0); // h, used only by the finite-height disc law

        // Throws DomainError unless radius > 0, thickness > 0, disc_height >= 0.
        void validate() const;

        Area plate_area() const { return Area(physical::pi * radius.value() * radius.value()); }
    };

    // Proportionality constant of the inter-device coupling law, C_c = k * A / d.
    class CouplingConstant
    {
    public:
        explicit CouplingConstant(double farads_per_metre);
        double value() const { return k_; }

    private:
        double k_;
    };

    // 8 e0 a [1 + 0.87 (h / 2a)^0.76]; exactly 8 e0 a when h == 0.
    Capacitance disc_self_capacitance(const DeviceGeometry &geom);

    // Parallel-plate capacitance between signal and ground plate, e0 pi a^2 / t.
    Capacitance plate_to_plate_capacitance(const DeviceGeometry &geom);

    // Shadowed return path from the floating ground plate to earth: x * 8 e0 a,
    // x in (0, 1]. The disc height is ignored (thin-disc value).
    Capacitance return_path_capacitance(const DeviceGeometry &geom, double shadowing_fraction);

    Capacitance coupling_capacitance(const DeviceGeometry &geom, Length separation, const CouplingConstant &k);

    // Same law for a plate area given directly.
    Capacitance coupling_capacitance(Area plate_area, Length separation, const CouplingConstant &k);

    // C_GB = C_PP + C_F.
    Capacitance ground_to_body_capacitance(Capacitance plate_to_plate, Capacitance fringe);

    // Inverts the coupling law at a reference point: k = C_ref * d_ref / A_ref.
    CouplingConstant calibrate_coupling_constant(Capacitance reference, Length reference_separation,
                                                 Area reference_area);

    // Finite, nonnegative check for a computed capacitance; subnormals flush to zero.
    Capacitance finalize_capacitance(double farads);

} // namespace hbc

#endif
