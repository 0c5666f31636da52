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

#include "hbc/geometry.hpp"
#include "hbc/errors.hpp"

#include <cmath>
#include <string>

namespace hbc
{
    namespace
    {
        void require_positive(double v, const char *what)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw DomainError(std::string(what) + " must be positive and finite, got " + std::to_string(v));
        }
    } // namespace

    void DeviceGeometry::validate() const
    {
        require_positive(radius.value(), "device radius");
        require_positive(thickness.value(), "device thickness");
        if (!(disc_height.value() >= 0.0) || !std::isfinite(disc_height.value()))
            throw DomainError("disc height must be nonnegative, got " + std::to_string(disc_height.value()));
    }

    CouplingConstant::CouplingConstant(double farads_per_metre) : k_(farads_per_metre)
    {
        require_positive(farads_per_metre, "coupling constant k");
    }

    Capacitance finalize_capacitance(double farads)
    {
        if (!std::isfinite(farads) || farads < 0.0)
            throw DomainError("capacitance result is not a finite nonnegative value");
        if (std::fpclassify(farads) == FP_SUBNORMAL)
            return Capacitance(0.0);
        return Capacitance(farads);
    }

    Capacitance disc_self_capacitance(const DeviceGeometry &geom)
    {
        geom.validate();
        const double a = geom.radius.value();
        const double h = geom.disc_height.value();
        const double thin = 8.0 * physical::epsilon0 * a;
        if (h == 0.0)
            return finalize_capacitance(thin);
        return finalize_capacitance(thin * (1.0 + 0.87 * std::pow(h / (2.0 * a), 0.76)));
    }

    Capacitance plate_to_plate_capacitance(const DeviceGeometry &geom)
    {
        geom.validate();
        return finalize_capacitance(physical::epsilon0 * geom.plate_area().value() / geom.thickness.value());
    }

    Capacitance return_path_capacitance(const DeviceGeometry &geom, double shadowing_fraction)
    {
        geom.validate();
        if (!(shadowing_fraction > 0.0 && shadowing_fraction <= 1.0))
            throw DomainError("shadowing fraction must lie in (0, 1], got " + std::to_string(shadowing_fraction));
        return finalize_capacitance(shadowing_fraction * 8.0 * physical::epsilon0 * geom.radius.value());
    }

    Capacitance coupling_capacitance(Area plate_area, Length separation, const CouplingConstant &k)
    {
        if (!(plate_area.value() >= 0.0) || !std::isfinite(plate_area.value()))
            throw DomainError("plate area must be nonnegative");
        if (!(separation.value() > 0.0))
            throw DomainError("device separation must be positive, got " + std::to_string(separation.value()));
        // d -> infinity is a legitimate limit and yields zero coupling.
        return finalize_capacitance(k.value() * plate_area.value() / separation.value());
    }

    Capacitance coupling_capacitance(const DeviceGeometry &geom, Length separation, const CouplingConstant &k)
    {
        geom.validate();
        return coupling_capacitance(geom.plate_area(), separation, k);
    }

    Capacitance ground_to_body_capacitance(Capacitance plate_to_plate, Capacitance fringe)
    {
        if (!(plate_to_plate.value() >= 0.0) || !(fringe.value() >= 0.0))
            throw DomainError("plate-to-plate and fringe capacitances must be nonnegative");
        return finalize_capacitance(plate_to_plate.value() + fringe.value());
    }

    CouplingConstant calibrate_coupling_constant(Capacitance reference, Length reference_separation,
                                                 Area reference_area)
    {
        require_positive(reference.value(), "reference coupling capacitance");
        require_positive(reference_separation.value(), "reference separation");
        require_positive(reference_area.value(), "reference area");
        return CouplingConstant(reference.value() * reference_separation.value() / reference_area.value());
    }

} // namespace hbc
