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

#ifndef HBC_QUANTITY_HPP
#define HBC_QUANTITY_HPP

#include <compare>

namespace hbc
{
    // Unit-tagged scalar. The tag only prevents mixing, e.g. passing a length
    // where a capacitance is expected; all values are stored in SI units.
    template <typename Tag>
    class Quantity
    {
    public:
        constexpr Quantity() = default;
        constexpr explicit Quantity(double si_value) : v_(si_value) {}

        constexpr double value() const { return v_; }

        constexpr Quantity operator+(Quantity o) const { return Quantity(v_ + o.v_); }
        constexpr Quantity operator-(Quantity o) const { return Quantity(v_ - o.v_); }
        constexpr Quantity operator*(double s) const { return Quantity(v_ * s); }
        constexpr Quantity operator/(double s) const { return Quantity(v_ / s); }
        constexpr double operator/(Quantity o) const { return v_ / o.v_; }
        constexpr Quantity &operator+=(Quantity o)
        {
            v_ += o.v_;
            return *this;
        }

        constexpr auto operator<=>(const Quantity &) const = default;

    private:
        double v_ = 0.0;
    };

    template <typename Tag>
    constexpr Quantity<Tag> operator*(double s, Quantity<Tag> q) { return q * s; }

    struct LengthTag;
    struct AreaTag;
    struct CapacitanceTag;
    struct InductanceTag;
    struct ResistanceTag;
    struct FrequencyTag;

    using Length = Quantity<LengthTag>;           // m
    using Area = Quantity<AreaTag>;               // m^2
    using Capacitance = Quantity<CapacitanceTag>; // F
    using Inductance = Quantity<InductanceTag>;   // H
    using Resistance = Quantity<ResistanceTag>;   // Ohm
    using Frequency = Quantity<FrequencyTag>;     // Hz

    namespace units
    {
        constexpr Length metres(double v) { return Length(v); }
        constexpr Length centimetres(double v) { return Length(v * 1e-2); }
        constexpr Length millimetres(double v) { return Length(v * 1e-3); }
        constexpr Area square_metres(double v) { return Area(v); }
        constexpr Area square_centimetres(double v) { return Area(v * 1e-4); }
        constexpr Capacitance farads(double v) { return Capacitance(v); }
        constexpr Capacitance picofarads(double v) { return Capacitance(v * 1e-12); }
        constexpr Capacitance femtofarads(double v) { return Capacitance(v * 1e-15); }
        constexpr Inductance henries(double v) { return Inductance(v); }
        constexpr Resistance ohms(double v) { return Resistance(v); }
        constexpr Frequency hertz(double v) { return Frequency(v); }
        constexpr Frequency kilohertz(double v) { return Frequency(v * 1e3); }
        constexpr Frequency megahertz(double v) { return Frequency(v * 1e6); }
    } // namespace units

} // namespace hbc

#endif
