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

#ifndef HBC_RESONANCE_HPP
#define HBC_RESONANCE_HPP

#include "hbc/quantity.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hbc
{
    // Upper edge of the electro-quasistatic band the lumped model is valid in.
    inline constexpr double eqs_limit_hz = 1e6;

    inline bool within_eqs(Frequency f) { return f.value() <= eqs_limit_hz; }

    // Series inductor (with loss resistance) driving the body capacitance to earth.
    struct ResonanceCircuit
    {
        Inductance inductance{1e-3};
        Capacitance capacitance_true{0.0};
        Resistance series_resistance{10.0};

        void validate() const;
    };

    struct FrequencySweep
    {
        std::vector<double> frequencies_hz; // strictly ascending
        std::vector<double> magnitudes;     // |V_C / V_src|

        void validate() const;
    };

    // n logarithmically spaced points from f_min to f_max inclusive.
    std::vector<double> log_grid(Frequency f_min, Frequency f_max, std::size_t points);

    // |1/(jwC)| / |R + jwL + 1/(jwC)| at every grid point.
    FrequencySweep lc_response(const ResonanceCircuit &circuit, std::span<const double> grid_hz);

    // Grid maximum refined by a 3-point parabola on (log f, log |H|). Throws
    // PeakSearchError when the maximum sits on the grid boundary or the sweep is flat.
    Frequency find_resonant_frequency(const FrequencySweep &sweep);

    // C = 1 / ((2 pi f_r)^2 L)
    Capacitance capacitance_from_resonance(Frequency f_r, Inductance inductance);

    // f_r = 1 / (2 pi sqrt(L C))
    Frequency resonant_frequency(Inductance inductance, Capacitance capacitance);

    // Dielectric thickness (body to earth) -> body capacitance.
    class DielectricTable
    {
    public:
        struct Row
        {
            Length thickness;
            Capacitance body_capacitance;
        };

        // Requires >= 1 row, thickness strictly ascending, capacitance strictly descending.
        explicit DielectricTable(std::vector<Row> rows);

        const std::vector<Row> &rows() const { return rows_; }

        // Reads "thickness_m,c_b_farads" CSV.
        static DielectricTable load(const std::filesystem::path &path);
        static DielectricTable parse(std::istream &is, const std::string &source_name = "<stream>");

    private:
        std::vector<Row> rows_;
    };

    // Piecewise-linear lookup, exact at rows, no extrapolation.
    Capacitance body_capacitance_lookup(Length thickness, const DielectricTable &table);

} // namespace hbc

#endif
