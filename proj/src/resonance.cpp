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

#include "hbc/resonance.hpp"
#include "hbc/errors.hpp"
#include "hbc/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <istream>
#include <sstream>

namespace hbc
{
    void ResonanceCircuit::validate() const
    {
        if (!(inductance.value() > 0.0))
            throw DomainError("inductance must be positive");
        if (!(capacitance_true.value() > 0.0))
            throw DomainError("capacitance must be positive");
        if (!(series_resistance.value() > 0.0))
            throw DomainError("series resistance must be positive");
    }

    void FrequencySweep::validate() const
    {
        if (frequencies_hz.empty())
            throw DomainError("frequency sweep is empty");
        if (frequencies_hz.size() != magnitudes.size())
            throw DomainError("frequency and magnitude columns differ in length");
        for (std::size_t i = 0; i < frequencies_hz.size(); ++i)
        {
            if (!(frequencies_hz[i] > 0.0))
                throw DomainError("sweep frequencies must be positive");
            if (i > 0 && !(frequencies_hz[i] > frequencies_hz[i - 1]))
                throw DomainError("sweep frequencies must be strictly ascending");
            if (!(magnitudes[i] >= 0.0))
                throw DomainError("sweep magnitudes must be nonnegative");
        }
    }

    std::vector<double> log_grid(Frequency f_min, Frequency f_max, std::size_t points)
    {
        if (!(f_min.value() > 0.0) || !(f_max.value() > f_min.value()))
            throw DomainError("log grid needs 0 < f_min < f_max");
        if (points < 2)
            throw DomainError("log grid needs at least two points");
        std::vector<double> g(points);
        const double l0 = std::log(f_min.value()), l1 = std::log(f_max.value());
        for (std::size_t i = 0; i < points; ++i)
            g[i] = std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(points - 1));
        g.front() = f_min.value();
        g.back() = f_max.value();
        return g;
    }

    FrequencySweep lc_response(const ResonanceCircuit &circuit, std::span<const double> grid_hz)
    {
        circuit.validate();
        if (grid_hz.empty())
            throw DomainError("lc_response needs a nonempty frequency grid");
        FrequencySweep s;
        s.frequencies_hz.assign(grid_hz.begin(), grid_hz.end());
        s.magnitudes.reserve(grid_hz.size());
        const double l = circuit.inductance.value(), c = circuit.capacitance_true.value();
        const double r = circuit.series_resistance.value();
        for (double f : grid_hz)
        {
            const double w = 2.0 * physical::pi * f;
            const std::complex<double> zc(0.0, -1.0 / (w * c));
            const std::complex<double> total = std::complex<double>(r, w * l) + zc;
            s.magnitudes.push_back(std::abs(zc) / std::abs(total));
        }
        s.validate();
        return s;
    }

    Frequency find_resonant_frequency(const FrequencySweep &sweep)
    {
        sweep.validate();
        const auto &f = sweep.frequencies_hz;
        const auto &m = sweep.magnitudes;
        if (f.size() < 3)
            throw PeakSearchError("peak search needs at least three sweep points");

        const auto [lo, hi] = std::minmax_element(m.begin(), m.end());
        if (*lo == *hi)
            throw PeakSearchError("flat sweep: no resonant peak");
        const auto i = static_cast<std::size_t>(std::distance(m.begin(), hi));
        if (i == 0 || i + 1 == m.size())
            throw PeakSearchError("resonant peak at sweep boundary; widen the frequency grid");
        if (m[i - 1] <= 0.0 || m[i + 1] <= 0.0)
            return Frequency(f[i]);

        const double x0 = std::log(f[i - 1]), x1 = std::log(f[i]), x2 = std::log(f[i + 1]);
        const double y0 = std::log(m[i - 1]), y1 = std::log(m[i]), y2 = std::log(m[i + 1]);
        const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
        const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
        if (num == 0.0 || den == 0.0)
            return Frequency(f[i]);
        const double vertex = x1 - 0.5 * num / den;
        // The vertex of a parabola through a strict local maximum stays inside the bracket.
        return Frequency(std::exp(std::clamp(vertex, x0, x2)));
    }

    Capacitance capacitance_from_resonance(Frequency f_r, Inductance inductance)
    {
        if (!(f_r.value() > 0.0) || !(inductance.value() > 0.0))
            throw DomainError("resonance frequency and inductance must be positive");
        const double w = 2.0 * physical::pi * f_r.value();
        return Capacitance(1.0 / (w * w * inductance.value()));
    }

    Frequency resonant_frequency(Inductance inductance, Capacitance capacitance)
    {
        if (!(capacitance.value() > 0.0) || !(inductance.value() > 0.0))
            throw DomainError("inductance and capacitance must be positive");
        return Frequency(1.0 / (2.0 * physical::pi * std::sqrt(inductance.value() * capacitance.value())));
    }

    DielectricTable::DielectricTable(std::vector<Row> rows) : rows_(std::move(rows))
    {
        if (rows_.empty())
            throw DomainError("dielectric table has no rows");
        for (std::size_t i = 0; i < rows_.size(); ++i)
        {
            if (!(rows_[i].thickness.value() > 0.0) || !(rows_[i].body_capacitance.value() > 0.0))
                throw DomainError("dielectric table values must be positive");
            if (i == 0)
                continue;
            if (!(rows_[i].thickness > rows_[i - 1].thickness))
                throw DomainError("dielectric table thickness must be strictly ascending");
            if (!(rows_[i].body_capacitance < rows_[i - 1].body_capacitance))
                throw DomainError("dielectric table body capacitance must strictly decrease with thickness");
        }
    }

    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
        }

        double parse_number(const std::string &tok, const std::string &where)
        {
            const std::string t = trim(tok);
            double v = 0.0;
            auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc() || p != t.data() + t.size() || t.empty())
                throw ConfigError(where + ": not a number: '" + t + "'");
            return v;
        }
    } // namespace

    DielectricTable DielectricTable::parse(std::istream &is, const std::string &source_name)
    {
        std::string line;
        std::size_t line_no = 0;
        bool header_seen = false;
        std::vector<Row> rows;
        while (std::getline(is, line))
        {
            ++line_no;
            const std::string t = trim(line);
            if (t.empty() || t.front() == '#')
                continue;
            const std::string where = source_name + ":" + std::to_string(line_no);
            if (!header_seen)
            {
                if (t != "thickness_m,c_b_farads")
                    throw ConfigError(where + ": expected header 'thickness_m,c_b_farads'");
                header_seen = true;
                continue;
            }
            const auto comma = t.find(',');
            if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos)
                throw ConfigError(where + ": expected two comma-separated columns");
            rows.push_back({Length(parse_number(t.substr(0, comma), where)),
                            Capacitance(parse_number(t.substr(comma + 1), where))});
        }
        if (!header_seen)
            throw ConfigError(source_name + ": empty dielectric table");
        try
        {
            return DielectricTable(std::move(rows));
        }
        catch (const DomainError &e)
        {
            throw ConfigError(source_name + ": " + e.what());
        }
    }

    DielectricTable DielectricTable::load(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open dielectric table '" + path.string() + "'");
        return parse(in, path.string());
    }

    Capacitance body_capacitance_lookup(Length thickness, const DielectricTable &table)
    {
        const auto &rows = table.rows();
        const double lo_t = rows.front().thickness.value(), hi_t = rows.back().thickness.value();
        // Rounding noise from sweep grids is absorbed at the table ends.
        const double slack = 1e-12 * hi_t;
        double t = thickness.value();
        if (!(t >= lo_t - slack && t <= hi_t + slack))
            throw DomainError("dielectric thickness " + std::to_string(t) + " m outside table range");
        t = std::clamp(t, lo_t, hi_t);
        auto it = std::lower_bound(rows.begin(), rows.end(), t,
                                   [](const DielectricTable::Row &r, double v) { return r.thickness.value() < v; });
        if (it->thickness.value() == t)
            return it->body_capacitance;
        const auto &hi = *it;
        const auto &lo = *(it - 1);
        const double w = (t - lo.thickness.value()) / (hi.thickness.value() - lo.thickness.value());
        return Capacitance(lo.body_capacitance.value() + w * (hi.body_capacitance.value() - lo.body_capacitance.value()));
    }

} // namespace hbc
