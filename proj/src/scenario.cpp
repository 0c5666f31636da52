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

#include "hbc/scenario.hpp"
#include "hbc/errors.hpp"
#include "hbc/resonance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hbc
{
    // ---------------------------------------------------------------------
    // Shadowing profiles
    // ---------------------------------------------------------------------

    ShadowingProfile::ShadowingProfile(std::string segment, std::vector<Anchor> anchors)
        : segment_(std::move(segment)), anchors_(std::move(anchors))
    {
        if (anchors_.size() < 2)
            throw DomainError("shadowing profile needs at least two anchors");
        for (std::size_t i = 0; i < anchors_.size(); ++i)
        {
            const auto &a = anchors_[i];
            if (!(a.s >= 0.0 && a.s <= 1.0))
                throw DomainError("profile anchor coordinate must lie in [0, 1]");
            if (!(a.x > 0.0 && a.x <= 1.0))
                throw DomainError("profile shadowing fraction must lie in (0, 1]");
            if (i > 0 && !(a.s > anchors_[i - 1].s))
                throw DomainError("profile anchor coordinates must be strictly ascending");
        }
    }

    ShadowingProfile ShadowingProfile::parse(std::string segment, const std::string &anchor_list)
    {
        std::vector<Anchor> anchors;
        std::stringstream ss(anchor_list);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw ConfigError("profile anchor '" + item + "' is not of the form s:x");
            auto number = [&item](std::string t)
            {
                t.erase(0, t.find_first_not_of(" \t"));
                t.erase(t.find_last_not_of(" \t") + 1);
                double v = 0.0;
                auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
                if (t.empty() || ec != std::errc() || p != t.data() + t.size())
                    throw ConfigError("profile anchor '" + item + "' is not numeric");
                return v;
            };
            anchors.push_back({number(item.substr(0, colon)), number(item.substr(colon + 1))});
        }
        try
        {
            return ShadowingProfile(std::move(segment), std::move(anchors));
        }
        catch (const DomainError &e)
        {
            throw ConfigError(e.what());
        }
    }

    double shadowing_factor(double s, const ShadowingProfile &profile)
    {
        const auto &a = profile.anchors();
        if (!(s >= 0.0 && s <= 1.0))
            throw DomainError("body coordinate must lie in [0, 1], got " + std::to_string(s));
        if (s <= a.front().s)
            return a.front().x;
        if (s >= a.back().s)
            return a.back().x;
        auto hi = std::lower_bound(a.begin(), a.end(), s,
                                   [](const ShadowingProfile::Anchor &an, double v) { return an.s < v; });
        if (hi->s == s)
            return hi->x;
        auto lo = hi - 1;
        const double w = (s - lo->s) / (hi->s - lo->s);
        return lo->x + w * (hi->x - lo->x);
    }

    double shadowing_from_body_potential(double v_body_ratio, Capacitance c_b, const DeviceGeometry &geom)
    {
        const Capacitance ret = extract_return_path(v_body_ratio, c_b);
        DeviceGeometry thin = geom;
        thin.disc_height = Length(0.0);
        const double x = ret / disc_self_capacitance(thin);
        if (!(x > 0.0 && x <= 1.0))
            throw DomainError("body potential implies a return path above the unshadowed disc value");
        return x;
    }

    // ---------------------------------------------------------------------
    // Scenario assembly
    // ---------------------------------------------------------------------

    namespace
    {
        bool agree(double a, double b, double tol)
        {
            return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
        }

        // Picks the geometric value when present, checking it against a direct one.
        double resolve(const std::string &field, std::optional<double> direct, std::optional<double> derived,
                       const std::string &alternative)
        {
            if (direct && derived)
            {
                if (!agree(*direct, *derived, 1e-9))
                    throw InconsistentParameterError(field + " = " + format_number(*direct) +
                                                     " disagrees with geometric value " + format_number(*derived));
                return *derived;
            }
            if (derived)
                return *derived;
            if (direct)
                return *direct;
            if (alternative.empty())
                throw MissingParameterError(field);
            throw MissingParameterError(field + " (or " + alternative + ")");
        }

        std::optional<DeviceGeometry> side_geometry(const Config &c, const std::string &side)
        {
            auto r = c.get_number(side, "radius_m");
            if (!r)
                return std::nullopt;
            DeviceGeometry g{Length(*r), Length(c.require_number(side, "thickness_m")),
                             Length(c.get_number(side, "disc_height_m").value_or(0.0))};
            g.validate();
            return g;
        }

        std::optional<double> side_shadowing(const Config &c, const std::string &side)
        {
            auto direct = c.get_number(side, "shadowing_fraction");
            auto pos = c.get_number(side, "position_s");
            std::optional<double> from_profile;
            if (pos)
            {
                const std::string name = c.require(side, "profile");
                const std::string sec = "profile." + name;
                if (!c.has_section(sec))
                    throw ConfigError(side + ".profile refers to missing section [" + sec + "]");
                const auto prof = ShadowingProfile::parse(c.get(sec, "segment").value_or(name), c.require(sec, "anchors"));
                try
                {
                    from_profile = shadowing_factor(*pos, prof);
                }
                catch (const DomainError &e)
                {
                    throw ConfigError(side + ".position_s: " + e.what());
                }
            }
            if (direct && from_profile && !agree(*direct, *from_profile, 1e-9))
                throw InconsistentParameterError(side + ".shadowing_fraction disagrees with " + side +
                                                 ".position_s on its profile");
            return from_profile ? from_profile : direct;
        }
    } // namespace

    std::filesystem::path resolve_table_path(const Config &config, const std::string &name)
    {
        std::filesystem::path p(name);
        if (p.is_absolute())
            return p;
        if (const char *dir = std::getenv("HBC_TABLE_DIR"); dir && *dir)
            return std::filesystem::path(dir) / p;
        return config.base_dir() / p;
    }

    Capacitance body_capacitance_from_config(const Config &c)
    {
        std::optional<double> table_cb;
        if (auto thick = c.get_number("body", "dielectric_thickness_m"))
        {
            const auto table = DielectricTable::load(resolve_table_path(c, c.require("body", "dielectric_table")));
            try
            {
                table_cb = body_capacitance_lookup(Length(*thick), table).value();
            }
            catch (const DomainError &e)
            {
                throw ConfigError(std::string("body.dielectric_thickness_m: ") + e.what());
            }
        }

        return Capacitance(resolve("body.capacitance_f", c.get_number("body", "capacitance_f"), table_cb,
                                   "body.dielectric_thickness_m with body.dielectric_table"));
    }

    ChannelScenario build_scenario(const Config &c)
    {
        const auto tx = side_geometry(c, "tx");
        const auto rx = side_geometry(c, "rx");
        const auto x_tx = side_shadowing(c, "tx");
        const auto x_rx = side_shadowing(c, "rx");

        std::optional<double> geo_cx_tx, geo_cx_rx, geo_cgb;
        if (tx && x_tx)
            geo_cx_tx = return_path_capacitance(*tx, *x_tx).value();
        if (rx && x_rx)
            geo_cx_rx = return_path_capacitance(*rx, *x_rx).value();
        const auto fringe = c.get_number("rx", "fringe_capacitance_f");
        if (rx && fringe)
            geo_cgb = ground_to_body_capacitance(plate_to_plate_capacitance(*rx), Capacitance(*fringe)).value();

        std::optional<double> geo_cc;
        std::optional<CouplingConstant> k;
        std::optional<Length> separation;
        if (auto kv = c.get_number("link", "coupling_constant_f_per_m"))
            k = CouplingConstant(*kv);
        if (auto d = c.get_number("link", "separation_m"))
            separation = Length(*d);
        if (k && separation && tx && rx)
        {
            if (tx->radius != rx->radius)
                throw ConfigError("coupling law needs equal tx.radius_m and rx.radius_m");
            geo_cc = coupling_capacitance(*tx, *separation, *k).value();
        }

        ChannelScenario s;
        s.c_x_tx = Capacitance(resolve("tx.return_path_capacitance_f", c.get_number("tx", "return_path_capacitance_f"),
                                       geo_cx_tx, "tx.radius_m with tx.shadowing_fraction or tx.position_s"));
        s.c_x_rx = Capacitance(resolve("rx.return_path_capacitance_f", c.get_number("rx", "return_path_capacitance_f"),
                                       geo_cx_rx, "rx.radius_m with rx.shadowing_fraction or rx.position_s"));
        s.c_gb_rx = Capacitance(resolve("rx.ground_to_body_capacitance_f",
                                        c.get_number("rx", "ground_to_body_capacitance_f"), geo_cgb,
                                        "rx.radius_m, rx.thickness_m and rx.fringe_capacitance_f"));
        s.c_l = Capacitance(resolve("rx.load_capacitance_f", c.get_number("rx", "load_capacitance_f"), std::nullopt, ""));
        s.c_b = body_capacitance_from_config(c);
        s.c_c = Capacitance(resolve("link.coupling_capacitance_f", c.get_number("link", "coupling_capacitance_f"), geo_cc,
                                    "link.separation_m with link.coupling_constant_f_per_m and device radii"));

        if (geo_cx_tx && geo_cx_rx && geo_cgb)
        {
            GeometricProvenance p{*tx, *rx, *x_tx, *x_rx, Capacitance(*fringe), std::nullopt, std::nullopt};
            if (geo_cc)
            {
                p.separation = separation;
                p.coupling = k;
            }
            s.provenance = p;
        }
        try
        {
            s.validate();
        }
        catch (const DomainError &e)
        {
            throw ConfigError(std::string("invalid scenario: ") + e.what());
        }
        return s;
    }

    Frequency analysis_frequency(const Config &config, std::vector<std::string> *warnings)
    {
        const Frequency f(config.get_number("link", "frequency_hz").value_or(1e6));
        if (!(f.value() > 0.0))
            throw ConfigError("link.frequency_hz must be positive");
        if (!within_eqs(f) && warnings)
            warnings->push_back("frequency " + format_number(f.value()) +
                                " Hz is above 1 MHz; the capacitive model assumes electro-quasistatic operation");
        return f;
    }

    // ---------------------------------------------------------------------
    // Sweeps
    // ---------------------------------------------------------------------

    SweepKind parse_sweep_kind(const std::string &name)
    {
        if (name == "separation")
            return SweepKind::separation;
        if (name == "radius")
            return SweepKind::radius;
        if (name == "tx_position")
            return SweepKind::tx_position;
        if (name == "rx_position")
            return SweepKind::rx_position;
        if (name == "dielectric_thickness")
            return SweepKind::dielectric_thickness;
        if (name == "device_area")
            return SweepKind::device_area;
        throw ConfigError("unknown sweep kind '" + name + "'");
    }

    std::string sweep_kind_name(SweepKind kind)
    {
        switch (kind)
        {
        case SweepKind::separation: return "separation";
        case SweepKind::radius: return "radius";
        case SweepKind::tx_position: return "tx_position";
        case SweepKind::rx_position: return "rx_position";
        case SweepKind::dielectric_thickness: return "dielectric_thickness";
        case SweepKind::device_area: return "device_area";
        }
        return "?";
    }

    std::string sweep_column_name(SweepKind kind)
    {
        switch (kind)
        {
        case SweepKind::separation: return "separation_m";
        case SweepKind::radius: return "radius_m";
        case SweepKind::tx_position: return "tx_position_s";
        case SweepKind::rx_position: return "rx_position_s";
        case SweepKind::dielectric_thickness: return "dielectric_thickness_m";
        case SweepKind::device_area: return "device_area_m2";
        }
        return "?";
    }

    namespace
    {
        struct Key
        {
            const char *section;
            const char *key;
        };

        std::vector<Key> swept_keys(const SweepSpec &spec)
        {
            std::vector<Key> k;
            switch (spec.kind)
            {
            case SweepKind::separation:
                k = {{"link", "separation_m"}, {"link", "coupling_capacitance_f"}};
                break;
            case SweepKind::radius:
            case SweepKind::device_area:
                k = {{"tx", "radius_m"}, {"rx", "radius_m"}};
                break;
            case SweepKind::tx_position:
                k = {{"tx", "position_s"}, {"tx", "shadowing_fraction"}, {"tx", "return_path_capacitance_f"}};
                break;
            case SweepKind::rx_position:
                k = {{"rx", "position_s"}, {"rx", "shadowing_fraction"}, {"rx", "return_path_capacitance_f"}};
                break;
            case SweepKind::dielectric_thickness:
                k = {{"body", "dielectric_thickness_m"}, {"body", "capacitance_f"}};
                break;
            }
            const bool position = spec.kind == SweepKind::tx_position || spec.kind == SweepKind::rx_position;
            if (position && spec.segment_length_m)
            {
                k.push_back({"link", "separation_m"});
                k.push_back({"link", "coupling_capacitance_f"});
            }
            return k;
        }

        Config apply_step(const SweepSpec &spec, double v)
        {
            Config c = spec.fixed;
            switch (spec.kind)
            {
            case SweepKind::separation:
                c.set_number("link", "separation_m", v);
                break;
            case SweepKind::radius:
                c.set_number("tx", "radius_m", v);
                c.set_number("rx", "radius_m", v);
                break;
            case SweepKind::device_area:
            {
                const double a = std::sqrt(v / physical::pi);
                c.set_number("tx", "radius_m", a);
                c.set_number("rx", "radius_m", a);
                break;
            }
            case SweepKind::tx_position:
            case SweepKind::rx_position:
            {
                const bool tx_side = spec.kind == SweepKind::tx_position;
                c.set_number(tx_side ? "tx" : "rx", "position_s", v);
                if (spec.segment_length_m)
                {
                    const double other = c.require_number(tx_side ? "rx" : "tx", "position_s");
                    c.set_number("link", "separation_m", *spec.segment_length_m * std::abs(v - other));
                }
                break;
            }
            case SweepKind::dielectric_thickness:
                c.set_number("body", "dielectric_thickness_m", v);
                break;
            }
            return c;
        }

        std::string step_prefix(std::size_t i, double v)
        {
            return "sweep step " + std::to_string(i) + " (value " + format_number(v) + "): ";
        }
    } // namespace

    void SweepSpec::validate() const
    {
        if (!(min < max) || !std::isfinite(min) || !std::isfinite(max))
            throw ConfigError("sweep needs min < max");
        if (steps < 2)
            throw ConfigError("sweep needs at least two steps");
        if (segment_length_m && !(*segment_length_m > 0.0))
            throw ConfigError("sweep.segment_length_m must be positive");
        for (const auto &k : swept_keys(*this))
            if (fixed.has(k.section, k.key))
                throw ConfigError(std::string("swept parameter fixed in config: ") + k.section + "." + k.key);
    }

    SweepSpec SweepSpec::from_config(const Config &config)
    {
        SweepSpec s;
        s.kind = parse_sweep_kind(config.require("sweep", "kind"));
        s.min = config.require_number("sweep", "min");
        s.max = config.require_number("sweep", "max");
        const double steps = config.require_number("sweep", "steps");
        if (!(steps >= 2.0) || steps != std::floor(steps))
            throw ConfigError("sweep.steps must be an integer >= 2");
        s.steps = static_cast<std::size_t>(steps);
        s.with_oracle = config.get_flag("sweep", "oracle", false);
        s.segment_length_m = config.get_number("sweep", "segment_length_m");
        s.fixed = config;
        s.fixed.erase_section("sweep");
        s.validate();
        return s;
    }

    std::vector<double> SweepSpec::values() const
    {
        std::vector<double> v(steps);
        for (std::size_t i = 0; i < steps; ++i)
        {
            const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
            v[i] = (1.0 - t) * min + t * max;
        }
        v.back() = max;
        return v;
    }

    SweepResult run_sweep(const SweepSpec &spec)
    {
        spec.validate();
        SweepResult out;
        out.kind = spec.kind;
        const auto values = spec.values();
        const Frequency f = analysis_frequency(spec.fixed);
        out.rows.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            const double v = values[i];
            try
            {
                SweepRow row;
                row.swept = v;
                row.scenario = build_scenario(apply_step(spec, v));
                if (spec.with_oracle)
                {
                    const auto rep = compare_closed_forms(row.scenario, f);
                    row.ratio = rep.full;
                    row.rx_distant = rep.rx_distant;
                    row.simplified = rep.simplified;
                    row.oracle = rep.oracle;
                    row.oracle_rel_error = rep.relative_errors.at("full_vs_oracle");
                    row.flags = rep.flags;
                }
                else
                {
                    row.ratio = full_transfer(row.scenario);
                    row.rx_distant = rx_transfer_distant(row.scenario);
                    row.simplified = simplified_transfer(row.scenario);
                    row.flags = classify_regime(row.scenario);
                }
                row.loss_db = -ratio_to_db(row.ratio);
                out.rows.push_back(std::move(row));
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(step_prefix(i, v) + e.what());
            }
            catch (const SingularSystemError &e)
            {
                throw SingularSystemError(step_prefix(i, v) + e.what(), e.nodes());
            }
            catch (const DegenerateScenarioError &e)
            {
                throw DegenerateScenarioError(step_prefix(i, v) + e.what());
            }
            catch (const DomainError &e)
            {
                throw DomainError(step_prefix(i, v) + e.what());
            }
        }
        return out;
    }

    // ---------------------------------------------------------------------
    // CSV
    // ---------------------------------------------------------------------

    CsvTable to_csv_table(const SweepResult &result, const CsvOptions &options)
    {
        CsvTable t;
        t.header = {sweep_column_name(result.kind), "c_x_tx_f", "c_x_rx_f", "c_gb_rx_f", "c_l_f", "c_b_f", "c_c_f",
                    "ratio", "rx_distant_ratio", "simplified_ratio"};
        if (options.include_db)
            t.header.push_back("loss_db");
        if (options.include_oracle)
        {
            t.header.push_back("oracle_ratio");
            t.header.push_back("oracle_rel_error");
        }
        for (const char *f : {"distant", "coupled", "invalid_approximation"})
            t.header.emplace_back(f);

        for (const auto &r : result.rows)
        {
            const auto &s = r.scenario;
            std::vector<double> row{r.swept,       s.c_x_tx.value(), s.c_x_rx.value(), s.c_gb_rx.value(),
                                    s.c_l.value(), s.c_b.value(),    s.c_c.value(),    r.ratio,
                                    r.rx_distant,  r.simplified};
            if (options.include_db)
                row.push_back(r.loss_db);
            if (options.include_oracle)
            {
                if (!r.oracle)
                    throw ConfigError("CSV oracle columns requested but the sweep ran without the oracle");
                row.push_back(*r.oracle);
                row.push_back(r.oracle_rel_error.value_or(0.0));
            }
            row.push_back(r.flags.distant ? 1.0 : 0.0);
            row.push_back(r.flags.coupled ? 1.0 : 0.0);
            row.push_back(r.flags.invalid_approximation ? 1.0 : 0.0);
            t.rows.push_back(std::move(row));
        }
        return t;
    }

    void write_csv(const CsvTable &table, std::ostream &os)
    {
        for (std::size_t i = 0; i < table.header.size(); ++i)
            os << (i ? "," : "") << table.header[i];
        os << '\n';
        for (const auto &row : table.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << format_number(row[i]);
            os << '\n';
        }
    }

    CsvTable parse_csv(std::istream &is)
    {
        CsvTable t;
        std::string line;
        auto split = [](const std::string &l)
        {
            std::vector<std::string> cells;
            std::stringstream ss(l);
            std::string cell;
            while (std::getline(ss, cell, ','))
                cells.push_back(cell);
            return cells;
        };
        if (!std::getline(is, line))
            throw ConfigError("CSV is empty");
        t.header = split(line);
        std::size_t line_no = 1;
        while (std::getline(is, line))
        {
            ++line_no;
            if (line.empty())
                continue;
            const auto cells = split(line);
            if (cells.size() != t.header.size())
                throw ConfigError("CSV line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(t.header.size()) + " columns");
            std::vector<double> row;
            for (const auto &c : cells)
            {
                double v = 0.0;
                auto [p, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
                if (c.empty() || ec != std::errc() || p != c.data() + c.size())
                    throw ConfigError("CSV line " + std::to_string(line_no) + ": not a number '" + c + "'");
                row.push_back(v);
            }
            t.rows.push_back(std::move(row));
        }
        return t;
    }

    void emit_csv(const SweepResult &result, const std::filesystem::path &destination, const CsvOptions &options)
    {
        if (destination.empty())
            throw IoError("CSV destination path is empty");
        const auto table = to_csv_table(result, options);
        std::ofstream out(destination, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open '" + destination.string() + "' for writing");
        write_csv(table, out);
        out.flush();
        if (!out)
            throw IoError("write to '" + destination.string() + "' failed");
    }

} // namespace hbc
