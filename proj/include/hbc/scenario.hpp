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

#ifndef HBC_SCENARIO_HPP
#define HBC_SCENARIO_HPP

#include "hbc/config.hpp"
#include "hbc/transfer.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hbc
{
    // Piecewise-linear map from body coordinate s in [0, 1] to shadowing
    // fraction x in (0, 1]. s = 0 is the torso junction, s = 1 the extremity.
    class ShadowingProfile
    {
    public:
        struct Anchor
        {
            double s;
            double x;
        };

        ShadowingProfile(std::string segment, std::vector<Anchor> anchors);

        const std::string &segment() const { return segment_; }
        const std::vector<Anchor> &anchors() const { return anchors_; }

        // Parses "s:x, s:x, ..." as written in config files.
        static ShadowingProfile parse(std::string segment, const std::string &anchor_list);

    private:
        std::string segment_;
        std::vector<Anchor> anchors_;
    };

    double shadowing_factor(double s, const ShadowingProfile &profile);

    // Inverts body potential -> return path -> fraction of the thin-disc capacitance;
    // used to fit profile anchors from measured or simulated body potentials.
    double shadowing_from_body_potential(double v_body_ratio, Capacitance c_b, const DeviceGeometry &geom);

    // Assembles the channel parameter set from a config. Each capacitance is
    // taken either directly or from its geometric inputs; when both are given
    // they must agree to 1e-9 relative.
    ChannelScenario build_scenario(const Config &config);

    // C_B from [body]: capacitance_f, or dielectric_thickness_m looked up in dielectric_table.
    Capacitance body_capacitance_from_config(const Config &config);

    // [link] frequency_hz, default 1 MHz. Appends an EQS warning when above 1 MHz.
    Frequency analysis_frequency(const Config &config, std::vector<std::string> *warnings = nullptr);

    // Resolves a dielectric table path: absolute paths as-is, otherwise under
    // $HBC_TABLE_DIR when set, else relative to the config file's directory.
    std::filesystem::path resolve_table_path(const Config &config, const std::string &name);

    enum class SweepKind
    {
        separation,
        radius,
        tx_position,
        rx_position,
        dielectric_thickness,
        device_area
    };

    SweepKind parse_sweep_kind(const std::string &name);
    std::string sweep_kind_name(SweepKind kind);
    // CSV column name of the swept value, e.g. "separation_m".
    std::string sweep_column_name(SweepKind kind);

    struct SweepSpec
    {
        SweepKind kind = SweepKind::separation;
        double min = 0.0;
        double max = 0.0;
        std::size_t steps = 0;
        Config fixed;                           // scenario parameters held constant
        bool with_oracle = false;               // nodal solve per row
        std::optional<double> segment_length_m; // position sweeps: d = length * |s_tx - s_rx|

        // min < max, steps >= 2, swept parameter absent from `fixed`.
        void validate() const;

        // Reads the [sweep] section; `fixed` is the config without it.
        static SweepSpec from_config(const Config &config);

        std::vector<double> values() const;
    };

    struct SweepRow
    {
        double swept = 0.0;
        ChannelScenario scenario;
        double ratio = 0.0;   // full closed form
        double loss_db = 0.0; // -20 log10(ratio)
        double rx_distant = 0.0;
        double simplified = 0.0;
        std::optional<double> oracle;
        std::optional<double> oracle_rel_error;
        RegimeFlags flags;
    };

    struct SweepResult
    {
        SweepKind kind = SweepKind::separation;
        std::vector<SweepRow> rows;
    };

    // Rows come back in grid order; a failing step is rethrown with its index.
    SweepResult run_sweep(const SweepSpec &spec);

    // Plain numeric CSV: one header line, then rows of numbers.
    struct CsvTable
    {
        std::vector<std::string> header;
        std::vector<std::vector<double>> rows;
    };

    struct CsvOptions
    {
        bool include_db = true;
        bool include_oracle = false;
    };

    CsvTable to_csv_table(const SweepResult &result, const CsvOptions &options = {});
    // Shortest round-trip formatting, so parse -> write reproduces bytes.
    void write_csv(const CsvTable &table, std::ostream &os);
    CsvTable parse_csv(std::istream &is);
    void emit_csv(const SweepResult &result, const std::filesystem::path &destination, const CsvOptions &options = {});

} // namespace hbc

#endif
