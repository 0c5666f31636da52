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

// hbc: command-line front end.
//
//   hbc eval <config> [--json] [--db] [--dump-network]
//   hbc sweep <config> --out <csv> [--oracle] [--db]
//   hbc resonance <config> --out <csv>
//   hbc calibrate-k --cc <F> --d <m> --area <m2>
//
// Exit codes: 0 success, 1 configuration/input error, 2 numerical error.

#include "hbc/config.hpp"
#include "hbc/errors.hpp"
#include "hbc/resonance.hpp"
#include "hbc/scenario.hpp"
#include "hbc/transfer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace
{
    using namespace hbc;
    using json = nlohmann::json;

    constexpr int exit_config = 1;
    constexpr int exit_numeric = 2;

    void print_warnings(const std::vector<std::string> &warnings)
    {
        for (const auto &w : warnings)
            std::cerr << "warning: " << w << '\n';
    }

    std::vector<std::pair<std::string, std::optional<double>>> ratio_list(const TransferReport &r)
    {
        return {{"body_potential", r.body_potential},
                {"rx_distant", r.rx_distant},
                {"simplified", r.simplified},
                {"full", r.full},
                {"geometric_coupled", r.geometric_coupled},
                {"geometric_distant", r.geometric_distant},
                {"oracle", r.oracle}};
    }

    json scenario_json(const ChannelScenario &s)
    {
        json j{{"c_x_tx_f", s.c_x_tx.value()}, {"c_x_rx_f", s.c_x_rx.value()}, {"c_gb_rx_f", s.c_gb_rx.value()},
               {"c_l_f", s.c_l.value()},       {"c_b_f", s.c_b.value()},       {"c_c_f", s.c_c.value()}};
        if (s.provenance)
        {
            const auto &p = *s.provenance;
            json g{{"tx_radius_m", p.tx.radius.value()}, {"rx_radius_m", p.rx.radius.value()},
                   {"rx_thickness_m", p.rx.thickness.value()}, {"x_tx", p.x_tx}, {"x_rx", p.x_rx},
                   {"fringe_f", p.fringe.value()}};
            if (p.separation)
                g["separation_m"] = p.separation->value();
            if (p.coupling)
                g["coupling_constant_f_per_m"] = p.coupling->value();
            j["geometry"] = g;
        }
        return j;
    }

    int cmd_eval(const std::string &path, bool as_json, bool with_db, bool dump)
    {
        const Config cfg = Config::load(path);
        std::vector<std::string> warnings;
        const Frequency f = analysis_frequency(cfg, &warnings);
        const ChannelScenario s = build_scenario(cfg);
        const TransferReport r = compare_closed_forms(s, f);
        print_warnings(warnings);

        if (dump)
            dump_network(channel_network(s), std::cerr);

        if (as_json)
        {
            json ratios = json::object(), loss = json::object();
            for (const auto &[name, v] : ratio_list(r))
                if (v)
                {
                    ratios[name] = *v;
                    if (with_db)
                        loss[name] = ratio_to_db(*v);
                }
            json j{{"frequency_hz", f.value()},
                   {"scenario", scenario_json(s)},
                   {"ratios", ratios},
                   {"relative_errors", r.relative_errors},
                   {"flags",
                    {{"distant", r.flags.distant},
                     {"coupled", r.flags.coupled},
                     {"invalid_approximation", r.flags.invalid_approximation}}},
                   {"warnings", warnings}};
            if (with_db)
                j["ratio_db"] = loss;
            std::cout << j.dump(2) << '\n';
            return 0;
        }

        std::cout << "scenario (" << path << ")\n" << std::setprecision(6);
        std::cout << "  C_x-Tx   " << s.c_x_tx.value() << " F\n"
                  << "  C_x-Rx   " << s.c_x_rx.value() << " F\n"
                  << "  C_GB-Rx  " << s.c_gb_rx.value() << " F\n"
                  << "  C_L      " << s.c_l.value() << " F\n"
                  << "  C_B      " << s.c_b.value() << " F\n"
                  << "  C_c      " << s.c_c.value() << " F\n"
                  << "  frequency " << f.value() << " Hz\n";
        std::cout << "transfer ratios (V_out / V_in)\n";
        for (const auto &[name, v] : ratio_list(r))
        {
            if (!v)
                continue;
            std::cout << "  " << std::left << std::setw(20) << name << std::right << std::scientific
                      << std::setprecision(4) << *v << std::defaultfloat;
            if (with_db)
                std::cout << "  (" << std::fixed << std::setprecision(2) << ratio_to_db(*v) << " dB)"
                          << std::defaultfloat;
            std::cout << '\n';
        }
        std::cout << "relative errors\n";
        for (const auto &[name, e] : r.relative_errors)
            std::cout << "  " << std::left << std::setw(34) << name << std::right << std::scientific
                      << std::setprecision(3) << e << std::defaultfloat << '\n';
        std::cout << "flags: distant=" << (r.flags.distant ? "yes" : "no")
                  << " coupled=" << (r.flags.coupled ? "yes" : "no")
                  << " invalid_approximation=" << (r.flags.invalid_approximation ? "yes" : "no") << '\n';
        return 0;
    }

    int cmd_sweep(const std::string &path, const std::string &out, bool oracle, bool with_db)
    {
        const Config cfg = Config::load(path);
        SweepSpec spec = SweepSpec::from_config(cfg);
        if (oracle)
            spec.with_oracle = true;
        std::vector<std::string> warnings;
        analysis_frequency(spec.fixed, &warnings);
        print_warnings(warnings);
        const SweepResult result = run_sweep(spec);
        emit_csv(result, out, CsvOptions{with_db, spec.with_oracle});
        std::cout << "wrote " << result.rows.size() << " rows (" << sweep_kind_name(spec.kind) << ") to " << out
                  << '\n';
        return 0;
    }

    int cmd_resonance(const std::string &path, const std::string &out)
    {
        const Config cfg = Config::load(path);
        ResonanceCircuit circuit;
        circuit.inductance = Inductance(cfg.get_number("resonance", "inductance_h").value_or(1e-3));
        circuit.series_resistance = Resistance(cfg.get_number("resonance", "series_resistance_ohm").value_or(10.0));
        if (auto c = cfg.get_number("resonance", "capacitance_f"))
            circuit.capacitance_true = Capacitance(*c);
        else
            circuit.capacitance_true = body_capacitance_from_config(cfg);
        const auto grid = log_grid(Frequency(cfg.get_number("resonance", "f_min_hz").value_or(1e4)),
                                   Frequency(cfg.get_number("resonance", "f_max_hz").value_or(1e6)),
                                   static_cast<std::size_t>(cfg.get_number("resonance", "points").value_or(2000)));
        const FrequencySweep sweep = lc_response(circuit, grid);

        std::ofstream os(out, std::ios::binary | std::ios::trunc);
        if (!os)
            throw IoError("cannot open '" + out + "' for writing");
        os << "frequency_hz,magnitude\n";
        for (std::size_t i = 0; i < sweep.frequencies_hz.size(); ++i)
            os << format_number(sweep.frequencies_hz[i]) << ',' << format_number(sweep.magnitudes[i]) << '\n';
        if (!os)
            throw IoError("write to '" + out + "' failed");

        const Frequency fr = find_resonant_frequency(sweep);
        const Capacitance recovered = capacitance_from_resonance(fr, circuit.inductance);
        if (!within_eqs(fr))
            std::cerr << "warning: resonant frequency " << fr.value()
                      << " Hz lies above 1 MHz, outside the electro-quasistatic band\n";
        std::cout << std::setprecision(6) << "resonant frequency  " << fr.value() << " Hz\n"
                  << "analytic frequency  " << resonant_frequency(circuit.inductance, circuit.capacitance_true).value()
                  << " Hz\n"
                  << "recovered C_B       " << recovered.value() << " F\n"
                  << "true C_B            " << circuit.capacitance_true.value() << " F\n";
        return 0;
    }

    int cmd_calibrate(double cc, double d, double area)
    {
        const auto k = calibrate_coupling_constant(Capacitance(cc), Length(d), Area(area));
        std::cout << format_number(k.value()) << '\n';
        return 0;
    }

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Capacitive body-channel transfer model"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    bool as_json = false, with_db = false, dump = false, oracle = false;
    double cc = 0, d = 0, area = 0;

    auto *eval = app.add_subcommand("eval", "Evaluate one scenario and print the transfer report");
    eval->add_option("config", config_path, "scenario config file")->required();
    eval->add_flag("--json", as_json, "machine-readable output");
    eval->add_flag("--db", with_db, "also report ratios in dB");
    eval->add_flag("--dump-network", dump, "print the nodal network branch list to stderr");

    auto *sweep = app.add_subcommand("sweep", "Run the [sweep] section of a config and write CSV");
    sweep->add_option("config", config_path, "sweep config file")->required();
    sweep->add_option("--out", out_path, "CSV destination")->required();
    sweep->add_flag("--oracle", oracle, "include a nodal solve per row");
    sweep->add_flag("--db", with_db, "include a loss_db column");

    auto *res = app.add_subcommand("resonance", "Synthesize an LC sweep and extract body capacitance");
    res->add_option("config", config_path, "config with [resonance] and/or [body]")->required();
    res->add_option("--out", out_path, "CSV destination")->required();

    auto *cal = app.add_subcommand("calibrate-k", "Coupling constant from one reference point");
    cal->add_option("--cc", cc, "reference coupling capacitance (F)")->required();
    cal->add_option("--d", d, "reference separation (m)")->required();
    cal->add_option("--area", area, "reference plate area (m^2)")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config;
    }

    try
    {
        if (*eval)
            return cmd_eval(config_path, as_json, with_db, dump);
        if (*sweep)
            return cmd_sweep(config_path, out_path, oracle, with_db);
        if (*res)
            return cmd_resonance(config_path, out_path);
        if (*cal)
            return cmd_calibrate(cc, d, area);
    }
    catch (const hbc::SingularSystemError &e)
    {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numeric;
    }
    catch (const hbc::DegenerateScenarioError &e)
    {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numeric;
    }
    catch (const hbc::PeakSearchError &e)
    {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numeric;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
    return 0;
}
