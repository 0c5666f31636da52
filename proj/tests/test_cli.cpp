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

#include "hbc/config.hpp"
#include "hbc/scenario.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace
{
    struct Run
    {
        int code;
        std::string out;
    };

    Run run_hbc(const std::string &args)
    {
        const std::string cmd = std::string(HBC_CLI_PATH) + " " + args + " 2>/dev/null";
        Run r{-1, {}};
        FILE *p = ::popen(cmd.c_str(), "r");
        REQUIRE(p != nullptr);
        char buf[4096];
        std::size_t n = 0;
        while ((n = std::fread(buf, 1, sizeof buf, p)) > 0)
            r.out.append(buf, n);
        const int status = ::pclose(p);
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        return r;
    }

    std::string data(const char *name) { return std::string(HBC_DATA_DIR) + "/" + name; }

    fs::path scratch(const std::string &name)
    {
        const auto dir = fs::temp_directory_path() / "hbc_cli_test";
        fs::create_directories(dir);
        return dir / name;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write(const fs::path &p, const std::string &text)
    {
        std::ofstream(p, std::ios::binary) << text;
    }
}

TEST_CASE("eval prints the distant geometric value")
{
    const auto r = run_hbc("eval " + data("sample.cfg") + " --json --db");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const double v = j["ratios"]["geometric_distant"];
    CHECK(std::abs(v - 4.750e-4) / 4.750e-4 < 1e-4);
    CHECK(j["ratio_db"]["geometric_distant"].get<double>() == doctest::Approx(-66.5).epsilon(1e-3));
    CHECK(j["flags"]["coupled"].get<bool>());
    CHECK(j["scenario"]["geometry"]["separation_m"].get<double>() == 0.1);

    const auto text = run_hbc("eval " + data("sample.cfg"));
    CHECK(text.code == 0);
    CHECK(text.out.find("geometric_distant") != std::string::npos);
}

TEST_CASE("eval on a direct config")
{
    const auto r = run_hbc("eval " + data("direct.cfg") + " --json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["flags"]["distant"].get<bool>());
    CHECK(j["ratios"]["full"].get<double>() == doctest::Approx(1.2198e-4).epsilon(1e-4));
    CHECK_FALSE(j["ratios"].contains("geometric_distant"));
}

TEST_CASE("sweep writes a CSV that round-trips")
{
    const auto out = scratch("sep.csv");
    const auto r = run_hbc("sweep " + data("sweep_separation.cfg") + " --out " + out.string() + " --db");
    REQUIRE(r.code == 0);
    const std::string bytes = slurp(out);
    std::istringstream in(bytes);
    const auto t = hbc::parse_csv(in);
    CHECK(t.rows.size() == 19);
    CHECK(t.header.front() == "separation_m");
    std::ostringstream again;
    hbc::write_csv(t, again);
    CHECK(again.str() == bytes);

    // Same input, same bytes.
    const auto out2 = scratch("sep2.csv");
    REQUIRE(run_hbc("sweep " + data("sweep_separation.cfg") + " --out " + out2.string() + " --db").code == 0);
    CHECK(slurp(out2) == bytes);
}

TEST_CASE("resonance subcommand")
{
    const auto out = scratch("res.csv");
    const auto r = run_hbc("resonance " + data("resonance.cfg") + " --out " + out.string());
    REQUIRE(r.code == 0);
    CHECK(r.out.find("resonant frequency") != std::string::npos);
    std::istringstream in(slurp(out));
    std::string header;
    std::getline(in, header);
    CHECK(header == "frequency_hz,magnitude");
}

TEST_CASE("calibrate-k")
{
    const auto r = run_hbc("calibrate-k --cc 60e-15 --d 0.1 --area 30e-4");
    REQUIRE(r.code == 0);
    CHECK(std::stod(r.out) == doctest::Approx(2e-12).epsilon(1e-12));
}

TEST_CASE("exit codes")
{
    SUBCASE("usage errors")
    {
        CHECK(run_hbc("").code == 1);
        CHECK(run_hbc("frobnicate").code == 1);
        CHECK(run_hbc("eval").code == 1);
    }
    SUBCASE("configuration errors")
    {
        CHECK(run_hbc("eval /nonexistent.cfg").code == 1);
        const auto cfg = scratch("missing.cfg");
        write(cfg, "[tx]\nreturn_path_capacitance_f = 1e-12\n");
        CHECK(run_hbc("eval " + cfg.string()).code == 1);
        CHECK(run_hbc("calibrate-k --cc 60e-15 --d 0 --area 30e-4").code == 1);
        CHECK(run_hbc("sweep " + data("sweep_separation.cfg") + " --out /nonexistent/dir/x.csv").code == 1);
    }
    SUBCASE("numerical errors")
    {
        const auto cfg = scratch("flat.cfg");
        write(cfg, "[body]\ncapacitance_f = 150.838e-12\n"
                   "[resonance]\nf_min_hz = 1e4\nf_max_hz = 1e5\npoints = 100\n");
        CHECK(run_hbc("resonance " + cfg.string() + " --out " + scratch("flat.csv").string()).code == 2);
        const auto tiny = scratch("tiny.cfg");
        write(tiny, "[tx]\nreturn_path_capacitance_f = 1e-40\n"
                    "[rx]\nreturn_path_capacitance_f = 1e-40\nground_to_body_capacitance_f = 1e-40\n"
                    "load_capacitance_f = 1e-40\n[body]\ncapacitance_f = 1e-40\n"
                    "[link]\ncoupling_capacitance_f = 0\n");
        CHECK(run_hbc("eval " + tiny.string()).code == 2);
    }
}

TEST_CASE("network dump goes to stderr")
{
    const std::string cmd = std::string(HBC_CLI_PATH) + " eval " + data("direct.cfg") + " --dump-network 2>&1 >/dev/null";
    FILE *p = ::popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string err;
    char buf[1024];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0)
        err.append(buf, n);
    ::pclose(p);
    CHECK(err.find("SRC B TG 1\n") != std::string::npos);
    CHECK(err.find("OUT B RG\n") != std::string::npos);
}
