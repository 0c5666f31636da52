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

#include "hbc/errors.hpp"
#include "hbc/resonance.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace hbc;
using namespace hbc::units;
using hbc_test::rel;

namespace
{
    ResonanceCircuit body(double c_f) { return {Inductance(1e-3), Capacitance(c_f), Resistance(10.0)}; }

    FrequencySweep sweep(const ResonanceCircuit &c, std::size_t n = 2000)
    {
        const auto grid = log_grid(Frequency(1e4), Frequency(1e6), n);
        return lc_response(c, grid);
    }
}

TEST_CASE("analytic resonance")
{
    const auto f = resonant_frequency(Inductance(1e-3), picofarads(150.838));
    CHECK(rel(f.value(), 409793.201330626) < 1e-12);
    CHECK(rel(capacitance_from_resonance(f, Inductance(1e-3)).value(), 150.838e-12) < 1e-12);
    CHECK_THROWS_AS(resonant_frequency(Inductance(0.0), picofarads(1)), DomainError);
    CHECK_THROWS_AS(capacitance_from_resonance(Frequency(-1.0), Inductance(1e-3)), DomainError);
}

TEST_CASE("log grid")
{
    const auto g = log_grid(Frequency(1e4), Frequency(1e6), 3);
    REQUIRE(g.size() == 3);
    CHECK(g[0] == 1e4);
    CHECK(rel(g[1], 1e5) < 1e-14);
    CHECK(g[2] == 1e6);
    CHECK_THROWS_AS(log_grid(Frequency(1e6), Frequency(1e4), 10), DomainError);
    CHECK_THROWS_AS(log_grid(Frequency(0.0), Frequency(1e4), 10), DomainError);
    CHECK_THROWS_AS(log_grid(Frequency(1e3), Frequency(1e4), 1), DomainError);
}

TEST_CASE("response magnitude matches the divider formula")
{
    const auto c = body(150.838e-12);
    const double grid[] = {1e4, 3e5, 409793.0, 1e6};
    const auto s = lc_response(c, grid);
    for (std::size_t i = 0; i < 4; ++i)
    {
        const long double w = 2.0L * hbc_test::pi_l * grid[i];
        const long double xc = 1.0L / (w * 150.838e-12L);
        const long double xl = w * 1e-3L;
        const long double expected = xc / std::sqrt(100.0L + (xl - xc) * (xl - xc));
        CHECK(rel(s.magnitudes[i], static_cast<double>(expected)) < 1e-12);
    }
    CHECK(s.magnitudes[2] > 200.0);
}

TEST_CASE("body capacitance recovered from a synthetic sweep")
{
    const auto c = body(150.838e-12);
    const auto fr = find_resonant_frequency(sweep(c));
    CHECK(rel(fr.value(), 409.8e3) < 1e-3);
    CHECK(rel(fr.value(), 409793.2) < 1e-3);
    CHECK(rel(capacitance_from_resonance(fr, c.inductance).value(), 150.838e-12) < 1e-3);
}

TEST_CASE("round trip on random capacitances")
{
    hbc_test::Rng rng(21);
    for (int i = 0; i < 100; ++i)
    {
        const auto c = body(rng.uniform(50e-12, 500e-12));
        const auto fr = find_resonant_frequency(sweep(c));
        CHECK(rel(capacitance_from_resonance(fr, c.inductance).value(), c.capacitance_true.value()) < 5e-3);
    }
}

TEST_CASE("peak search failures")
{
    SUBCASE("monotone sweep peaks on the boundary")
    {
        FrequencySweep s{{1.0, 2.0, 3.0, 4.0}, {1.0, 2.0, 3.0, 4.0}};
        CHECK_THROWS_AS(find_resonant_frequency(s), PeakSearchError);
        FrequencySweep d{{1.0, 2.0, 3.0, 4.0}, {4.0, 3.0, 2.0, 1.0}};
        CHECK_THROWS_AS(find_resonant_frequency(d), PeakSearchError);
    }
    SUBCASE("resonance outside the grid")
    {
        const auto grid = log_grid(Frequency(1e4), Frequency(1e5), 200);
        CHECK_THROWS_AS(find_resonant_frequency(lc_response(body(150.838e-12), grid)), PeakSearchError);
    }
    SUBCASE("flat sweep")
    {
        FrequencySweep s{{1.0, 2.0, 3.0}, {1.0, 1.0, 1.0}};
        CHECK_THROWS_AS(find_resonant_frequency(s), PeakSearchError);
    }
    SUBCASE("too few points")
    {
        FrequencySweep s{{1.0, 2.0}, {1.0, 2.0}};
        CHECK_THROWS_AS(find_resonant_frequency(s), PeakSearchError);
    }
    SUBCASE("malformed sweeps")
    {
        FrequencySweep unsorted{{1.0, 3.0, 2.0}, {1.0, 2.0, 1.0}};
        CHECK_THROWS_AS(find_resonant_frequency(unsorted), DomainError);
        FrequencySweep ragged{{1.0, 2.0, 3.0}, {1.0, 2.0}};
        CHECK_THROWS_AS(find_resonant_frequency(ragged), DomainError);
    }
}

TEST_CASE("refined peak of a symmetric triple is the centre")
{
    FrequencySweep s{{1e5, 2e5, 4e5}, {1.0, 3.0, 1.0}};
    CHECK(rel(find_resonant_frequency(s).value(), 2e5) < 1e-14);
}

TEST_CASE("eqs band")
{
    CHECK(within_eqs(Frequency(1e6)));
    CHECK_FALSE(within_eqs(Frequency(1.0001e6)));
}

TEST_CASE("dielectric table")
{
    std::istringstream is("# synthetic\n"
                          "thickness_m,c_b_farads\n"
                          "0.2,200e-12\n"
                          "0.4,150e-12\n"
                          "\n"
                          "0.6,120e-12\n");
    const auto t = DielectricTable::parse(is, "mem");
    REQUIRE(t.rows().size() == 3);
    CHECK(body_capacitance_lookup(Length(0.4), t).value() == 150e-12);
    CHECK(body_capacitance_lookup(Length(0.2), t).value() == 200e-12);
    CHECK(body_capacitance_lookup(Length(0.6), t).value() == 120e-12);
    CHECK(rel(body_capacitance_lookup(Length(0.3), t).value(), 175e-12) < 1e-14);
    CHECK(rel(body_capacitance_lookup(Length(0.5), t).value(), 135e-12) < 1e-14);
    CHECK_THROWS_AS(body_capacitance_lookup(Length(0.1), t), DomainError);
    CHECK_THROWS_AS(body_capacitance_lookup(Length(0.7), t), DomainError);
    // Grid rounding at the table ends resolves to the end rows.
    CHECK(body_capacitance_lookup(Length(0.2 + 0.4), t).value() == 120e-12);
    CHECK(body_capacitance_lookup(Length(std::nextafter(0.2, 0.0)), t).value() == 200e-12);
    CHECK_THROWS_AS(body_capacitance_lookup(Length(0.6 * (1.0 + 1e-9)), t), DomainError);

    const auto shipped = DielectricTable::load(HBC_DATA_DIR "/dielectric_table.csv");
    CHECK(body_capacitance_lookup(Length(0.40), shipped).value() == 150.838e-12);
}

TEST_CASE("malformed dielectric tables")
{
    auto parse = [](const char *text)
    {
        std::istringstream is(text);
        return DielectricTable::parse(is, "mem");
    };
    CHECK_THROWS_AS(parse(""), ConfigError);
    CHECK_THROWS_AS(parse("t,c\n0.1,1e-10\n"), ConfigError);
    CHECK_THROWS_AS(parse("thickness_m,c_b_farads\n0.1;1e-10\n"), ConfigError);
    CHECK_THROWS_AS(parse("thickness_m,c_b_farads\n0.1,abc\n"), ConfigError);
    CHECK_THROWS_AS(parse("thickness_m,c_b_farads\n0.2,1e-10\n0.1,2e-10\n"), ConfigError);
    CHECK_THROWS_AS(parse("thickness_m,c_b_farads\n0.1,1e-10\n0.2,2e-10\n"), ConfigError);
    CHECK_THROWS_AS(parse("thickness_m,c_b_farads\n"), ConfigError);
    CHECK_THROWS_AS(DielectricTable::load("/nonexistent/table.csv"), IoError);
}
