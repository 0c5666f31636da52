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

// Shared helpers for the unit and acceptance tests: seeded random draws and
// reference computations written independently of the library code paths.

#ifndef HBC_TEST_SUPPORT_HPP
#define HBC_TEST_SUPPORT_HPP

#include "hbc/network.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace hbc_test
{
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : gen_(seed) {}
        double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
        int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

    private:
        std::mt19937_64 gen_;
    };

    inline double rel(double a, double ref) { return std::abs(a - ref) / std::abs(ref); }

    inline constexpr long double eps0 = 8.8541878128e-12L;
    inline constexpr long double pi_l = 3.141592653589793238462643383279502884L;

    // Channel parameters in farads, same order as build_channel_network.
    struct Caps
    {
        long double cxt, cxr, cgb, cl, cb, cc;
    };

    // Hand elimination of the four-node channel circuit (earth reference,
    // source body->tx ground, output body->rx ground).
    inline long double nodal_channel_ratio(const Caps &c)
    {
        const long double g = c.cl + c.cgb;
        const long double num = c.cc * (c.cb + c.cxr + c.cxt) + c.cxr * c.cxt;
        const long double den = c.cb * c.cc + c.cb * c.cxr + c.cb * g + c.cc * c.cxr + c.cc * c.cxt + c.cxr * c.cxt +
                                c.cxr * g + c.cxt * g;
        return num / den;
    }

    inline long double channel_numerator(const Caps &c) { return c.cc * (c.cb + c.cxr + c.cxt) + c.cxr * c.cxt; }

    // Boxed closed form, expanded term by term.
    inline long double printed_full_ratio(const Caps &c)
    {
        const long double g = c.cl + c.cgb;
        const long double num = channel_numerator(c);
        const long double den = c.cc * c.cb + c.cc * c.cxr + c.cc * c.cxt + c.cb * g + c.cb * c.cxt + c.cxr * g +
                                c.cxr * c.cxt + c.cxt * g;
        return num / den;
    }

    // Modified nodal analysis on the capacitance matrix (the j*omega factor
    // cancels for a capacitor-only network). Unknowns: every non-reference
    // potential plus the source current. Gauss-Jordan in long double.
    inline long double mna_ratio(const hbc::CapNetwork &net)
    {
        const int n = net.node_count();
        const int ref = net.reference_node();
        std::vector<int> idx(static_cast<std::size_t>(n), -1);
        int m = 0;
        for (int v = 0; v < n; ++v)
            if (v != ref)
                idx[static_cast<std::size_t>(v)] = m++;
        const int cur = m++;
        std::vector<std::vector<long double>> a(static_cast<std::size_t>(m),
                                                std::vector<long double>(static_cast<std::size_t>(m + 1), 0.0L));
        auto at = [&](int r, int c) -> long double & { return a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; };
        for (const auto &b : net.branches())
        {
            const long double c = b.capacitance.value();
            const int i = idx[static_cast<std::size_t>(b.node_a)], j = idx[static_cast<std::size_t>(b.node_b)];
            if (i >= 0)
                at(i, i) += c;
            if (j >= 0)
                at(j, j) += c;
            if (i >= 0 && j >= 0)
            {
                at(i, j) -= c;
                at(j, i) -= c;
            }
        }
        const auto &s = net.source();
        const int p = idx[static_cast<std::size_t>(s.plus)], q = idx[static_cast<std::size_t>(s.minus)];
        if (p >= 0)
        {
            at(p, cur) += 1.0L;
            at(cur, p) += 1.0L;
        }
        if (q >= 0)
        {
            at(q, cur) -= 1.0L;
            at(cur, q) -= 1.0L;
        }
        at(cur, m) = s.amplitude;

        for (int col = 0; col < m; ++col)
        {
            int piv = col;
            for (int r = col + 1; r < m; ++r)
                if (std::fabs(at(r, col)) > std::fabs(at(piv, col)))
                    piv = r;
            if (at(piv, col) == 0.0L)
                throw std::runtime_error("mna oracle: singular system");
            std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(col)]);
            for (int r = 0; r < m; ++r)
            {
                if (r == col)
                    continue;
                const long double f = at(r, col) / at(col, col);
                for (int c = col; c <= m; ++c)
                    at(r, c) -= f * at(col, c);
            }
        }
        auto potential = [&](int node) -> long double
        {
            const int i = idx[static_cast<std::size_t>(node)];
            return i < 0 ? 0.0L : at(i, m) / at(i, i);
        };
        return (potential(net.output().plus) - potential(net.output().minus)) / s.amplitude;
    }

    // Connected random capacitor network: a random spanning tree plus extra
    // branches, with the source and output on random distinct node pairs.
    inline hbc::CapNetwork random_network(Rng &rng, int max_nodes = 8)
    {
        const int n = rng.integer(3, max_nodes);
        std::vector<hbc::CapBranch> br;
        for (int v = 1; v < n; ++v)
            br.push_back({v, rng.integer(0, v - 1), hbc::Capacitance(rng.uniform(0.1e-12, 100e-12))});
        const int extra = rng.integer(0, n);
        for (int e = 0; e < extra; ++e)
        {
            const int a = rng.integer(0, n - 1), b = rng.integer(0, n - 1);
            if (a != b)
                br.push_back({a, b, hbc::Capacitance(rng.uniform(0.1e-12, 100e-12))});
        }
        auto pair = [&]()
        {
            const int a = rng.integer(0, n - 1);
            int b = rng.integer(0, n - 2);
            if (b >= a)
                ++b;
            return std::pair{a, b};
        };
        const auto [sp, sm] = pair();
        const auto [op, om] = pair();
        return hbc::CapNetwork(n, 0, std::move(br), hbc::VoltageSource{sp, sm, 1.0}, hbc::OutputPort{op, om});
    }

} // namespace hbc_test

#endif
