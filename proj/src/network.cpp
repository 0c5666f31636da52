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

#include "hbc/network.hpp"
#include "hbc/config.hpp"
#include "hbc/errors.hpp"
#include "hbc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <queue>

namespace hbc
{
    using cplx = std::complex<double>;
    // Elimination runs in extended precision: the output is a difference of
    // nearly equal node potentials.
    using xcplx = std::complex<long double>;

    CapNetwork::CapNetwork(int node_count, int reference_node, std::vector<CapBranch> branches, VoltageSource source,
                           OutputPort output, std::vector<std::string> node_labels)
        : node_count_(node_count), reference_(reference_node), branches_(std::move(branches)), source_(source),
          output_(output), labels_(std::move(node_labels))
    {
        if (node_count_ < 2)
            throw DomainError("network needs at least two nodes");
        auto in_range = [this](int n) { return n >= 0 && n < node_count_; };
        if (!in_range(reference_))
            throw DomainError("reference node out of range");
        for (const auto &b : branches_)
        {
            if (!in_range(b.node_a) || !in_range(b.node_b))
                throw DomainError("branch node id out of range");
            if (b.node_a == b.node_b)
                throw DomainError("branch must join two distinct nodes");
            if (!(b.capacitance.value() > 0.0) || !std::isfinite(b.capacitance.value()))
                throw DomainError("branch capacitance must be positive and finite");
        }
        if (!in_range(source_.plus) || !in_range(source_.minus) || source_.plus == source_.minus)
            throw DomainError("source must span two distinct in-range nodes");
        if (!(source_.amplitude != 0.0) || !std::isfinite(source_.amplitude))
            throw DomainError("source amplitude must be finite and nonzero");
        if (!in_range(output_.plus) || !in_range(output_.minus) || output_.plus == output_.minus)
            throw DomainError("output must span two distinct in-range nodes");

        if (labels_.empty())
            for (int i = 0; i < node_count_; ++i)
                labels_.push_back(std::to_string(i));
        if (static_cast<int>(labels_.size()) != node_count_)
            throw DomainError("node label count does not match node count");
    }

    CapNetwork CapNetwork::scaled(double factor) const
    {
        std::vector<CapBranch> b = branches_;
        for (auto &br : b)
            br.capacitance = br.capacitance * factor;
        return CapNetwork(node_count_, reference_, std::move(b), source_, output_, labels_);
    }

    CapNetwork build_channel_network(Capacitance c_x_tx, Capacitance c_x_rx, Capacitance c_gb_rx, Capacitance c_l,
                                     Capacitance c_b, Capacitance c_c)
    {
        using namespace channel_nodes;
        for (auto c : {c_x_tx, c_x_rx, c_gb_rx, c_l, c_b})
            if (!(c.value() > 0.0))
                throw DomainError("channel capacitances must be positive");
        if (!(c_c.value() >= 0.0))
            throw DomainError("coupling capacitance must be nonnegative");

        std::vector<CapBranch> br{
            {body, earth, c_b},
            {tx_ground, earth, c_x_tx},
            {rx_ground, earth, c_x_rx},
            {body, rx_ground, c_l},
            {body, rx_ground, c_gb_rx},
        };
        if (c_c.value() > 0.0)
            br.push_back({tx_ground, rx_ground, c_c});
        return CapNetwork(4, earth, std::move(br), VoltageSource{body, tx_ground, 1.0}, OutputPort{body, rx_ground},
                          {"E", "B", "TG", "RG"});
    }

    WellPosedness well_posedness_check(const CapNetwork &net)
    {
        const auto n = static_cast<std::size_t>(net.node_count());
        std::vector<std::vector<int>> adj(n);
        auto link = [&adj](int a, int b)
        {
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        };
        for (const auto &b : net.branches())
            link(b.node_a, b.node_b);
        link(net.source().plus, net.source().minus);

        std::vector<bool> seen(n, false);
        std::queue<int> q;
        q.push(net.reference_node());
        seen[static_cast<std::size_t>(net.reference_node())] = true;
        while (!q.empty())
        {
            int u = q.front();
            q.pop();
            for (int v : adj[static_cast<std::size_t>(u)])
                if (!seen[static_cast<std::size_t>(v)])
                {
                    seen[static_cast<std::size_t>(v)] = true;
                    q.push(v);
                }
        }
        WellPosedness out;
        for (std::size_t i = 0; i < n; ++i)
            if (!seen[i])
                out.floating_nodes.push_back(static_cast<int>(i));
        return out;
    }

    namespace
    {
        std::string node_list(const CapNetwork &net, const std::vector<int> &nodes)
        {
            std::string s;
            for (int v : nodes)
            {
                if (!s.empty())
                    s += ", ";
                s += net.label(v);
            }
            return s;
        }

        // In-place LU with partial pivoting; returns the determinant and the
        // solution of A x = b. Throws with the column index of a vanishing pivot.
        struct DenseSolve
        {
            std::vector<xcplx> x;
            xcplx det;
            int singular_column = -1;
        };

        DenseSolve gauss_solve(std::vector<std::vector<xcplx>> a, std::vector<xcplx> b)
        {
            const std::size_t m = b.size();
            DenseSolve out;
            out.det = xcplx(1.0L, 0.0L);

            long double scale = 0.0L;
            for (const auto &row : a)
                for (const auto &v : row)
                    scale = std::max(scale, std::abs(v));
            const long double tiny = scale * 1e-13L;

            for (std::size_t col = 0; col < m; ++col)
            {
                std::size_t piv = col;
                for (std::size_t r = col + 1; r < m; ++r)
                    if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                        piv = r;
                if (!(std::abs(a[piv][col]) > tiny))
                {
                    out.singular_column = static_cast<int>(col);
                    return out;
                }
                if (piv != col)
                {
                    std::swap(a[piv], a[col]);
                    std::swap(b[piv], b[col]);
                    out.det = -out.det;
                }
                out.det *= a[col][col];
                for (std::size_t r = col + 1; r < m; ++r)
                {
                    const xcplx f = a[r][col] / a[col][col];
                    if (f == xcplx(0.0L, 0.0L))
                        continue;
                    for (std::size_t c = col; c < m; ++c)
                        a[r][c] -= f * a[col][c];
                    b[r] -= f * b[col];
                }
            }
            out.x.assign(m, xcplx(0.0L, 0.0L));
            for (std::size_t i = m; i-- > 0;)
            {
                xcplx acc = b[i];
                for (std::size_t c = i + 1; c < m; ++c)
                    acc -= a[i][c] * out.x[c];
                out.x[i] = acc / a[i][i];
            }
            return out;
        }
    } // namespace

    TransferSolution solve_transfer(const CapNetwork &net, Frequency frequency)
    {
        if (!(frequency.value() > 0.0) || !std::isfinite(frequency.value()))
            throw DomainError("solve frequency must be positive");

        const auto wp = well_posedness_check(net);
        if (!wp.ok())
            throw SingularSystemError("floating node(s) with no path to reference: " + node_list(net, wp.floating_nodes),
                                      wp.floating_nodes);

        const int n = net.node_count();
        const int ref = net.reference_node();
        const long double omega = 2.0L * static_cast<long double>(physical::pi) * frequency.value();

        // Full nodal admittance matrix.
        std::vector<std::vector<xcplx>> y(static_cast<std::size_t>(n), std::vector<xcplx>(static_cast<std::size_t>(n)));
        for (const auto &b : net.branches())
        {
            const xcplx adm(0.0L, omega * b.capacitance.value());
            const auto i = static_cast<std::size_t>(b.node_a), j = static_cast<std::size_t>(b.node_b);
            y[i][i] += adm;
            y[j][j] += adm;
            y[i][j] -= adm;
            y[j][i] -= adm;
        }

        // The source fixes one node relative to the other: V[eliminated] = V[kept] + sign * amplitude.
        const auto &src = net.source();
        int eliminated = src.plus, kept = src.minus;
        long double sign = 1.0L;
        if (eliminated == ref)
        {
            std::swap(eliminated, kept);
            sign = -1.0L;
        }
        const xcplx offset(sign * src.amplitude, 0.0L);

        std::vector<int> unknown_of(static_cast<std::size_t>(n), -1);
        std::vector<int> node_of;
        for (int v = 0; v < n; ++v)
            if (v != ref && v != eliminated)
            {
                unknown_of[static_cast<std::size_t>(v)] = static_cast<int>(node_of.size());
                node_of.push_back(v);
            }
        const std::size_t m = node_of.size();

        std::vector<std::vector<xcplx>> a(m, std::vector<xcplx>(m));
        std::vector<xcplx> rhs(m);
        auto stamp_row = [&](std::size_t row, int node)
        {
            const auto &yr = y[static_cast<std::size_t>(node)];
            for (int v = 0; v < n; ++v)
            {
                const xcplx coef = yr[static_cast<std::size_t>(v)];
                if (coef == xcplx(0.0L, 0.0L) || v == ref)
                    continue;
                if (v == eliminated)
                {
                    if (kept != ref)
                        a[row][static_cast<std::size_t>(unknown_of[static_cast<std::size_t>(kept)])] += coef;
                    rhs[row] -= coef * offset;
                }
                else
                    a[row][static_cast<std::size_t>(unknown_of[static_cast<std::size_t>(v)])] += coef;
            }
        };
        for (std::size_t r = 0; r < m; ++r)
        {
            stamp_row(r, node_of[r]);
            // KCL of the eliminated node merges into its partner (supernode).
            if (node_of[r] == kept)
                stamp_row(r, eliminated);
        }

        std::vector<xcplx> potentials(static_cast<std::size_t>(n), xcplx(0.0L, 0.0L));
        xcplx det(1.0L, 0.0L);
        if (m > 0)
        {
            auto ds = gauss_solve(std::move(a), std::move(rhs));
            if (ds.singular_column >= 0)
            {
                const int bad = node_of[static_cast<std::size_t>(ds.singular_column)];
                throw SingularSystemError("singular nodal system at node " + net.label(bad), {bad});
            }
            for (std::size_t i = 0; i < m; ++i)
                potentials[static_cast<std::size_t>(node_of[i])] = ds.x[i];
            det = ds.det;
        }
        const xcplx v_kept = (kept == ref) ? xcplx(0.0L, 0.0L) : potentials[static_cast<std::size_t>(kept)];
        potentials[static_cast<std::size_t>(eliminated)] = v_kept + offset;

        const auto &out = net.output();
        const xcplx ratio = (potentials[static_cast<std::size_t>(out.plus)] - potentials[static_cast<std::size_t>(out.minus)]) /
                            static_cast<long double>(src.amplitude);

        TransferSolution sol;
        sol.ratio = cplx(ratio);
        sol.determinant = cplx(det);
        sol.node_potentials.reserve(potentials.size());
        for (const auto &v : potentials)
            sol.node_potentials.emplace_back(v);
        return sol;
    }

    void dump_network(const CapNetwork &net, std::ostream &os)
    {
        const auto &num = format_number;
        for (const auto &b : net.branches())
            os << net.label(b.node_a) << ' ' << net.label(b.node_b) << ' ' << num(b.capacitance.value()) << '\n';
        os << "SRC " << net.label(net.source().plus) << ' ' << net.label(net.source().minus) << ' '
           << num(net.source().amplitude) << '\n';
        os << "OUT " << net.label(net.output().plus) << ' ' << net.label(net.output().minus) << '\n';
    }

} // namespace hbc
